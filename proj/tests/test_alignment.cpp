#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "homolign/alignment.hpp"
#include "homolign/rng.hpp"

using namespace homolign;

namespace {

// Exhaustive minimum over every monotone path from (0,0) to (m-1,n-1),
// independent of the DP recurrence.  Each path is summed front to back so
// the floating-point association matches the DP accumulation and exact
// equality is a fair requirement.
void walk_paths(const cost_matrix_result& c, int i, int j, double acc,
                double& best) {
    acc += c.at(i, j);
    if (i == c.rows - 1 && j == c.cols - 1) {
        best = std::min(best, acc);
        return;
    }
    if (i + 1 < c.rows && j + 1 < c.cols) walk_paths(c, i + 1, j + 1, acc, best);
    if (i + 1 < c.rows) walk_paths(c, i + 1, j, acc, best);
    if (j + 1 < c.cols) walk_paths(c, i, j + 1, acc, best);
}

double brute_force_best(const cost_matrix_result& c) {
    double best = std::numeric_limits<double>::infinity();
    walk_paths(c, 0, 0, 0.0, best);
    return best;
}

cost_matrix_result random_cost(det_rng& rng, int m, int n,
                               bool with_sentinels = false) {
    cost_matrix_result c;
    c.rows = m;
    c.cols = n;
    c.cost.resize(static_cast<std::size_t>(m) * n);
    c.usable.assign(c.cost.size(), 1);
    for (auto& v : c.cost) v = rng.uniform(0.0, 10.0);
    if (with_sentinels)
        for (std::size_t i = 0; i < c.cost.size(); ++i)
            if (rng.uniform() < 0.15) {
                c.cost[i] = 1e6;
                c.usable[i] = 0;
            }
    return c;
}

pose2d random_pose(det_rng& rng, std::size_t n = 11) {
    pose2d p(n);
    for (auto& v : p.p) v = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    return p;
}

joint_sequence random_sequence(det_rng& rng, std::size_t frames) {
    joint_sequence s;
    s.model = body_model::default11();
    for (std::size_t f = 0; f < frames; ++f)
        s.poses.push_back(random_pose(rng));
    return s;
}

}  // namespace

TEST_CASE("align matches the brute-force oracle exactly") {
    det_rng rng(51);
    for (int trial = 0; trial < 300; ++trial) {
        int m = 1 + static_cast<int>(rng.uniform_index(6));
        int n = 1 + static_cast<int>(rng.uniform_index(6));
        cost_matrix_result c = random_cost(rng, m, n, trial % 3 == 0);
        alignment a = align(c);
        REQUIRE(a.total_cost == brute_force_best(c));
        // the reported path reproduces the reported cost
        double acc = 0.0;
        for (auto [i, j] : a.pairs) acc += c.at(i, j);
        REQUIRE(acc == Catch::Approx(a.total_cost).margin(1e-9));
    }
}

TEST_CASE("alignment path structure is validated") {
    alignment a;
    a.pairs = {{0, 0}, {1, 1}, {2, 2}};
    REQUIRE_NOTHROW(a.validate(3, 3));

    alignment bad_start;
    bad_start.pairs = {{1, 0}, {2, 1}};
    REQUIRE_THROWS_AS(bad_start.validate(3, 2), validation_error);

    alignment bad_end;
    bad_end.pairs = {{0, 0}, {1, 1}};
    REQUIRE_THROWS_AS(bad_end.validate(3, 3), validation_error);

    alignment bad_step;
    bad_step.pairs = {{0, 0}, {2, 2}};
    REQUIRE_THROWS_AS(bad_step.validate(3, 3), validation_error);

    alignment empty;
    REQUIRE_THROWS_AS(empty.validate(1, 1), validation_error);
}

TEST_CASE("degenerate one-row and one-column matrices align") {
    det_rng rng(52);
    cost_matrix_result row = random_cost(rng, 1, 5);
    alignment a = align(row);
    REQUIRE(a.pairs.size() == 5);
    for (int j = 0; j < 5; ++j) REQUIRE(a.pairs[j] == std::pair<int, int>(0, j));

    cost_matrix_result col = random_cost(rng, 4, 1);
    alignment b = align(col);
    REQUIRE(b.pairs.size() == 4);

    cost_matrix_result one = random_cost(rng, 1, 1);
    alignment c = align(one);
    REQUIRE(c.pairs.size() == 1);
    REQUIRE(c.total_cost == one.at(0, 0));
}

TEST_CASE("self alignment runs down the diagonal at zero cost") {
    det_rng rng(53);
    joint_sequence s = random_sequence(rng, 8);
    auto triplets = enumerate_triplets(11);
    sequence_frames f = cache_sequence(s, triplets);
    cost_matrix_result c = cost_matrix(f, f);
    REQUIRE(c.rows == 7);
    REQUIRE(c.cols == 7);
    alignment a = align(c);
    REQUIRE(a.pairs.size() == 7);
    for (int l = 0; l < 7; ++l) REQUIRE(a.pairs[l] == std::pair<int, int>(l, l));
    REQUIRE(a.total_cost <= 1e-9);
}

TEST_CASE("error score matrix mirrors the aligned transition scores") {
    det_rng rng(54);
    joint_sequence s = random_sequence(rng, 6);
    joint_sequence r = random_sequence(rng, 5);
    auto triplets = enumerate_triplets(11);
    sequence_frames sf = cache_sequence(s, triplets);
    sequence_frames rf = cache_sequence(r, triplets);
    cost_matrix_result c = cost_matrix(sf, rf);
    alignment a = align(c);
    error_score_matrix em = error_score_matrix_of(sf, rf, a);
    REQUIRE(em.rows == 165);
    REQUIRE(em.cols == static_cast<int>(a.pairs.size()));

    // column sums over valid entries reproduce the cost-matrix cells
    for (int l = 0; l < em.cols; ++l) {
        auto [i, j] = a.pairs[l];
        if (!c.usable[static_cast<std::size_t>(i) * c.cols + j]) continue;
        double acc = 0.0;
        for (int t = 0; t < em.rows; ++t)
            if (em.ok(t, l)) acc += em.at(t, l);
        REQUIRE(acc == Catch::Approx(c.at(i, j)).margin(1e-12));
    }
}

TEST_CASE("significance report computes pool statistics") {
    // two triplets, hand-filled pools with one masked cell
    auto mk = [](std::vector<double> v, std::vector<std::uint8_t> ok) {
        error_score_matrix m;
        m.rows = 2;
        m.cols = static_cast<int>(v.size()) / 2;
        m.v = std::move(v);
        m.valid = std::move(ok);
        return m;
    };
    std::vector<error_score_matrix> same = {mk({1.0, 3.0, 10.0, 10.0}, {1, 1, 0, 0})};
    std::vector<error_score_matrix> cross = {mk({5.0, 7.0, 2.0, 2.0}, {1, 1, 1, 1})};
    auto rep = triplet_significance_report(same, cross);
    REQUIRE(rep.size() == 2);
    // triplet 0 (population variances): same {1,3} -> mean 2, var 1;
    // cross {5,7} -> mean 6, var 1; index = (6-2)/sqrt((1+1)/2) = 4
    REQUIRE(rep[0].same_mean == Catch::Approx(2.0));
    REQUIRE(rep[0].same_var == Catch::Approx(1.0));
    REQUIRE(rep[0].cross_mean == Catch::Approx(6.0));
    REQUIRE(rep[0].cross_var == Catch::Approx(1.0));
    REQUIRE(rep[0].index == Catch::Approx(4.0));
    // triplet 1: same pool fully masked -> zeros and a zero index
    REQUIRE(rep[1].same_mean == 0.0);
    REQUIRE(rep[1].cross_mean == Catch::Approx(2.0));

    REQUIRE_THROWS_AS(triplet_significance_report({}, cross), validation_error);
}

TEST_CASE("tie-break prefers the diagonal") {
    // all-zero costs: every path ties, so the backtrack should walk the
    // pure diagonal prefix
    cost_matrix_result c;
    c.rows = c.cols = 4;
    c.cost.assign(16, 0.0);
    c.usable.assign(16, 1);
    alignment a = align(c);
    REQUIRE(a.pairs.size() == 4);
    for (int l = 0; l < 4; ++l) REQUIRE(a.pairs[l] == std::pair<int, int>(l, l));
}
