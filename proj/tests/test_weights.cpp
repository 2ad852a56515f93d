#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "homolign/rng.hpp"
#include "homolign/scoring.hpp"
#include "homolign/weights.hpp"

using namespace homolign;

namespace {

// random point on the full simplex (sum exactly renormalized to 1)
weight_vector random_simplex(det_rng& rng, std::size_t n) {
    weight_vector w;
    w.omega.resize(n);
    double s = 0.0;
    for (auto& v : w.omega) {
        v = -std::log(1.0 - rng.uniform());  // exponential spacing
        s += v;
    }
    for (auto& v : w.omega) v /= s;
    return w;
}

}  // namespace

TEST_CASE("triplet weights sum to one on the simplex") {
    det_rng rng(61);
    auto triplets = enumerate_triplets(11);
    for (int trial = 0; trial < 500; ++trial) {
        weight_vector w = random_simplex(rng, 11);
        triplet_weights lw = triplet_weights_of(w, triplets);
        double s = std::accumulate(lw.lambda.begin(), lw.lambda.end(), 0.0);
        REQUIRE(std::fabs(s - 1.0) <= 1e-12);
    }
}

TEST_CASE("triplet weights on reference points") {
    auto triplets = enumerate_triplets(11);

    // uniform point weights spread mass evenly: 1/165 per triplet
    triplet_weights u = triplet_weights_of(weight_vector::uniform(11), triplets);
    for (double l : u.lambda) REQUIRE(l == Catch::Approx(1.0 / 165.0));

    // a one-hot weight puts 1/45 on each triplet containing that joint
    weight_vector hot;
    hot.omega.assign(11, 0.0);
    hot.omega[4] = 1.0;
    triplet_weights h = triplet_weights_of(hot, triplets);
    int carrying = 0;
    for (std::size_t t = 0; t < triplets.size(); ++t) {
        const triplet_id& id = triplets[t];
        bool touches = id.i == 4 || id.j == 4 || id.k == 4;
        if (touches) {
            REQUIRE(h.lambda[t] == Catch::Approx(1.0 / 45.0));
            ++carrying;
        } else {
            REQUIRE(h.lambda[t] == 0.0);
        }
    }
    REQUIRE(carrying == 45);

    // a small hand case, n = 4: f = 2/((3)(2)) = 1/3
    auto t4 = enumerate_triplets(4);
    weight_vector w4;
    w4.omega = {0.3, 0.2, 0.1, 0.4};
    triplet_weights l4 = triplet_weights_of(w4, t4);
    REQUIRE(l4.lambda[0] == Catch::Approx((0.3 + 0.2 + 0.1) / 3.0));  // (0,1,2)
    REQUIRE(l4.lambda[3] == Catch::Approx((0.2 + 0.1 + 0.4) / 3.0));  // (1,2,3)
}

TEST_CASE("triplet weights are linear in the point weights") {
    det_rng rng(62);
    auto triplets = enumerate_triplets(11);
    for (int trial = 0; trial < 50; ++trial) {
        weight_vector w1 = random_simplex(rng, 11);
        weight_vector w2 = random_simplex(rng, 11);
        double t = rng.uniform();
        weight_vector mix;
        mix.omega.resize(11);
        for (std::size_t i = 0; i < 11; ++i)
            mix.omega[i] = t * w1.omega[i] + (1.0 - t) * w2.omega[i];
        triplet_weights a = triplet_weights_of(w1, triplets);
        triplet_weights b = triplet_weights_of(w2, triplets);
        triplet_weights m = triplet_weights_of(mix, triplets);
        for (std::size_t k = 0; k < m.lambda.size(); ++k)
            REQUIRE(std::fabs(m.lambda[k] -
                              (t * a.lambda[k] + (1.0 - t) * b.lambda[k])) <=
                    1e-12);
    }
}

TEST_CASE("weight vector validation") {
    weight_vector ok = weight_vector::uniform(11);
    REQUIRE_NOTHROW(ok.validate());

    weight_vector neg;
    neg.omega = {0.5, 0.6, -0.1};
    REQUIRE_THROWS_AS(neg.validate(), validation_error);

    weight_vector off;
    off.omega = {0.5, 0.4};  // sums to 0.9
    REQUIRE_THROWS_AS(off.validate(), validation_error);

    weight_vector tiny;
    tiny.omega = {1.0};
    REQUIRE_THROWS_AS(tiny.validate(), validation_error);
}

TEST_CASE("free coordinate round trip") {
    det_rng rng(63);
    for (int trial = 0; trial < 50; ++trial) {
        weight_vector w = random_simplex(rng, 11);
        std::vector<double> x = w.free_coords();
        REQUIRE(x.size() == 10);
        weight_vector back = weight_vector::from_free(x);
        REQUIRE(back.size() == 11);
        for (std::size_t i = 0; i < 10; ++i) REQUIRE(back.omega[i] == w.omega[i]);
        REQUIRE(back.omega[10] == Catch::Approx(w.omega[10]).margin(1e-12));
        REQUIRE_NOTHROW(back.validate());
    }
}

TEST_CASE("weighted transition error matches a direct recomputation") {
    det_rng rng(64);
    auto triplets = enumerate_triplets(11);
    for (int trial = 0; trial < 50; ++trial) {
        transition_errors te;
        te.e.resize(triplets.size());
        te.valid.resize(triplets.size());
        for (std::size_t t = 0; t < triplets.size(); ++t) {
            te.e[t] = rng.uniform(0.0, 2.0);
            te.valid[t] = rng.uniform() < 0.8 ? 1 : 0;
            if (te.valid[t]) {
                te.n_valid += 1;
                te.total += te.e[t];
            }
        }
        weight_vector w = random_simplex(rng, 11);
        triplet_weights lw = triplet_weights_of(w, triplets);
        double got = weighted_transition_error(te, lw);

        // oracle: explicit renormalized dot product
        double num = 0.0, den = 0.0;
        for (std::size_t t = 0; t < triplets.size(); ++t)
            if (te.valid[t]) {
                num += lw.lambda[t] * te.e[t];
                den += lw.lambda[t];
            }
        REQUIRE(got == Catch::Approx(num / den).margin(1e-12));

        // with nothing masked and uniform weights this is the plain mean
        transition_errors full = te;
        std::fill(full.valid.begin(), full.valid.end(), 1);
        double mean = 0.0;
        for (double e : full.e) mean += e;
        mean /= static_cast<double>(full.e.size());
        double uw = weighted_transition_error(
            full, triplet_weights_of(weight_vector::uniform(11), triplets));
        REQUIRE(uw == Catch::Approx(mean).margin(1e-12));
    }

    // all-masked input is an error
    transition_errors none;
    none.e.assign(triplets.size(), 1.0);
    none.valid.assign(triplets.size(), 0);
    REQUIRE_THROWS_AS(
        weighted_transition_error(
            none, triplet_weights_of(weight_vector::uniform(11), triplets)),
        all_triplets_masked);
}
