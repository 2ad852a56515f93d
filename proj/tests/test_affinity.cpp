#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>

#include "homolign/affinity.hpp"
#include "homolign/eig3.hpp"
#include "homolign/rng.hpp"

using namespace homolign;

namespace {

std::array<vec2, 3> random_triplet(det_rng& rng, double spread = 1.0) {
    std::array<vec2, 3> p;
    for (auto& v : p) v = {rng.uniform(-spread, spread), rng.uniform(-spread, spread)};
    return p;
}

double triplet_area(const std::array<vec2, 3>& p) {
    return 0.5 * std::fabs((p[1].x - p[0].x) * (p[2].y - p[0].y) -
                           (p[2].x - p[0].x) * (p[1].y - p[0].y));
}

std::array<vec2, 3> apply_affinity(const mat2& lin, const vec2& t,
                                   const std::array<vec2, 3>& p) {
    std::array<vec2, 3> q;
    for (int i = 0; i < 3; ++i) q[i] = lin.apply(p[i]) + t;
    return q;
}

mat3 random_affinity(det_rng& rng) {
    while (true) {
        mat2 lin{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                 rng.uniform(-2, 2)};
        if (std::fabs(lin.det()) < 0.1) continue;
        return make_affinity(lin, {rng.uniform(-3, 3), rng.uniform(-3, 3)});
    }
}

}  // namespace

TEST_CASE("affinity fit reproduces the generating map exactly") {
    det_rng rng(31);
    int tested = 0;
    for (int trial = 0; trial < 300; ++trial) {
        auto src = random_triplet(rng);
        if (triplet_area(src) < 0.05) continue;
        mat2 lin{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                 rng.uniform(-2, 2)};
        if (std::fabs(lin.det()) < 0.1) continue;
        vec2 t{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        auto dst = apply_affinity(lin, t, src);

        homography3x3 h = affinity_from_triplet(src, dst);
        REQUIRE(h.affinity_form());
        REQUIRE(h[0][0] == Catch::Approx(lin.a).margin(1e-9));
        REQUIRE(h[0][1] == Catch::Approx(lin.b).margin(1e-9));
        REQUIRE(h[1][0] == Catch::Approx(lin.c).margin(1e-9));
        REQUIRE(h[1][1] == Catch::Approx(lin.d).margin(1e-9));
        REQUIRE(h[0][2] == Catch::Approx(t.x).margin(1e-9));
        REQUIRE(h[1][2] == Catch::Approx(t.y).margin(1e-9));

        // a fourth point maps consistently
        vec2 extra{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        vec2 expect = lin.apply(extra) + t;
        vec2 got{h[0][0] * extra.x + h[0][1] * extra.y + h[0][2],
                 h[1][0] * extra.x + h[1][1] * extra.y + h[1][2]};
        REQUIRE(got.x == Catch::Approx(expect.x).margin(1e-9));
        REQUIRE(got.y == Catch::Approx(expect.y).margin(1e-9));
        ++tested;
    }
    REQUIRE(tested >= 200);
}

TEST_CASE("affinity fit survives bad conditioning") {
    // same geometry pushed far from the origin and scaled down hard:
    // the normalization inside the fit keeps the recovered map accurate
    det_rng rng(32);
    for (int trial = 0; trial < 50; ++trial) {
        auto base = random_triplet(rng);
        if (triplet_area(base) < 0.1) continue;
        std::array<vec2, 3> src;
        for (int i = 0; i < 3; ++i)
            src[i] = {base[i].x * 1e-4 + 1e6, base[i].y * 1e-4 - 2e6};
        mat2 lin{1.3, -0.2, 0.4, 0.9};
        vec2 t{5e5, -3e5};
        auto dst = apply_affinity(lin, t, src);
        homography3x3 h = affinity_from_triplet(src, dst);
        REQUIRE(h[0][0] == Catch::Approx(lin.a).margin(1e-6));
        REQUIRE(h[1][1] == Catch::Approx(lin.d).margin(1e-6));
        // mapped corners land on their targets to relative precision
        for (int i = 0; i < 3; ++i) {
            vec2 got{h[0][0] * src[i].x + h[0][1] * src[i].y + h[0][2],
                     h[1][0] * src[i].x + h[1][1] * src[i].y + h[1][2]};
            REQUIRE(got.x == Catch::Approx(dst[i].x).epsilon(1e-9));
            REQUIRE(got.y == Catch::Approx(dst[i].y).epsilon(1e-9));
        }
    }
}

TEST_CASE("degenerate triplets are rejected") {
    std::array<vec2, 3> collinear{vec2{0.0, 0.0}, vec2{1.0, 1.0}, vec2{2.0, 2.0}};
    std::array<vec2, 3> ok{vec2{0.0, 0.0}, vec2{1.0, 0.0}, vec2{0.0, 1.0}};
    REQUIRE_THROWS_AS(affinity_from_triplet(collinear, ok), degenerate_triplet);
    REQUIRE_THROWS_AS(affinity_from_triplet(ok, collinear), degenerate_triplet);

    std::array<vec2, 3> coincident{vec2{1.0, 1.0}, vec2{1.0, 1.0}, vec2{2.0, 0.0}};
    REQUIRE_THROWS_AS(affinity_from_triplet(coincident, ok), degenerate_triplet);

    // the area test is scale-free: a small but well-shaped triangle passes
    std::array<vec2, 3> tiny{vec2{0.0, 0.0}, vec2{1e-7, 0.0}, vec2{0.0, 1e-7}};
    REQUIRE_NOTHROW(affinity_from_triplet(tiny, ok));
}

TEST_CASE("identical maps score zero") {
    det_rng rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        homography3x3 h = random_affinity(rng);
        eigen_pair_score s = homology_score(h, h);
        REQUIRE(s.score <= 1e-12);
    }
}

TEST_CASE("homology score is invariant to a shared right factor") {
    // H = h1 (h2 G) is compared against h2 G: the common factor G cancels
    // inside h1 G (h2 G)^-1 = h1 h2^-1, so the score cannot change
    det_rng rng(34);
    for (int trial = 0; trial < 100; ++trial) {
        homography3x3 h1 = random_affinity(rng);
        homography3x3 h2 = random_affinity(rng);
        homography3x3 g = random_affinity(rng);
        eigen_pair_score base = homology_score(h1, h2);
        eigen_pair_score with_g = homology_score(h1 * g, h2 * g);
        REQUIRE(with_g.score == Catch::Approx(base.score).margin(1e-9));
    }
}

TEST_CASE("homology score is symmetric in the eigenvalue ratio sense") {
    // swapping the two maps inverts H, which maps each eigenvalue a -> 1/a;
    // the relative gap |a-b|/|a+b| of the minimizing pair is preserved
    det_rng rng(35);
    for (int trial = 0; trial < 100; ++trial) {
        homography3x3 h1 = random_affinity(rng);
        homography3x3 h2 = random_affinity(rng);
        eigen_pair_score ab = homology_score(h1, h2);
        eigen_pair_score ba = homology_score(h2, h1);
        REQUIRE(ab.score == Catch::Approx(ba.score).margin(1e-9));
    }
}

TEST_CASE("singular second map is rejected") {
    homography3x3 h1 = make_affinity(mat2::identity(), {0.0, 0.0});
    homography3x3 h2 = make_affinity(mat2{1.0, 2.0, 0.5, 1.0}, {1.0, 1.0});
    REQUIRE(std::fabs(h2.det()) < 1e-12);
    REQUIRE_THROWS_AS(homology_score(h1, h2), singular_homography);
}

TEST_CASE("min pair score picks the closest eigenvalue pair") {
    // eigenvalues {1, 2, 2}: the repeated pair has gap 0
    std::array<cplx, 3> l{cplx(1.0, 0.0), cplx(2.0, 0.0), cplx(2.0, 0.0)};
    eigen_pair_score s = min_pair_score(l, 1e-12);
    REQUIRE(s.score == 0.0);
    REQUIRE(s.a.real() == Catch::Approx(2.0));
    REQUIRE(s.b.real() == Catch::Approx(2.0));

    // {1, 3, -3}: pairs (1,3) -> 0.5, (1,-3) -> 2, (3,-3) sum cancels and
    // is skipped; the minimum is 0.5
    std::array<cplx, 3> m{cplx(1.0, 0.0), cplx(3.0, 0.0), cplx(-3.0, 0.0)};
    eigen_pair_score sm = min_pair_score(m, 1e-12);
    REQUIRE(sm.score == Catch::Approx(0.5));

    // all sums below the guard: no admissible pair
    std::array<cplx, 3> bad{cplx(1e-13, 0.0), cplx(-1e-13, 0.0), cplx(0.0, 0.0)};
    REQUIRE_THROWS_AS(min_pair_score(bad, 1e-12), numerical_degeneracy);
}

TEST_CASE("conditioning matches hand statistics") {
    std::array<vec2, 3> p{vec2{2.0, 0.0}, vec2{4.0, 0.0}, vec2{3.0, 3.0}};
    conditioning c = condition_triplet(p);
    REQUIRE(c.centroid.x == Catch::Approx(3.0));
    REQUIRE(c.centroid.y == Catch::Approx(1.0));
    // mean squared centered radius = (2 + 2 + 4) / 3; scale = sqrt(2 / ms)
    double ms = (2.0 + 2.0 + 4.0) / 3.0;
    REQUIRE(c.scale == Catch::Approx(std::sqrt(2.0 / ms)));
    // normalized points average to the origin with rms radius sqrt(2)
    double acc = 0.0;
    for (const auto& v : p) {
        vec2 n = (v - c.centroid) * c.scale;
        acc += n.x * n.x + n.y * n.y;
    }
    REQUIRE(std::sqrt(acc / 3.0) == Catch::Approx(std::sqrt(2.0)));
}
