#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "homolign/body_model.hpp"
#include "homolign/geometry.hpp"
#include "homolign/rng.hpp"
#include "homolign/triplets.hpp"

using namespace homolign;

TEST_CASE("vec2 and vec3 arithmetic") {
    vec2 a{1.0, 2.0}, b{-3.0, 0.5};
    REQUIRE((a + b).x == Catch::Approx(-2.0));
    REQUIRE((a - b).y == Catch::Approx(1.5));
    REQUIRE((a * 2.0).x == Catch::Approx(2.0));

    vec3 u{1.0, 0.0, 0.0}, v{0.0, 1.0, 0.0};
    vec3 w = cross(u, v);
    REQUIRE(w.x == Catch::Approx(0.0));
    REQUIRE(w.y == Catch::Approx(0.0));
    REQUIRE(w.z == Catch::Approx(1.0));
    REQUIRE(dot(u, v) == Catch::Approx(0.0));
    REQUIRE(norm(vec3{3.0, 4.0, 0.0}) == Catch::Approx(5.0));
    REQUIRE(norm(normalized(vec3{2.0, -5.0, 1.0})) == Catch::Approx(1.0));
}

TEST_CASE("mat2 inverse and products") {
    det_rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        mat2 m{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
               rng.uniform(-2, 2)};
        double d = m.det();
        if (std::fabs(d) < 1e-3) continue;
        mat2 inv = inverse(m, d);
        mat2 id = m * inv;
        REQUIRE(id.a == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(id.b == Catch::Approx(0.0).margin(1e-12));
        REQUIRE(id.c == Catch::Approx(0.0).margin(1e-12));
        REQUIRE(id.d == Catch::Approx(1.0).margin(1e-12));
        vec2 p{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        vec2 q = inv.apply(m.apply(p));
        REQUIRE(q.x == Catch::Approx(p.x).margin(1e-12));
        REQUIRE(q.y == Catch::Approx(p.y).margin(1e-12));
    }
}

TEST_CASE("mat3 inverse, determinant, affinity form") {
    det_rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        mat3 m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] = rng.uniform(-2, 2);
        double d = m.det();
        if (std::fabs(d) < 1e-3) continue;
        mat3 inv = inverse(m, d);
        mat3 id = m * inv;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                REQUIRE(id[i][j] == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-10));
    }

    mat3 aff = make_affinity(mat2{2.0, 1.0, 0.0, 3.0}, vec2{5.0, -1.0});
    REQUIRE(aff.affinity_form());
    REQUIRE(aff[0][0] == 2.0);
    REQUIRE(aff[0][2] == 5.0);
    REQUIRE(aff[2][0] == 0.0);
    REQUIRE(aff[2][2] == 1.0);
    // determinant of an affinity equals the determinant of its linear part
    REQUIRE(aff.det() == Catch::Approx(6.0));
}

TEST_CASE("triplet enumeration is lexicographic and complete") {
    auto list = enumerate_triplets(11);
    REQUIRE(list.size() == 165);
    REQUIRE(triplet_count(11) == 165);
    REQUIRE(list.front().i == 0);
    REQUIRE(list.front().j == 1);
    REQUIRE(list.front().k == 2);
    REQUIRE(list.back().i == 8);
    REQUIRE(list.back().j == 9);
    REQUIRE(list.back().k == 10);

    std::set<std::tuple<int, int, int>> seen;
    for (std::size_t t = 0; t < list.size(); ++t) {
        const triplet_id& id = list[t];
        REQUIRE(id.ordinal == static_cast<int>(t));
        REQUIRE(id.i < id.j);
        REQUIRE(id.j < id.k);
        REQUIRE(id.k < 11);
        seen.insert({id.i, id.j, id.k});
        // closed-form ordinal agrees with the enumeration order
        REQUIRE(triplet_ordinal(id.i, id.j, id.k, 11) == id.ordinal);
    }
    REQUIRE(seen.size() == 165);

    REQUIRE(triplet_count(4) == 4);
    REQUIRE(enumerate_triplets(4).size() == 4);
}

TEST_CASE("body model validation") {
    body_model m = body_model::default11();
    REQUIRE(m.size() == 11);
    REQUIRE_NOTHROW(m.validate());
    REQUIRE(m.index_of("head") == 0);
    REQUIRE(m.index_of("r_foot") == 10);
    REQUIRE(m.index_of("tail") == -1);

    body_model small{{"a", "b", "c"}};
    REQUIRE_THROWS_AS(small.validate(), validation_error);

    body_model dup{{"a", "b", "c", "b"}};
    REQUIRE_THROWS_AS(dup.validate(), validation_error);
}

TEST_CASE("deterministic rng streams") {
    det_rng a(42), b(42), c(43);
    for (int i = 0; i < 100; ++i) {
        double x = a.uniform();
        REQUIRE(x == b.uniform());  // identical seeds, identical streams
        REQUIRE(x >= 0.0);
        REQUIRE(x < 1.0);
    }
    // a different seed diverges immediately with overwhelming probability
    det_rng a2(42);
    int diff = 0;
    for (int i = 0; i < 10; ++i)
        if (a2.uniform() != c.uniform()) ++diff;
    REQUIRE(diff > 0);

    // mix_seed separates sub-streams drawn from one master seed
    REQUIRE(mix_seed(1, 1) != mix_seed(1, 2));
    REQUIRE(mix_seed(1, 1) != mix_seed(2, 1));
    REQUIRE(mix_seed(3, 4, 5) != mix_seed(3, 5, 4));

    det_rng r(7);
    for (int i = 0; i < 200; ++i) {
        double v = r.uniform(-2.0, 3.0);
        REQUIRE(v >= -2.0);
        REQUIRE(v <= 3.0);
    }
    for (int i = 0; i < 200; ++i) REQUIRE(r.uniform_index(5) < 5);
    // Box-Muller normals stay finite and centered in bulk
    double acc = 0.0;
    for (int i = 0; i < 4000; ++i) {
        double n = r.normal();
        REQUIRE(std::isfinite(n));
        acc += n;
    }
    REQUIRE(std::fabs(acc / 4000.0) < 0.1);
}
