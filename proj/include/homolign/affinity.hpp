#pragma once

#include <array>
#include <cmath>

#include "homolign/eig3.hpp"
#include "homolign/errors.hpp"
#include "homolign/geometry.hpp"

namespace homolign {

// A plane-to-plane map.  General 3x3 matrices are accepted everywhere a
// homography is; maps fitted from triplets are always affinities (last row
// exactly 0 0 1).
using homography3x3 = mat3;

// Numerical guards.  area: minimum triplet area after per-triplet
// normalization (centroid to origin, RMS radius to sqrt(2)); det: minimum
// |det| before inverting a fitted map; sum: minimum |a+b| before forming a
// relative eigenvalue gap.
struct numeric_guards {
    double eps_area = 1e-8;
    double eps_det = 1e-12;
    double eps_sum = 1e-12;
};

// Per-triplet normalization: translate the centroid to the origin and scale
// the RMS distance to sqrt(2).
struct conditioning {
    vec2 centroid;
    double scale = 0.0;  // 0 means degenerate (coincident points)
};

inline conditioning condition_triplet(const std::array<vec2, 3>& p) {
    vec2 c = (p[0] + p[1] + p[2]) * (1.0 / 3.0);
    double ms = 0.0;
    for (const auto& q : p) {
        vec2 d = q - c;
        ms += d.x * d.x + d.y * d.y;
    }
    ms /= 3.0;
    conditioning out;
    out.centroid = c;
    out.scale = ms > 0.0 ? std::sqrt(2.0 / ms) : 0.0;
    return out;
}

// Signed parallelogram area of the (unnormalized) edge basis.
inline double triplet_basis_det(const std::array<vec2, 3>& p) {
    vec2 e1 = p[1] - p[0];
    vec2 e2 = p[2] - p[0];
    return e1.x * e2.y - e1.y * e2.x;
}

// Triangle area after conditioning; the degeneracy test is evaluated on
// this quantity so the threshold is scale-free.
inline double conditioned_area(const std::array<vec2, 3>& p) {
    conditioning c = condition_triplet(p);
    if (c.scale == 0.0) return 0.0;
    return 0.5 * std::abs(triplet_basis_det(p)) * c.scale * c.scale;
}

// Exact affinity mapping the three src points onto the three dst points.
// Fitted in normalized coordinates and denormalized afterwards.  Throws
// degenerate_triplet if either triangle collapses below the area guard.
inline homography3x3 affinity_from_triplet(const std::array<vec2, 3>& src,
                                           const std::array<vec2, 3>& dst,
                                           const numeric_guards& g = {}) {
    conditioning cs = condition_triplet(src);
    conditioning cd = condition_triplet(dst);
    if (cs.scale == 0.0 || 0.5 * std::abs(triplet_basis_det(src)) * cs.scale * cs.scale < g.eps_area)
        throw degenerate_triplet("source triplet is degenerate");
    if (cd.scale == 0.0 || 0.5 * std::abs(triplet_basis_det(dst)) * cd.scale * cd.scale < g.eps_area)
        throw degenerate_triplet("destination triplet is degenerate");

    auto normalize = [](const std::array<vec2, 3>& p, const conditioning& c) {
        std::array<vec2, 3> q;
        for (int i = 0; i < 3; ++i) q[i] = (p[i] - c.centroid) * c.scale;
        return q;
    };
    std::array<vec2, 3> u = normalize(src, cs);
    std::array<vec2, 3> v = normalize(dst, cd);

    // Solve L [u1-u0, u2-u0] = [v1-v0, v2-v0], then t = v0 - L u0.
    mat2 bu{u[1].x - u[0].x, u[2].x - u[0].x, u[1].y - u[0].y, u[2].y - u[0].y};
    mat2 bv{v[1].x - v[0].x, v[2].x - v[0].x, v[1].y - v[0].y, v[2].y - v[0].y};
    double du = bu.det();
    mat2 lin = bv * inverse(bu, du);
    vec2 t = v[0] - lin.apply(u[0]);

    // Denormalize: A = Td^-1 * Ahat * Ts  (both T are scale+translation).
    // Linear part: (1/sd) * lin * ss; translation folds the centroids in.
    double ss = cs.scale, sd = cd.scale;
    mat2 lin_full = lin * (ss / sd);
    vec2 t_full = cd.centroid + (t - lin.apply(cs.centroid * ss)) * (1.0 / sd);
    return make_affinity(lin_full, t_full);
}

// The two eigenvalues selected as the (approximately) repeated pair, and
// their relative gap |a-b| / |a+b|.
struct eigen_pair_score {
    cplx a;
    cplx b;
    double score = 0.0;
};

// Minimum relative gap over the three unordered eigenvalue pairs.  Pairs
// whose sum modulus falls below the guard are skipped; if all three are
// skipped the spectrum carries no usable pairing.
inline eigen_pair_score min_pair_score(const std::array<cplx, 3>& ev,
                                       double eps_sum) {
    eigen_pair_score best;
    best.score = -1.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            double den = std::abs(ev[i] + ev[j]);
            if (den <= eps_sum) continue;
            double s = std::abs(ev[i] - ev[j]) / den;
            if (best.score < 0.0 || s < best.score) {
                best.a = ev[i];
                best.b = ev[j];
                best.score = s;
            }
        }
    if (best.score < 0.0)
        throw numerical_degeneracy("all eigenvalue pair sums below guard");
    return best;
}

// Repeated-eigenvalue dissimilarity of the map h1 * h2^-1.  Accepts general
// invertible 3x3 maps; uses the iterative eigensolver.
inline eigen_pair_score homology_score(const homography3x3& h1,
                                       const homography3x3& h2,
                                       const numeric_guards& g = {}) {
    double d2 = h2.det();
    if (std::abs(d2) <= g.eps_det)
        throw singular_homography("second map is not invertible");
    homography3x3 h = h1 * inverse(h2, d2);
    return min_pair_score(eig3(h), g.eps_sum);
}

}  // namespace homolign
