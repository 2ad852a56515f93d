#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "homolign/geometry.hpp"

namespace homolign {

// Eigenvalues of [a b; c d], numerically stable form.  The discriminant is
// written ((a-d)/2)^2 + bc rather than (tr/2)^2 - det: the latter cancels
// catastrophically for near-repeated eigenvalues, which is exactly the
// regime this library cares about.  The smaller real root comes from the
// product identity to avoid subtractive cancellation.
inline std::array<cplx, 2> eig2(double a, double b, double c, double d) {
    double m = 0.5 * (a + d);
    double p = 0.5 * (a - d);
    double disc = p * p + b * c;
    if (disc >= 0.0) {
        double q = std::sqrt(disc);
        double l1 = (m >= 0.0) ? m + q : m - q;
        double l2;
        if (l1 != 0.0)
            l2 = (a * d - b * c) / l1;
        else
            l2 = m - std::copysign(q, m);  // both roots vanish
        return {cplx(l1, 0.0), cplx(l2, 0.0)};
    }
    double q = std::sqrt(-disc);
    return {cplx(m, q), cplx(m, -q)};
}

inline std::array<cplx, 2> eig2(const mat2& m) {
    return eig2(m.a, m.b, m.c, m.d);
}

namespace detail {

// Characteristic polynomial of a 3x3: lambda^3 - c2 lambda^2 + c1 lambda - c0.
inline void char_poly3(const mat3& a, double& c2, double& c1, double& c0) {
    c2 = a[0][0] + a[1][1] + a[2][2];
    c1 = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) +
         (a[0][0] * a[2][2] - a[0][2] * a[2][0]) +
         (a[1][1] * a[2][2] - a[1][2] * a[2][1]);
    c0 = a.det();
}

}  // namespace detail

// Closed-form (Cardano) roots of the characteristic cubic.  Adequate for
// well-separated spectra and used as the fallback / cross-check oracle; the
// iterative QR below is the primary solver because the closed form loses
// half the working precision near repeated roots.
inline std::array<cplx, 3> eig3_cubic(const mat3& a) {
    double c2, c1, c0;
    detail::char_poly3(a, c2, c1, c0);
    // depress: lambda = t + c2/3  ->  t^3 + p t + q = 0
    double p = c1 - c2 * c2 / 3.0;
    double q = -2.0 * c2 * c2 * c2 / 27.0 + c1 * c2 / 3.0 - c0;
    cplx half_q = cplx(-0.5 * q, 0.0);
    cplx s = std::sqrt(cplx(q * q / 4.0 + p * p * p / 27.0, 0.0));
    cplx u3 = half_q + s;
    if (std::abs(u3) < std::abs(half_q - s)) u3 = half_q - s;
    std::array<cplx, 3> out;
    double shift = c2 / 3.0;
    if (u3 == cplx(0.0, 0.0)) {
        out = {cplx(shift), cplx(shift), cplx(shift)};  // p = q = 0
        return out;
    }
    cplx u = std::pow(u3, 1.0 / 3.0);
    const cplx w(-0.5, 0.8660254037844386467637231707529362);
    for (int k = 0; k < 3; ++k) {
        cplx uk = u;
        if (k == 1) uk = u * w;
        if (k == 2) uk = u * std::conj(w);
        cplx t = uk - cplx(p, 0.0) / (3.0 * uk);
        out[k] = t + cplx(shift, 0.0);
    }
    return out;
}

// Eigenvalues of a general real 3x3 via Francis double-shift QR on the
// Hessenberg form.  Delivers near machine precision even for repeated
// eigenvalues (which the closed form cannot).  Deterministic; no
// allocations.
inline std::array<cplx, 3> eig3(const mat3& a_in) {
    constexpr double EPS = std::numeric_limits<double>::epsilon();
    constexpr int MAXITER = 60;

    double h[3][3];
    double scale = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(a_in[i][j]));
    if (scale == 0.0) return {cplx(0.0), cplx(0.0), cplx(0.0)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) h[i][j] = a_in[i][j] / scale;

    // Givens rotation in the (1,2) plane acting on rows then columns;
    // used for the initial Hessenberg reduction and to chase the bulge.
    auto rotate12 = [&h](double x, double y) {
        double r = std::hypot(x, y);
        if (r <= 0.0) return;
        double c = x / r, s = y / r;
        for (int j = 0; j < 3; ++j) {
            double t1 = h[1][j], t2 = h[2][j];
            h[1][j] = c * t1 + s * t2;
            h[2][j] = -s * t1 + c * t2;
        }
        for (int i = 0; i < 3; ++i) {
            double t1 = h[i][1], t2 = h[i][2];
            h[i][1] = c * t1 + s * t2;
            h[i][2] = -s * t1 + c * t2;
        }
        h[2][0] = 0.0;
    };

    rotate12(h[1][0], h[2][0]);

    std::array<cplx, 3> evs;
    bool done = false;
    for (int it = 0; it < MAXITER && !done; ++it) {
        if (std::abs(h[2][1]) <= EPS * (std::abs(h[1][1]) + std::abs(h[2][2]))) {
            auto e = eig2(h[0][0], h[0][1], h[1][0], h[1][1]);
            evs = {cplx(h[2][2]), e[0], e[1]};
            done = true;
            break;
        }
        if (std::abs(h[1][0]) <= EPS * (std::abs(h[0][0]) + std::abs(h[1][1]))) {
            auto e = eig2(h[1][1], h[1][2], h[2][1], h[2][2]);
            evs = {cplx(h[0][0]), e[0], e[1]};
            done = true;
            break;
        }
        // Wilkinson-style double shift from the trailing 2x2; every 12th
        // sweep an exceptional shift breaks symmetric stalls.
        double s = h[1][1] + h[2][2];
        double p = h[1][1] * h[2][2] - h[1][2] * h[2][1];
        if (it > 0 && it % 12 == 0) {
            double m = std::abs(h[1][0]) + std::abs(h[2][1]);
            s = 2.0 * m;
            p = m * m;
        }
        // first column of (H - s1)(H - s2) for the implicit step
        double x0 = h[0][0] * h[0][0] + h[0][1] * h[1][0] - s * h[0][0] + p;
        double x1 = h[1][0] * (h[0][0] + h[1][1] - s);
        double x2 = h[1][0] * h[2][1];
        double nv = std::sqrt(x0 * x0 + x1 * x1 + x2 * x2);
        double v0 = 1.0, v1 = 0.0, v2 = 0.0;
        if (nv > 0.0) {
            v0 = x0 / nv;
            v1 = x1 / nv;
            v2 = x2 / nv;
        }
        v0 += std::copysign(1.0, v0);
        double nv2 = std::sqrt(v0 * v0 + v1 * v1 + v2 * v2);
        v0 /= nv2;
        v1 /= nv2;
        v2 /= nv2;
        // Householder similarity H <- P H P with P = I - 2 v v^T
        double v[3] = {v0, v1, v2};
        double w[3];
        // left: H <- H - 2 v (v^T H)
        for (int j = 0; j < 3; ++j)
            w[j] = v[0] * h[0][j] + v[1] * h[1][j] + v[2] * h[2][j];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) h[i][j] -= 2.0 * v[i] * w[j];
        // right: H <- H - 2 (H v) v^T
        for (int i = 0; i < 3; ++i) {
            double t = h[i][0] * v[0] + h[i][1] * v[1] + h[i][2] * v[2];
            w[i] = t;
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) h[i][j] -= 2.0 * w[i] * v[j];
        // restore Hessenberg form (chase the (2,0) bulge)
        rotate12(h[1][0], h[2][0]);
    }

    if (!done) {
        // Extremely rare; hand the partially reduced matrix to the closed
        // form rather than looping forever.
        mat3 rest;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) rest[i][j] = h[i][j];
        evs = eig3_cubic(rest);
    }
    for (auto& e : evs) e *= scale;
    return evs;
}

}  // namespace homolign
