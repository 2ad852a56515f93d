#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "homolign/errors.hpp"

namespace homolign {

using cplx = std::complex<double>;

struct vec2 {
    double x = 0.0;
    double y = 0.0;

    vec2 operator+(const vec2& o) const { return {x + o.x, y + o.y}; }
    vec2 operator-(const vec2& o) const { return {x - o.x, y - o.y}; }
    vec2 operator*(double s) const { return {x * s, y * s}; }
};

inline double norm(const vec2& v) { return std::hypot(v.x, v.y); }

struct vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    vec3 operator+(const vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    vec3 operator-(const vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

inline double dot(const vec3& a, const vec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline vec3 cross(const vec3& a, const vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
            a.x * b.y - a.y * b.x};
}

inline double norm(const vec3& v) { return std::sqrt(dot(v, v)); }

inline vec3 normalized(const vec3& v) {
    double n = norm(v);
    if (n == 0.0) throw validation_error("cannot normalize a zero vector");
    return v * (1.0 / n);
}

// 2x2 matrix, row major: [a b; c d].
struct mat2 {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

    static mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    double det() const { return a * d - b * c; }

    mat2 operator*(const mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }

    mat2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }

    vec2 apply(const vec2& v) const {
        return {a * v.x + b * v.y, c * v.x + d * v.y};
    }
};

// Adjugate over determinant; callers guard the determinant themselves.
inline mat2 inverse(const mat2& m, double det) {
    double r = 1.0 / det;
    return {m.d * r, -m.b * r, -m.c * r, m.a * r};
}

// 3x3 matrix, row major.
struct mat3 {
    std::array<std::array<double, 3>, 3> m{};

    static mat3 identity() {
        mat3 r;
        r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
        return r;
    }

    std::array<double, 3>& operator[](int i) { return m[i]; }
    const std::array<double, 3>& operator[](int i) const { return m[i]; }

    mat3 operator*(const mat3& o) const {
        mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }

    double det() const {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }

    // True when the last row is exactly (0, 0, 1).
    bool affinity_form() const {
        return m[2][0] == 0.0 && m[2][1] == 0.0 && m[2][2] == 1.0;
    }
};

inline mat3 inverse(const mat3& a, double det) {
    double r = 1.0 / det;
    mat3 o;
    o[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) * r;
    o[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) * r;
    o[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) * r;
    o[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) * r;
    o[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) * r;
    o[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) * r;
    o[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) * r;
    o[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) * r;
    o[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) * r;
    return o;
}

// Build an affinity [A t; 0 1] from a linear part and a translation.
inline mat3 make_affinity(const mat2& lin, const vec2& t) {
    mat3 h;
    h[0][0] = lin.a;
    h[0][1] = lin.b;
    h[0][2] = t.x;
    h[1][0] = lin.c;
    h[1][1] = lin.d;
    h[1][2] = t.y;
    h[2][0] = 0.0;
    h[2][1] = 0.0;
    h[2][2] = 1.0;
    return h;
}

}  // namespace homolign
