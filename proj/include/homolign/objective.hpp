#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "homolign/scoring.hpp"

namespace homolign {

// Per-action training material in cached-coefficient form: the reference's
// similarity to each sequence is affine in omega, so groups are carried as
// coefficient lists and alignment never re-runs during optimization.
struct training_group {
    std::string action;
    // reference vs the K sequences of its own group
    std::vector<affine_score_coefficients> same;
    // reference vs every sequence of every other group
    std::vector<affine_score_coefficients> cross;
};

struct training_set {
    std::vector<training_group> groups;

    void validate() const {
        if (groups.size() < 2)
            throw validation_error("training set needs at least 2 action groups");
        for (const auto& g : groups) {
            if (g.same.size() < 2)
                throw validation_error("group '" + g.action +
                                       "' needs at least 2 sequences");
            if (g.cross.empty())
                throw no_other_groups("group '" + g.action +
                                      "' has no cross-group alignments");
        }
    }
};

// Mean similarity of a reference to its own group.
inline double q1_mean_same(const std::vector<affine_score_coefficients>& same,
                           const weight_vector& omega) {
    if (same.empty()) throw empty_group("no same-action similarities");
    double s = 0.0;
    for (const auto& c : same) s += evaluate_affine(c, omega);
    return s / static_cast<double>(same.size());
}

// Population variance (divide by K) of the same-group similarities.
inline double q2_variance_same(const std::vector<affine_score_coefficients>& same,
                               const weight_vector& omega) {
    if (same.empty()) throw empty_group("no same-action similarities");
    double mean = q1_mean_same(same, omega);
    double v = 0.0;
    for (const auto& c : same) {
        double d = evaluate_affine(c, omega) - mean;
        v += d * d;
    }
    return v / static_cast<double>(same.size());
}

// Mean similarity of a reference to the sequences of all other groups.
inline double q3_mean_cross(const std::vector<affine_score_coefficients>& cross,
                            const weight_vector& omega) {
    if (cross.empty()) throw no_other_groups("no cross-action similarities");
    double s = 0.0;
    for (const auto& c : cross) s += evaluate_affine(c, omega);
    return s / static_cast<double>(cross.size());
}

// f(x) = x^T Q x + c^T x + c0 over the n-1 free weight coordinates.
struct quadratic_objective {
    int dim = 0;
    std::vector<double> Q;  // row-major dim x dim, symmetric
    std::vector<double> c;
    double c0 = 0.0;
    double alpha = 0.0;
    double beta = 0.0;

    double q(int i, int j) const { return Q[static_cast<std::size_t>(i) * dim + j]; }
};

inline double evaluate(const quadratic_objective& o, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != o.dim)
        throw index_mismatch("objective dimension mismatch");
    double f = o.c0;
    for (int i = 0; i < o.dim; ++i) {
        f += o.c[i] * x[i];
        double row = 0.0;
        for (int j = 0; j < o.dim; ++j) row += o.q(i, j) * x[j];
        f += x[i] * row;
    }
    return f;
}

inline std::vector<double> gradient(const quadratic_objective& o,
                                    const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != o.dim)
        throw index_mismatch("objective dimension mismatch");
    std::vector<double> g(o.dim);
    for (int i = 0; i < o.dim; ++i) {
        double s = o.c[i];
        for (int j = 0; j < o.dim; ++j) s += 2.0 * o.q(i, j) * x[j];
        g[i] = s;
    }
    return g;
}

namespace detail {

// Lexicographic order on coefficient tuples.  Accumulation runs over a
// sorted copy of each list so the assembled objective is bit-identical
// under permutations of the training sequences.
inline std::vector<affine_score_coefficients> sorted_coeffs(
    std::vector<affine_score_coefficients> v) {
    std::sort(v.begin(), v.end(),
              [](const affine_score_coefficients& l,
                 const affine_score_coefficients& r) {
                  if (l.a0 != r.a0) return l.a0 < r.a0;
                  return std::lexicographical_compare(l.a.begin(), l.a.end(),
                                                      r.a.begin(), r.a.end());
              });
    return v;
}

}  // namespace detail

// Assemble f = mean(same) + alpha * var(same) - beta * mean(cross) as an
// explicit quadratic in the free weight coordinates.  Each S is affine
// (a0 - a.x), so the mean terms are affine and the variance term supplies
// the quadratic part.
inline quadratic_objective build_objective(
    const std::vector<affine_score_coefficients>& same_in,
    const std::vector<affine_score_coefficients>& cross_in, double alpha,
    double beta) {
    if (same_in.empty()) throw empty_group("no same-action similarities");
    if (cross_in.empty()) throw no_other_groups("no cross-action similarities");
    std::size_t dim = same_in.front().a.size();
    for (const auto& c : same_in)
        if (c.a.size() != dim) throw index_mismatch("coefficient size mismatch");
    for (const auto& c : cross_in)
        if (c.a.size() != dim) throw index_mismatch("coefficient size mismatch");

    auto same = detail::sorted_coeffs(same_in);
    auto cross = detail::sorted_coeffs(cross_in);
    double K = static_cast<double>(same.size());

    std::vector<double> a_mean(dim, 0.0);
    double a0_mean = 0.0;
    for (const auto& s : same) {
        a0_mean += s.a0;
        for (std::size_t i = 0; i < dim; ++i) a_mean[i] += s.a[i];
    }
    a0_mean /= K;
    for (auto& v : a_mean) v /= K;

    std::vector<double> b_mean(dim, 0.0);
    double b0_mean = 0.0;
    for (const auto& s : cross) {
        b0_mean += s.a0;
        for (std::size_t i = 0; i < dim; ++i) b_mean[i] += s.a[i];
    }
    b0_mean /= static_cast<double>(cross.size());
    for (auto& v : b_mean) v /= static_cast<double>(cross.size());

    quadratic_objective o;
    o.dim = static_cast<int>(dim);
    o.alpha = alpha;
    o.beta = beta;
    o.Q.assign(dim * dim, 0.0);
    o.c.assign(dim, 0.0);

    // variance of (a0_k - a_k.x) around the mean:
    //   (1/K) sum (d0_k - d_k.x)^2,  d = deviation from the mean
    double d0_sq = 0.0;
    std::vector<double> d0_d(dim, 0.0);
    std::vector<double> dd(dim * dim, 0.0);
    for (const auto& s : same) {
        double d0 = s.a0 - a0_mean;
        d0_sq += d0 * d0;
        for (std::size_t i = 0; i < dim; ++i) {
            double di = s.a[i] - a_mean[i];
            d0_d[i] += d0 * di;
            for (std::size_t j = i; j < dim; ++j)
                dd[i * dim + j] += di * (s.a[j] - a_mean[j]);
        }
    }
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) {
            double v = (alpha / K) * dd[i * dim + j];
            o.Q[i * dim + j] = v;
            o.Q[j * dim + i] = v;
        }
    for (std::size_t i = 0; i < dim; ++i)
        o.c[i] = -a_mean[i] - (2.0 * alpha / K) * d0_d[i] + beta * b_mean[i];
    o.c0 = a0_mean + (alpha / K) * d0_sq - beta * b0_mean;
    return o;
}

inline quadratic_objective build_objective(const training_set& ts,
                                           std::size_t action_index,
                                           double alpha, double beta) {
    ts.validate();
    if (action_index >= ts.groups.size())
        throw index_mismatch("action index out of range");
    const training_group& g = ts.groups[action_index];
    return build_objective(g.same, g.cross, alpha, beta);
}

}  // namespace homolign
