#pragma once

#include <cmath>
#include <vector>

#include "homolign/alignment.hpp"
#include "homolign/weights.hpp"

namespace homolign {

// Weighted error of one transition: sum of lambda * E over unmasked
// triplets, with lambda renormalized over the unmasked set so each
// transition carries unit effective weight regardless of exclusions.
inline double weighted_transition_error(const transition_errors& te,
                                        const triplet_weights& lw) {
    if (te.e.size() != lw.lambda.size())
        throw index_mismatch("error vector and weight vector length mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < te.e.size(); ++t) {
        if (!te.valid[t]) continue;
        num += lw.lambda[t] * te.e[t];
        den += lw.lambda[t];
    }
    if (den <= 0.0) throw all_triplets_masked("no triplet carries weight");
    return num / den;
}

// Similarity score of a pre-aligned sequence pair:
//   S = N*tau - (2N/((n-1)(n-2))) * sum_l sum_{i<j<k} (wi+wj+wk) * E[l]
// Masked entries drop out of the inner sum; each column is rescaled by
// T / (unmasked count) so exclusion-heavy pairs are not implicitly
// down-weighted (the count-based analog of the per-transition
// renormalization, chosen because it keeps S affine in omega).
inline double sequence_similarity(const error_score_matrix& em,
                                  const weight_vector& omega, double tau,
                                  const std::vector<triplet_id>& triplets) {
    omega.validate();
    if (em.rows != static_cast<int>(triplets.size()))
        throw index_mismatch("error matrix row count != triplet count");
    std::size_t n = omega.size();
    double f = 2.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
    double N = static_cast<double>(em.cols);
    double acc = 0.0;
    for (int l = 0; l < em.cols; ++l) {
        double s = 0.0;
        int cnt = 0;
        for (int t = 0; t < em.rows; ++t) {
            if (!em.ok(t, l)) continue;
            const triplet_id& id = triplets[t];
            s += (omega.omega[id.i] + omega.omega[id.j] + omega.omega[id.k]) *
                 em.at(t, l);
            ++cnt;
        }
        if (cnt == 0) throw all_triplets_masked("aligned pair has no valid triplet");
        acc += s * (static_cast<double>(em.rows) / static_cast<double>(cnt));
    }
    return N * tau - N * f * acc;
}

// The same score collected into constants over the n-1 free weight
// coordinates: S(omega) = a0 - sum_i a[i] * omega_i.
struct affine_score_coefficients {
    double a0 = 0.0;
    std::vector<double> a;  // n-1 entries
    double tau = 0.0;
    int N = 0;              // aligned-pair count
};

inline affine_score_coefficients affine_coefficients(
    const error_score_matrix& em, double tau,
    const std::vector<triplet_id>& triplets, std::size_t n) {
    if (em.rows != static_cast<int>(triplets.size()))
        throw index_mismatch("error matrix row count != triplet count");
    double f = 2.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
    double N = static_cast<double>(em.cols);
    // per-joint error mass, columns rescaled as in sequence_similarity
    std::vector<double> mass(n, 0.0);
    for (int l = 0; l < em.cols; ++l) {
        int cnt = 0;
        for (int t = 0; t < em.rows; ++t)
            if (em.ok(t, l)) ++cnt;
        if (cnt == 0) continue;  // nothing to attribute
        double scale = static_cast<double>(em.rows) / static_cast<double>(cnt);
        for (int t = 0; t < em.rows; ++t) {
            if (!em.ok(t, l)) continue;
            const triplet_id& id = triplets[t];
            double e = em.at(t, l) * scale;
            mass[id.i] += e;
            mass[id.j] += e;
            mass[id.k] += e;
        }
    }
    // substitute omega_n = 1 - sum of the free coordinates
    affine_score_coefficients out;
    out.tau = tau;
    out.N = em.cols;
    out.a0 = N * tau - N * f * mass[n - 1];
    out.a.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        out.a[i] = N * f * (mass[i] - mass[n - 1]);
    return out;
}

inline double evaluate_affine(const affine_score_coefficients& c,
                              const weight_vector& omega) {
    if (omega.size() != c.a.size() + 1)
        throw index_mismatch("weight count does not match coefficient count");
    double s = c.a0;
    for (std::size_t i = 0; i < c.a.size(); ++i) s -= c.a[i] * omega.omega[i];
    return s;
}

}  // namespace homolign
