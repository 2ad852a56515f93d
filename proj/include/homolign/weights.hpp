#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "homolign/errors.hpp"
#include "homolign/triplets.hpp"

namespace homolign {

// Per-body-point weights on the unit simplex.  The learner works in the
// first n-1 coordinates with the last entry implied by the sum constraint.
struct weight_vector {
    std::vector<double> omega;

    std::size_t size() const { return omega.size(); }

    void validate() const {
        if (omega.size() < 2)
            throw validation_error("weight vector needs at least 2 entries");
        double s = 0.0;
        for (double w : omega) {
            if (!(w >= -1e-9 && w <= 1.0 + 1e-9))
                throw validation_error("weight outside [0,1]: " + std::to_string(w));
            s += w;
        }
        if (std::abs(s - 1.0) > 1e-9)
            throw validation_error("weights must sum to 1, got " + std::to_string(s));
    }

    static weight_vector uniform(std::size_t n) {
        weight_vector w;
        w.omega.assign(n, 1.0 / static_cast<double>(n));
        return w;
    }

    // Reconstruct the full vector from its n-1 free coordinates.
    static weight_vector from_free(const std::vector<double>& x) {
        weight_vector w;
        w.omega = x;
        double s = 0.0;
        for (double v : x) s += v;
        w.omega.push_back(1.0 - s);
        return w;
    }

    std::vector<double> free_coords() const {
        return std::vector<double>(omega.begin(), omega.end() - 1);
    }
};

// Triplet weights induced by point weights: lambda = (wi+wj+wk) * 2/((n-1)(n-2)).
// The normalization makes the lambdas sum to exactly 1 for any simplex omega.
struct triplet_weights {
    std::vector<double> lambda;
};

inline triplet_weights triplet_weights_of(const weight_vector& omega,
                                          const std::vector<triplet_id>& triplets) {
    omega.validate();
    std::size_t n = omega.size();
    double f = 2.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
    triplet_weights out;
    out.lambda.resize(triplets.size());
    for (std::size_t t = 0; t < triplets.size(); ++t) {
        const triplet_id& id = triplets[t];
        out.lambda[t] =
            f * (omega.omega[id.i] + omega.omega[id.j] + omega.omega[id.k]);
    }
    return out;
}

}  // namespace homolign
