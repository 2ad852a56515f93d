#pragma once

#include <cmath>
#include <vector>

#include "homolign/affinity.hpp"
#include "homolign/sequence.hpp"
#include "homolign/triplets.hpp"

namespace homolign {

struct transition_options {
    numeric_guards guards;
    // A transition is unusable when fewer than this fraction of all
    // triplets survive the degeneracy screens.
    double min_valid_fraction = 0.5;
    // Cost assigned to unusable transitions inside a cost matrix.
    double sentinel = 1e6;
    int stride = 1;
};

// Cached per-frame, per-triplet edge basis: columns [p1-p0, p2-p0] and its
// inverse.  The conditioning scale cancels exactly in the transition map,
// so only the scale-free area test uses it.
struct triplet_frame {
    mat2 u;
    mat2 inv_u;
    std::uint8_t valid = 0;
};

inline std::vector<triplet_frame> pose_frames(
    const pose2d& pose, const std::vector<triplet_id>& triplets,
    const numeric_guards& g = {}) {
    std::vector<triplet_frame> out(triplets.size());
    for (std::size_t t = 0; t < triplets.size(); ++t) {
        const triplet_id& id = triplets[t];
        if (!(pose.valid[id.i] && pose.valid[id.j] && pose.valid[id.k]))
            continue;
        std::array<vec2, 3> p = {pose.p[id.i], pose.p[id.j], pose.p[id.k]};
        conditioning c = condition_triplet(p);
        if (c.scale == 0.0) continue;
        double det = triplet_basis_det(p);
        if (0.5 * std::abs(det) * c.scale * c.scale < g.eps_area) continue;
        triplet_frame& f = out[t];
        vec2 e1 = p[1] - p[0];
        vec2 e2 = p[2] - p[0];
        f.u = {e1.x, e2.x, e1.y, e2.y};
        f.inv_u = inverse(f.u, det);
        f.valid = 1;
    }
    return out;
}

// Per-triplet dissimilarities of one transition pair, with the exclusion
// mask and the total over surviving triplets.
struct transition_errors {
    std::vector<double> e;
    std::vector<std::uint8_t> valid;
    int n_valid = 0;
    double total = 0.0;
};

namespace detail {

// Score one triplet from cached bases.  The transition map in normalized
// edge coordinates is M = VB0 * UA0^-1 * UA1 * VB1^-1; its spectrum
// augmented with the unit eigenvalue of the affinity's projective part
// gives the three candidates.  Returns false when every pair sum falls
// below the cancellation guard.
inline bool triplet_score_cached(const triplet_frame& a0,
                                 const triplet_frame& a1,
                                 const triplet_frame& b0,
                                 const triplet_frame& b1,
                                 double eps_sum, double& score) {
    mat2 m = (b0.u * a0.inv_u) * (a1.u * b1.inv_u);
    auto ev = eig2(m);
    const cplx one(1.0, 0.0);
    double best = -1.0;
    const cplx cand[3] = {one, ev[0], ev[1]};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            double den = std::abs(cand[i] + cand[j]);
            if (den <= eps_sum) continue;
            double s = std::abs(cand[i] - cand[j]) / den;
            if (best < 0.0 || s < best) best = s;
        }
    if (best < 0.0) return false;
    score = best;
    return true;
}

}  // namespace detail

// Fast-path transition scoring from precomputed bases.  Never throws; the
// caller inspects n_valid.
inline transition_errors transition_errors_cached(
    const std::vector<triplet_frame>& a0, const std::vector<triplet_frame>& a1,
    const std::vector<triplet_frame>& b0, const std::vector<triplet_frame>& b1,
    const transition_options& opts = {}) {
    std::size_t T = a0.size();
    transition_errors out;
    out.e.assign(T, 0.0);
    out.valid.assign(T, 0);
    for (std::size_t t = 0; t < T; ++t) {
        if (!(a0[t].valid && a1[t].valid && b0[t].valid && b1[t].valid))
            continue;
        double s;
        if (!detail::triplet_score_cached(a0[t], a1[t], b0[t], b1[t],
                                          opts.guards.eps_sum, s))
            continue;
        out.e[t] = s;
        out.valid[t] = 1;
        out.n_valid += 1;
        out.total += s;
    }
    return out;
}

// Dissimilarity of one pose transition (a0 -> a1) against another
// (b0 -> b1).  Throws too_few_valid_triplets when the surviving fraction is
// below the configured minimum.
inline transition_errors transition_similarity(
    const pose2d& a0, const pose2d& a1, const pose2d& b0, const pose2d& b1,
    const std::vector<triplet_id>& triplets, const transition_options& opts = {}) {
    transition_errors out = transition_errors_cached(
        pose_frames(a0, triplets, opts.guards),
        pose_frames(a1, triplets, opts.guards),
        pose_frames(b0, triplets, opts.guards),
        pose_frames(b1, triplets, opts.guards), opts);
    if (out.n_valid < opts.min_valid_fraction * static_cast<double>(triplets.size()))
        throw too_few_valid_triplets(
            "only " + std::to_string(out.n_valid) + " of " +
            std::to_string(triplets.size()) + " triplets survived");
    return out;
}

// Reference implementation: per triplet, fit the two full affinities and
// score their composition with the general 3x3 eigensolver.  Slower;
// exists to cross-check the cached path.
inline transition_errors transition_similarity_full(
    const pose2d& a0, const pose2d& a1, const pose2d& b0, const pose2d& b1,
    const std::vector<triplet_id>& triplets, const transition_options& opts = {}) {
    std::size_t T = triplets.size();
    transition_errors out;
    out.e.assign(T, 0.0);
    out.valid.assign(T, 0);
    for (std::size_t t = 0; t < T; ++t) {
        const triplet_id& id = triplets[t];
        bool ok = a0.valid[id.i] && a0.valid[id.j] && a0.valid[id.k] &&
                  a1.valid[id.i] && a1.valid[id.j] && a1.valid[id.k] &&
                  b0.valid[id.i] && b0.valid[id.j] && b0.valid[id.k] &&
                  b1.valid[id.i] && b1.valid[id.j] && b1.valid[id.k];
        if (!ok) continue;
        auto pick = [&](const pose2d& f) {
            return std::array<vec2, 3>{f.p[id.i], f.p[id.j], f.p[id.k]};
        };
        try {
            homography3x3 h1 =
                affinity_from_triplet(pick(a0), pick(b0), opts.guards);
            homography3x3 h2 =
                affinity_from_triplet(pick(a1), pick(b1), opts.guards);
            eigen_pair_score s = homology_score(h1, h2, opts.guards);
            out.e[t] = s.score;
            out.valid[t] = 1;
            out.n_valid += 1;
            out.total += s.score;
        } catch (const validation_error&) {
            // degenerate / singular / unpairable triplets are excluded
        }
    }
    if (out.n_valid < opts.min_valid_fraction * static_cast<double>(T))
        throw too_few_valid_triplets(
            "only " + std::to_string(out.n_valid) + " of " +
            std::to_string(T) + " triplets survived");
    return out;
}

}  // namespace homolign
