#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "homolign/transition.hpp"

namespace homolign {

// Pairwise transition costs: rows index target transitions, columns index
// reference transitions.  `usable` is false where the transition pair had
// too few valid triplets and the sentinel cost was substituted.
struct cost_matrix_result {
    int rows = 0;
    int cols = 0;
    std::vector<double> cost;          // row-major
    std::vector<std::uint8_t> usable;  // row-major

    double at(int i, int j) const { return cost[i * cols + j]; }
};

// Precomputed per-frame triplet bases for one sequence; build once, reuse
// across every pairing that involves the sequence.
struct sequence_frames {
    std::vector<std::vector<triplet_frame>> frames;
    std::vector<std::pair<int, int>> transitions;
};

inline sequence_frames cache_sequence(const joint_sequence& seq,
                                      const std::vector<triplet_id>& triplets,
                                      const transition_options& opts = {}) {
    seq.validate();
    sequence_frames out;
    out.frames.reserve(seq.length());
    for (const auto& pose : seq.poses)
        out.frames.push_back(pose_frames(pose, triplets, opts.guards));
    out.transitions = transitions_of(seq.length(), opts.stride);
    if (out.transitions.empty())
        throw validation_error("sequence too short for the configured stride");
    return out;
}

inline cost_matrix_result cost_matrix(const sequence_frames& target,
                                      const sequence_frames& reference,
                                      const transition_options& opts = {}) {
    cost_matrix_result out;
    out.rows = static_cast<int>(target.transitions.size());
    out.cols = static_cast<int>(reference.transitions.size());
    out.cost.assign(static_cast<std::size_t>(out.rows) * out.cols, 0.0);
    out.usable.assign(out.cost.size(), 0);
    std::size_t T = target.frames.front().size();
    double min_valid = opts.min_valid_fraction * static_cast<double>(T);
    for (int i = 0; i < out.rows; ++i) {
        auto [a0, a1] = target.transitions[i];
        for (int j = 0; j < out.cols; ++j) {
            auto [b0, b1] = reference.transitions[j];
            transition_errors te = transition_errors_cached(
                target.frames[a0], target.frames[a1], reference.frames[b0],
                reference.frames[b1], opts);
            std::size_t idx = static_cast<std::size_t>(i) * out.cols + j;
            if (te.n_valid < min_valid) {
                out.cost[idx] = opts.sentinel;
            } else {
                out.cost[idx] = te.total;
                out.usable[idx] = 1;
            }
        }
    }
    return out;
}

inline cost_matrix_result cost_matrix(const joint_sequence& target,
                                      const joint_sequence& reference,
                                      const std::vector<triplet_id>& triplets,
                                      const transition_options& opts = {}) {
    return cost_matrix(cache_sequence(target, triplets, opts),
                       cache_sequence(reference, triplets, opts), opts);
}

// Monotone path through a cost matrix.
struct alignment {
    std::vector<std::pair<int, int>> pairs;
    double total_cost = 0.0;

    // Endpoint and step invariants; every constructor path calls this.
    void validate(int rows, int cols) const {
        if (pairs.empty()) throw validation_error("alignment has no pairs");
        if (pairs.front() != std::pair<int, int>(0, 0))
            throw validation_error("alignment must start at (0,0)");
        if (pairs.back() != std::pair<int, int>(rows - 1, cols - 1))
            throw validation_error("alignment must end at (m-1,n-1)");
        for (std::size_t l = 1; l < pairs.size(); ++l) {
            int di = pairs[l].first - pairs[l - 1].first;
            int dj = pairs[l].second - pairs[l - 1].second;
            bool ok = (di == 1 && dj == 1) || (di == 1 && dj == 0) ||
                      (di == 0 && dj == 1);
            if (!ok)
                throw validation_error("alignment step must be (1,0),(0,1) or (1,1)");
        }
        for (const auto& [i, j] : pairs)
            if (i < 0 || i >= rows || j < 0 || j >= cols)
                throw index_mismatch("alignment index out of range");
    }
};

// Optimal monotone alignment by dynamic programming.  Backtrack ties are
// broken by preferring the diagonal step, then (1,0), then (0,1).
inline alignment align(const cost_matrix_result& c) {
    int m = c.rows, n = c.cols;
    if (m < 1 || n < 1) throw validation_error("empty cost matrix");
    std::vector<double> d(static_cast<std::size_t>(m) * n);
    auto D = [&](int i, int j) -> double& {
        return d[static_cast<std::size_t>(i) * n + j];
    };
    D(0, 0) = c.at(0, 0);
    for (int j = 1; j < n; ++j) D(0, j) = D(0, j - 1) + c.at(0, j);
    for (int i = 1; i < m; ++i) D(i, 0) = D(i - 1, 0) + c.at(i, 0);
    for (int i = 1; i < m; ++i)
        for (int j = 1; j < n; ++j) {
            double best = D(i - 1, j - 1);
            if (D(i - 1, j) < best) best = D(i - 1, j);
            if (D(i, j - 1) < best) best = D(i, j - 1);
            D(i, j) = best + c.at(i, j);
        }
    alignment out;
    out.total_cost = D(m - 1, n - 1);
    int i = m - 1, j = n - 1;
    out.pairs.emplace_back(i, j);
    while (i > 0 || j > 0) {
        if (i > 0 && j > 0) {
            double diag = D(i - 1, j - 1);
            double up = D(i - 1, j);
            double left = D(i, j - 1);
            if (diag <= up && diag <= left) {
                --i;
                --j;
            } else if (up <= left) {
                --i;
            } else {
                --j;
            }
        } else if (i > 0) {
            --i;
        } else {
            --j;
        }
        out.pairs.emplace_back(i, j);
    }
    std::reverse(out.pairs.begin(), out.pairs.end());
    out.validate(m, n);
    return out;
}

// Per-triplet error scores stacked over the aligned pairs: row per triplet,
// column per aligned pair.  The mask mirrors the exclusion decisions of the
// transition scorer (1 = usable entry).
struct error_score_matrix {
    int rows = 0;  // triplet count
    int cols = 0;  // aligned-pair count
    std::vector<double> v;             // row-major
    std::vector<std::uint8_t> valid;   // row-major

    double at(int t, int l) const { return v[static_cast<std::size_t>(t) * cols + l]; }
    bool ok(int t, int l) const { return valid[static_cast<std::size_t>(t) * cols + l] != 0; }
};

inline error_score_matrix error_score_matrix_of(
    const sequence_frames& target, const sequence_frames& reference,
    const alignment& a, const transition_options& opts = {}) {
    a.validate(static_cast<int>(target.transitions.size()),
               static_cast<int>(reference.transitions.size()));
    error_score_matrix out;
    out.rows = static_cast<int>(target.frames.front().size());
    out.cols = static_cast<int>(a.pairs.size());
    out.v.assign(static_cast<std::size_t>(out.rows) * out.cols, 0.0);
    out.valid.assign(out.v.size(), 0);
    for (int l = 0; l < out.cols; ++l) {
        auto [i, j] = a.pairs[l];
        auto [a0, a1] = target.transitions[i];
        auto [b0, b1] = reference.transitions[j];
        transition_errors te = transition_errors_cached(
            target.frames[a0], target.frames[a1], reference.frames[b0],
            reference.frames[b1], opts);
        for (int t = 0; t < out.rows; ++t) {
            out.v[static_cast<std::size_t>(t) * out.cols + l] = te.e[t];
            out.valid[static_cast<std::size_t>(t) * out.cols + l] = te.valid[t];
        }
    }
    return out;
}

inline error_score_matrix error_score_matrix_of(
    const joint_sequence& target, const joint_sequence& reference,
    const alignment& a, const std::vector<triplet_id>& triplets,
    const transition_options& opts = {}) {
    return error_score_matrix_of(cache_sequence(target, triplets, opts),
                                 cache_sequence(reference, triplets, opts), a,
                                 opts);
}

// Descriptive per-triplet contrast between two pools of error matrices.
struct triplet_significance {
    double same_mean = 0.0;
    double same_var = 0.0;
    double cross_mean = 0.0;
    double cross_var = 0.0;
    double index = 0.0;  // (cross mean - same mean) / pooled std
};

inline std::vector<triplet_significance> triplet_significance_report(
    const std::vector<error_score_matrix>& same_action,
    const std::vector<error_score_matrix>& cross_action) {
    if (same_action.empty() || cross_action.empty())
        throw validation_error("significance report needs both pools non-empty");
    int T = same_action.front().rows;
    for (const auto& m : same_action)
        if (m.rows != T) throw index_mismatch("triplet count mismatch in pool");
    for (const auto& m : cross_action)
        if (m.rows != T) throw index_mismatch("triplet count mismatch in pool");

    auto pool_stats = [](const std::vector<error_score_matrix>& pool, int t,
                         double& mean, double& var) {
        double s = 0.0;
        long cnt = 0;
        for (const auto& m : pool)
            for (int l = 0; l < m.cols; ++l)
                if (m.ok(t, l)) {
                    s += m.at(t, l);
                    ++cnt;
                }
        mean = cnt > 0 ? s / cnt : 0.0;
        double v = 0.0;
        for (const auto& m : pool)
            for (int l = 0; l < m.cols; ++l)
                if (m.ok(t, l)) {
                    double d = m.at(t, l) - mean;
                    v += d * d;
                }
        var = cnt > 0 ? v / cnt : 0.0;
    };

    std::vector<triplet_significance> out(T);
    for (int t = 0; t < T; ++t) {
        triplet_significance& r = out[t];
        pool_stats(same_action, t, r.same_mean, r.same_var);
        pool_stats(cross_action, t, r.cross_mean, r.cross_var);
        double pooled = std::sqrt(0.5 * (r.same_var + r.cross_var));
        r.index = pooled > 0.0 ? (r.cross_mean - r.same_mean) / pooled : 0.0;
    }
    return out;
}

}  // namespace homolign
