#pragma once

#include <string>
#include <vector>

#include "homolign/alignment.hpp"
#include "homolign/scoring.hpp"

namespace homolign {

struct reference_entry {
    std::string label;
    sequence_frames frames;  // cached triplet bases of the reference
    weight_vector omega;
    double tau = 1.0;
};

struct reference_database {
    std::vector<reference_entry> entries;

    void validate() const {
        if (entries.empty()) throw validation_error("reference database is empty");
        for (std::size_t i = 0; i < entries.size(); ++i) {
            entries[i].omega.validate();
            if (!(entries[i].tau > 0.0))
                throw validation_error("tau must be positive for '" +
                                       entries[i].label + "'");
            for (std::size_t j = i + 1; j < entries.size(); ++j)
                if (entries[i].label == entries[j].label)
                    throw validation_error("duplicate reference label '" +
                                           entries[i].label + "'");
        }
    }

    int index_of(const std::string& label) const {
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i].label == label) return static_cast<int>(i);
        return -1;
    }
};

struct classify_result {
    std::string label;
    // (action label, length-normalized similarity) for every scored entry
    std::vector<std::pair<std::string, double>> scores;
    std::vector<std::string> skipped;  // entries that failed to score
};

// Nearest-reference classification: align the target against each entry,
// score with that action's weights and tau, normalize by aligned length,
// take the argmax.  Ties break toward the lexicographically smaller label.
// Entries that fail (degenerate alignment etc.) are skipped with a note;
// classification proceeds while at least one entry scores.
inline classify_result classify(const sequence_frames& target,
                                const reference_database& db,
                                const std::vector<triplet_id>& triplets,
                                const transition_options& opts = {}) {
    db.validate();
    classify_result out;
    bool have = false;
    double best = 0.0;
    for (const auto& entry : db.entries) {
        try {
            cost_matrix_result cm = cost_matrix(target, entry.frames, opts);
            alignment a = align(cm);
            error_score_matrix em = error_score_matrix_of(target, entry.frames, a, opts);
            double s = sequence_similarity(em, entry.omega, entry.tau, triplets) /
                       static_cast<double>(em.cols);
            out.scores.emplace_back(entry.label, s);
            if (!have || s > best || (s == best && entry.label < out.label)) {
                have = true;
                best = s;
                out.label = entry.label;
            }
        } catch (const validation_error&) {
            out.skipped.push_back(entry.label);
        }
    }
    if (!have)
        throw validation_error("no reference entry could be scored");
    return out;
}

inline classify_result classify(const joint_sequence& target,
                                const reference_database& db,
                                const std::vector<triplet_id>& triplets,
                                const transition_options& opts = {}) {
    return classify(cache_sequence(target, triplets, opts), db, triplets, opts);
}

struct confusion_matrix {
    std::vector<std::string> labels;     // row/column order
    std::vector<long> counts;            // row-major, row = truth
    long total = 0;
    long correct = 0;

    long at(std::size_t i, std::size_t j) const {
        return counts[i * labels.size() + j];
    }
    double accuracy() const {
        return total > 0 ? static_cast<double>(correct) / static_cast<double>(total)
                         : 0.0;
    }
};

// Classify every test sequence and tally the confusion counts.  Test labels
// must exist in the database.
inline confusion_matrix evaluate(const std::vector<joint_sequence>& test_set,
                                 const reference_database& db,
                                 const std::vector<triplet_id>& triplets,
                                 const transition_options& opts = {}) {
    db.validate();
    confusion_matrix cm;
    for (const auto& e : db.entries) cm.labels.push_back(e.label);
    cm.counts.assign(cm.labels.size() * cm.labels.size(), 0);
    for (const auto& seq : test_set) {
        int truth = db.index_of(seq.action);
        if (truth < 0)
            throw unknown_label("test sequence labeled '" + seq.action +
                                "' has no reference entry");
        classify_result r = classify(seq, db, triplets, opts);
        int pred = db.index_of(r.label);
        cm.counts[static_cast<std::size_t>(truth) * cm.labels.size() + pred] += 1;
        cm.total += 1;
        if (truth == pred) cm.correct += 1;
    }
    return cm;
}

}  // namespace homolign
