#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "homolign/config.hpp"
#include "homolign/objective.hpp"
#include "homolign/optimizer.hpp"
#include "homolign/recognition.hpp"

namespace homolign {

namespace fs = std::filesystem;

// ----- dataset manifest ----------------------------------------------------

struct manifest_row {
    std::string file;
    std::string action;
    std::string subject;
    std::string camera;
    std::string split;  // train | test
};

inline std::string camera_id(int index) {
    std::ostringstream ss;
    ss << 'c' << std::setw(2) << std::setfill('0') << index;
    return ss.str();
}

inline std::string manifest_text(const std::vector<manifest_row>& rows) {
    std::string out = "file,action,subject,camera,split\n";
    for (const auto& r : rows)
        out += r.file + "," + r.action + "," + r.subject + "," + r.camera + "," +
               r.split + "\n";
    return out;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t b = 0;
    while (true) {
        std::size_t e = line.find(',', b);
        if (e == std::string::npos) {
            out.push_back(trimmed(std::string_view(line).substr(b)));
            break;
        }
        out.push_back(trimmed(std::string_view(line).substr(b, e - b)));
        b = e + 1;
    }
    return out;
}

inline std::vector<manifest_row> load_manifest(const fs::path& dataset_dir) {
    fs::path p = dataset_dir / "manifest.csv";
    std::istringstream in(read_file(p));
    std::string line;
    if (!std::getline(in, line))
        throw parse_error("manifest.csv is empty");
    if (trimmed(line) != "file,action,subject,camera,split")
        throw schema_mismatch("manifest.csv has an unexpected header");
    std::vector<manifest_row> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trimmed(line).empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 5)
            throw parse_error("manifest.csv line " + std::to_string(lineno) +
                              ": expected 5 fields");
        if (f[4] != "train" && f[4] != "test")
            throw parse_error("manifest.csv line " + std::to_string(lineno) +
                              ": split must be train or test");
        rows.push_back({f[0], f[1], f[2], f[3], f[4]});
    }
    if (rows.empty()) throw validation_error("manifest.csv lists no sequences");
    return rows;
}

// ----- synth ---------------------------------------------------------------

// Generate the multi-view synthetic dataset: every action x subject pair is
// animated once in 3D, then observed by its own random camera rig.  The
// first train_cameras cameras of each rig form the training split.
inline int cmd_synth(const run_config& cfg, const fs::path& out_dir) {
    cfg.validate();
    fs::create_directories(out_dir);
    std::vector<manifest_row> rows;
    const std::vector<subject_params> subjects = {cfg.subject_a(), cfg.subject_b()};
    int ai = 0;
    for (action_kind kind : all_actions()) {
        for (int si = 0; si < static_cast<int>(subjects.size()); ++si) {
            std::uint64_t tag = static_cast<std::uint64_t>(ai * 10 + si);
            joint_sequence3d s3 = procedural_action(
                kind, subjects[si], cfg.frames, cfg.fps,
                mix_seed(cfg.seed, 100, tag));
            s3.subject = "s" + std::to_string(si);
            rig_options ropt;
            sequence_bounds(s3, ropt.center, ropt.extent);
            ropt.radius_lo = cfg.radius_lo;
            ropt.radius_hi = cfg.radius_hi;
            ropt.elev_lo_deg = cfg.elev_lo_deg;
            ropt.elev_hi_deg = cfg.elev_hi_deg;
            ropt.kind = cfg.camera_model_kind();
            std::vector<camera_model> rig =
                random_rig(cfg.cameras, mix_seed(cfg.seed, 200, tag), ropt);
            for (int ci = 0; ci < cfg.cameras; ++ci) {
                std::string cid = camera_id(ci);
                joint_sequence s2 = project(s3, rig[ci], cid);
                std::string fname = "seq_" + s3.action + "_" + s3.subject + "_" +
                                    cid + ".txt";
                save_sequence(s2, out_dir / fname);
                rows.push_back({fname, s3.action, s3.subject, cid,
                                ci < cfg.train_cameras ? "train" : "test"});
            }
        }
        ++ai;
    }
    write_atomic(out_dir / "manifest.csv", manifest_text(rows));
    write_atomic(out_dir / "synth_config.kv", cfg.to_kv().to_text());
    std::cout << "wrote " << rows.size() << " sequences to " << out_dir.string()
              << "\n";
    return exit_ok;
}

// ----- align ---------------------------------------------------------------

inline std::string alignment_csv(const alignment& a,
                                 const cost_matrix_result& cm) {
    std::string out = "pair,target_transition,reference_transition,cost\n";
    for (std::size_t l = 0; l < a.pairs.size(); ++l) {
        auto [i, j] = a.pairs[l];
        out += std::to_string(l) + "," + std::to_string(i) + "," +
               std::to_string(j) + "," + fmt(cm.at(i, j)) + "\n";
    }
    return out;
}

inline std::string error_matrix_csv(const error_score_matrix& em,
                                    const std::vector<triplet_id>& triplets) {
    std::string out = "triplet,i,j,k";
    for (int l = 0; l < em.cols; ++l) out += ",pair_" + std::to_string(l);
    out += "\n";
    for (int t = 0; t < em.rows; ++t) {
        const triplet_id& id = triplets[t];
        out += std::to_string(t) + "," + std::to_string(id.i) + "," +
               std::to_string(id.j) + "," + std::to_string(id.k);
        for (int l = 0; l < em.cols; ++l) {
            out += ',';
            if (em.ok(t, l)) out += fmt(em.at(t, l));
            // masked cells stay empty
        }
        out += "\n";
    }
    return out;
}

// Align one target file against one reference file and persist the path
// and the per-triplet error matrix.
inline int cmd_align(const run_config& cfg, const fs::path& target_path,
                     const fs::path& reference_path, const fs::path& out_dir) {
    cfg.validate();
    body_model model = body_model::default11();
    joint_sequence target = load_sequence(target_path, &model);
    joint_sequence reference = load_sequence(reference_path, &model);
    auto triplets = enumerate_triplets(model.size());
    transition_options opts = cfg.transition_opts();
    sequence_frames tf = cache_sequence(target, triplets, opts);
    sequence_frames rf = cache_sequence(reference, triplets, opts);
    cost_matrix_result cm = cost_matrix(tf, rf, opts);
    alignment a = align(cm);
    error_score_matrix em = error_score_matrix_of(tf, rf, a, opts);
    fs::create_directories(out_dir);
    write_atomic(out_dir / "alignment.csv", alignment_csv(a, cm));
    write_atomic(out_dir / "errmatrix.csv", error_matrix_csv(em, triplets));
    std::cout << "alignment: " << a.pairs.size() << " pairs, total cost "
              << fmt(a.total_cost) << "\n";
    return exit_ok;
}

// ----- train ---------------------------------------------------------------

namespace detail {

struct loaded_dataset {
    body_model model = body_model::default11();
    std::vector<manifest_row> rows;
    std::vector<joint_sequence> seqs;  // parallel to rows
};

inline loaded_dataset load_dataset(const fs::path& dir) {
    loaded_dataset d;
    d.rows = load_manifest(dir);
    d.seqs.reserve(d.rows.size());
    for (const auto& r : d.rows)
        d.seqs.push_back(load_sequence(dir / r.file, &d.model));
    return d;
}

// Deterministic reference rule: per action, the train-split row with the
// lexicographically smallest (subject, camera); with default synth output
// that is subject s0, camera c00.
inline int reference_index(const loaded_dataset& d, const std::string& action) {
    int best = -1;
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
        const auto& r = d.rows[i];
        if (r.action != action || r.split != "train") continue;
        if (best < 0 ||
            std::make_pair(r.subject, r.camera) <
                std::make_pair(d.rows[best].subject, d.rows[best].camera))
            best = static_cast<int>(i);
    }
    if (best < 0)
        throw validation_error("no train-split sequence for action '" + action + "'");
    return best;
}

inline std::vector<std::string> dataset_actions(const loaded_dataset& d) {
    std::vector<std::string> actions;
    for (const auto& r : d.rows)
        if (std::find(actions.begin(), actions.end(), r.action) == actions.end())
            actions.push_back(r.action);
    return actions;
}

// Mean error over unmasked triplets, one value per aligned pair; the
// uniform-weight per-transition errors used by the percentile tau rule.
inline void column_means(const error_score_matrix& em, std::vector<double>& out) {
    for (int l = 0; l < em.cols; ++l) {
        double s = 0.0;
        int cnt = 0;
        for (int t = 0; t < em.rows; ++t)
            if (em.ok(t, l)) {
                s += em.at(t, l);
                ++cnt;
            }
        if (cnt > 0) out.push_back(s / cnt);
    }
}

inline double nearest_rank(std::vector<double> pool, double q) {
    if (pool.empty()) throw validation_error("empty sample pool for percentile");
    std::sort(pool.begin(), pool.end());
    std::size_t k = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(pool.size())));
    if (k < 1) k = 1;
    if (k > pool.size()) k = pool.size();
    return pool[k - 1];
}

}  // namespace detail

// Train per-action weights: build each action's objective from cached
// affine coefficients of reference-vs-sequence similarities over the train
// split, then maximize over the weight polytope.  Emits one weight
// document per action plus a convergence log; exit code flags any action
// that hit the iteration cap.
inline int cmd_train(const run_config& cfg, const fs::path& dataset_dir,
                     const fs::path& out_dir) {
    cfg.validate();
    detail::loaded_dataset d = detail::load_dataset(dataset_dir);
    std::vector<std::string> actions = detail::dataset_actions(d);
    if (actions.size() < 2)
        throw validation_error("training needs at least 2 actions");
    auto triplets = enumerate_triplets(d.model.size());
    transition_options opts = cfg.transition_opts();
    fs::create_directories(out_dir);

    // cache triplet bases for every train sequence once
    std::vector<int> train_idx;
    for (std::size_t i = 0; i < d.rows.size(); ++i)
        if (d.rows[i].split == "train") train_idx.push_back(static_cast<int>(i));
    std::map<int, sequence_frames> frames;
    for (int i : train_idx)
        frames.emplace(i, cache_sequence(d.seqs[i], triplets, opts));

    std::string refs_csv = "action,file\n";
    std::string conv_csv = "action,converged,iterations,objective,grad_norm\n";
    bool all_converged = true;

    for (const auto& action : actions) {
        int ref = detail::reference_index(d, action);
        const sequence_frames& rf = frames.at(ref);

        // same-action error matrices (reference excluded from its group)
        std::vector<error_score_matrix> same_ems;
        std::vector<double> tau_pool;
        std::vector<int> cross_list;
        for (int i : train_idx) {
            if (i == ref) continue;
            if (d.rows[i].action != action) {
                cross_list.push_back(i);
                continue;
            }
            const sequence_frames& tf = frames.at(i);
            cost_matrix_result cm = cost_matrix(tf, rf, opts);
            alignment a = align(cm);
            same_ems.push_back(error_score_matrix_of(tf, rf, a, opts));
            detail::column_means(same_ems.back(), tau_pool);
        }
        if (same_ems.size() < 2)
            throw validation_error("action '" + action +
                                   "' needs at least 2 non-reference train sequences");
        if (cross_list.empty())
            throw no_other_groups("action '" + action + "' has no cross-action data");

        double tau = cfg.tau_policy == "fixed"
                         ? cfg.tau_fixed
                         : detail::nearest_rank(tau_pool, cfg.tau_percentile);

        std::vector<affine_score_coefficients> same_coeffs;
        for (const auto& em : same_ems)
            same_coeffs.push_back(
                affine_coefficients(em, tau, triplets, d.model.size()));
        std::vector<affine_score_coefficients> cross_coeffs;
        for (int i : cross_list) {
            const sequence_frames& tf = frames.at(i);
            cost_matrix_result cm = cost_matrix(tf, rf, opts);
            alignment a = align(cm);
            error_score_matrix em = error_score_matrix_of(tf, rf, a, opts);
            cross_coeffs.push_back(
                affine_coefficients(em, tau, triplets, d.model.size()));
        }

        quadratic_objective obj =
            build_objective(same_coeffs, cross_coeffs, cfg.alpha, cfg.beta);
        optimize_result res = optimize_weights(obj, cfg.optimizer_opts());
        if (!res.converged) {
            all_converged = false;
            std::cerr << "warning: optimizer hit the iteration cap for action '"
                      << action << "'\n";
        }

        kv_doc w;
        w.add("action", action);
        w.add("reference", d.rows[ref].file);
        w.add("tau", fmt(tau));
        w.add("alpha", fmt(cfg.alpha));
        w.add("beta", fmt(cfg.beta));
        w.add("converged", res.converged ? "1" : "0");
        w.add("iterations", std::to_string(res.iterations));
        w.add("objective", fmt(res.objective));
        w.add("grad_norm", fmt(res.grad_norm));
        for (std::size_t j = 0; j < d.model.size(); ++j)
            w.add("omega." + d.model.joints[j], fmt(res.omega.omega[j]));
        write_atomic(out_dir / ("weights_" + action + ".kv"), w.to_text());

        refs_csv += action + "," + d.rows[ref].file + "\n";
        conv_csv += action + "," + std::string(res.converged ? "1" : "0") + "," +
                    std::to_string(res.iterations) + "," + fmt(res.objective) +
                    "," + fmt(res.grad_norm) + "\n";
        std::cout << "trained " << action << ": tau=" << fmt(tau)
                  << " objective=" << fmt(res.objective)
                  << (res.converged ? "" : " (not converged)") << "\n";
    }

    write_atomic(out_dir / "references.csv", refs_csv);
    write_atomic(out_dir / "convergence.csv", conv_csv);
    return all_converged ? exit_ok : exit_convergence;
}

// ----- recognize -----------------------------------------------------------

namespace detail {

struct db_entry {
    std::string action;
    std::string ref_file;
    weight_vector omega;
    double tau = 1.0;
    sequence_frames frames;
};

inline std::vector<db_entry> load_database(const fs::path& dataset_dir,
                                           const fs::path& weights_dir,
                                           const body_model& model,
                                           const std::vector<triplet_id>& triplets,
                                           const transition_options& opts) {
    std::istringstream in(read_file(weights_dir / "references.csv"));
    std::string line;
    if (!std::getline(in, line) || trimmed(line) != "action,file")
        throw schema_mismatch("references.csv has an unexpected header");
    std::vector<db_entry> db;
    while (std::getline(in, line)) {
        if (trimmed(line).empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 2) throw parse_error("references.csv: expected 2 fields");
        db_entry e;
        e.action = f[0];
        e.ref_file = f[1];
        kv_doc w = parse_kv(read_file(weights_dir / ("weights_" + e.action + ".kv")),
                            "weights_" + e.action + ".kv");
        if (w.require("action") != e.action)
            throw schema_mismatch("weight document action label mismatch");
        e.tau = parse_double(w.require("tau"), "tau");
        e.omega.omega.resize(model.size());
        for (std::size_t j = 0; j < model.size(); ++j)
            e.omega.omega[j] =
                parse_double(w.require("omega." + model.joints[j]), "omega");
        e.omega.validate();
        joint_sequence ref = load_sequence(dataset_dir / e.ref_file, &model);
        e.frames = cache_sequence(ref, triplets, opts);
        db.push_back(std::move(e));
    }
    if (db.empty()) throw validation_error("reference database is empty");
    return db;
}

inline std::string confusion_csv(const std::vector<std::string>& labels,
                                 const std::vector<long>& counts) {
    std::string out = "action";
    for (const auto& l : labels) out += "," + l;
    out += "\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out += labels[i];
        for (std::size_t j = 0; j < labels.size(); ++j)
            out += "," + std::to_string(counts[i * labels.size() + j]);
        out += "\n";
    }
    return out;
}

}  // namespace detail

// Classify the held-out split against the trained references, with a
// paired uniform-weight run over the same alignments for comparison.
inline int cmd_recognize(const run_config& cfg, const fs::path& dataset_dir,
                         const fs::path& weights_dir, const fs::path& out_dir) {
    cfg.validate();
    body_model model = body_model::default11();
    auto triplets = enumerate_triplets(model.size());
    transition_options opts = cfg.transition_opts();
    std::vector<detail::db_entry> db =
        detail::load_database(dataset_dir, weights_dir, model, triplets, opts);
    std::vector<std::string> labels;
    for (const auto& e : db) labels.push_back(e.action);

    std::vector<manifest_row> rows = load_manifest(dataset_dir);
    weight_vector uniform = weight_vector::uniform(model.size());

    std::vector<long> conf_w(labels.size() * labels.size(), 0);
    std::vector<long> conf_u(labels.size() * labels.size(), 0);
    long total = 0, correct_w = 0, correct_u = 0;
    std::string pred_csv = "file,action,predicted_weighted,predicted_uniform\n";

    for (const auto& r : rows) {
        if (r.split != "test") continue;
        auto truth_it = std::find(labels.begin(), labels.end(), r.action);
        if (truth_it == labels.end())
            throw unknown_label("test sequence labeled '" + r.action +
                                "' has no reference entry");
        std::size_t truth = static_cast<std::size_t>(truth_it - labels.begin());
        joint_sequence seq = load_sequence(dataset_dir / r.file, &model);
        sequence_frames tf = cache_sequence(seq, triplets, opts);

        // one alignment per entry, scored under both weightings
        std::string best_w, best_u;
        double sw_best = 0.0, su_best = 0.0;
        bool have = false;
        for (const auto& e : db) {
            cost_matrix_result cm = cost_matrix(tf, e.frames, opts);
            alignment a = align(cm);
            error_score_matrix em = error_score_matrix_of(tf, e.frames, a, opts);
            affine_score_coefficients co =
                affine_coefficients(em, e.tau, triplets, model.size());
            double n = static_cast<double>(co.N);
            double sw = evaluate_affine(co, e.omega) / n;
            double su = evaluate_affine(co, uniform) / n;
            if (!have) {
                best_w = best_u = e.action;
                sw_best = sw;
                su_best = su;
                have = true;
            } else {
                if (sw > sw_best || (sw == sw_best && e.action < best_w)) {
                    sw_best = sw;
                    best_w = e.action;
                }
                if (su > su_best || (su == su_best && e.action < best_u)) {
                    su_best = su;
                    best_u = e.action;
                }
            }
        }
        std::size_t pw = static_cast<std::size_t>(
            std::find(labels.begin(), labels.end(), best_w) - labels.begin());
        std::size_t pu = static_cast<std::size_t>(
            std::find(labels.begin(), labels.end(), best_u) - labels.begin());
        conf_w[truth * labels.size() + pw] += 1;
        conf_u[truth * labels.size() + pu] += 1;
        ++total;
        if (pw == truth) ++correct_w;
        if (pu == truth) ++correct_u;
        pred_csv += r.file + "," + r.action + "," + best_w + "," + best_u + "\n";
    }
    if (total == 0) throw validation_error("no test-split sequences found");

    double acc_w = static_cast<double>(correct_w) / static_cast<double>(total);
    double acc_u = static_cast<double>(correct_u) / static_cast<double>(total);
    fs::create_directories(out_dir);
    write_atomic(out_dir / "confusion_weighted.csv",
                 detail::confusion_csv(labels, conf_w));
    write_atomic(out_dir / "confusion_uniform.csv",
                 detail::confusion_csv(labels, conf_u));
    write_atomic(out_dir / "predictions.csv", pred_csv);
    kv_doc s;
    s.add("test_count", std::to_string(total));
    s.add("accuracy_weighted", fmt(acc_w));
    s.add("accuracy_uniform", fmt(acc_u));
    s.add("delta", fmt(acc_w - acc_u));
    write_atomic(out_dir / "summary.kv", s.to_text());
    std::cout << "recognize: " << total << " test sequences, weighted accuracy "
              << fmt(acc_w) << ", uniform accuracy " << fmt(acc_u) << "\n";
    return exit_ok;
}

// ----- report --------------------------------------------------------------

// Aggregate training and recognition artifacts into one plain-text report.
// With a dataset directory, also compute the per-triplet significance
// tables (same-action vs cross-action error contrast) per action.
inline int cmd_report(const run_config& cfg, const fs::path& results_dir,
                      const fs::path& dataset_dir, bool with_significance,
                      const fs::path& out_path) {
    cfg.validate();
    std::ostringstream rep;
    rep << "action comparison report\n";
    rep << "========================\n\n";

    kv_doc summary =
        parse_kv(read_file(results_dir / "summary.kv"), "summary.kv");
    rep << "test sequences:    " << summary.require("test_count") << "\n";
    rep << "weighted accuracy: " << summary.require("accuracy_weighted") << "\n";
    rep << "uniform accuracy:  " << summary.require("accuracy_uniform") << "\n";
    rep << "delta:             " << summary.require("delta") << "\n\n";

    rep << "confusion (weighted), rows = truth:\n"
        << read_file(results_dir / "confusion_weighted.csv") << "\n";
    rep << "confusion (uniform), rows = truth:\n"
        << read_file(results_dir / "confusion_uniform.csv") << "\n";
    rep << "convergence:\n" << read_file(results_dir / "convergence.csv") << "\n";

    // top weights per action, straight from the weight documents
    std::istringstream refs(read_file(results_dir / "references.csv"));
    std::string line;
    std::getline(refs, line);  // header
    std::vector<std::string> actions;
    while (std::getline(refs, line)) {
        if (trimmed(line).empty()) continue;
        actions.push_back(split_csv_line(line)[0]);
    }
    body_model model = body_model::default11();
    rep << "dominant weights per action:\n";
    for (const auto& action : actions) {
        kv_doc w = parse_kv(read_file(results_dir / ("weights_" + action + ".kv")),
                            "weights");
        std::vector<std::pair<double, std::string>> ws;
        for (const auto& j : model.joints)
            ws.emplace_back(parse_double(w.require("omega." + j), "omega"), j);
        std::sort(ws.rbegin(), ws.rend());
        rep << "  " << action << ":";
        for (int i = 0; i < 3 && i < static_cast<int>(ws.size()); ++i)
            if (ws[i].first > 0.0)
                rep << " " << ws[i].second << "=" << fmt(ws[i].first);
        rep << "\n";
    }

    if (with_significance) {
        rep << "\nsignificant triplets (same vs cross contrast), top 5 per action:\n";
        detail::loaded_dataset d = detail::load_dataset(dataset_dir);
        auto triplets = enumerate_triplets(d.model.size());
        transition_options opts = cfg.transition_opts();
        for (const auto& action : actions) {
            int ref = detail::reference_index(d, action);
            sequence_frames rf = cache_sequence(d.seqs[ref], triplets, opts);
            std::vector<error_score_matrix> same, cross;
            for (std::size_t i = 0; i < d.rows.size(); ++i) {
                if (d.rows[i].split != "train" || static_cast<int>(i) == ref)
                    continue;
                sequence_frames tf = cache_sequence(d.seqs[i], triplets, opts);
                cost_matrix_result cm = cost_matrix(tf, rf, opts);
                alignment a = align(cm);
                error_score_matrix em = error_score_matrix_of(tf, rf, a, opts);
                (d.rows[i].action == action ? same : cross).push_back(std::move(em));
            }
            auto table = triplet_significance_report(same, cross);
            std::string csv = "triplet,i,j,k,same_mean,same_var,cross_mean,cross_var,index\n";
            std::vector<int> order(table.size());
            for (std::size_t t = 0; t < table.size(); ++t) {
                const triplet_id& id = triplets[t];
                csv += std::to_string(t) + "," + std::to_string(id.i) + "," +
                       std::to_string(id.j) + "," + std::to_string(id.k) + "," +
                       fmt(table[t].same_mean) + "," + fmt(table[t].same_var) +
                       "," + fmt(table[t].cross_mean) + "," +
                       fmt(table[t].cross_var) + "," + fmt(table[t].index) + "\n";
                order[t] = static_cast<int>(t);
            }
            write_atomic(results_dir / ("significance_" + action + ".csv"), csv);
            std::sort(order.begin(), order.end(), [&](int a_, int b_) {
                return table[a_].index > table[b_].index;
            });
            rep << "  " << action << ":";
            for (int r = 0; r < 5 && r < static_cast<int>(order.size()); ++r) {
                const triplet_id& id = triplets[order[r]];
                rep << " (" << d.model.joints[id.i] << "," << d.model.joints[id.j]
                    << "," << d.model.joints[id.k] << ")";
            }
            rep << "\n";
        }
    }

    write_atomic(out_path, rep.str());
    std::cout << "report written to " << out_path.string() << "\n";
    return exit_ok;
}

}  // namespace homolign
