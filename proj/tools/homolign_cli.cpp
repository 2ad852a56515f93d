// homolign: view-invariant comparison of articulated motion from 2D joint
// tracks.  Subcommands cover the full batch workflow: synthesize a
// multi-view dataset, align sequence pairs, train per-action joint
// weights, classify a held-out split, and summarize results.

#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "homolign/pipeline.hpp"

namespace {

// Shared configuration handling: an optional kv config file, then
// key=value overrides applied on top (overrides win).
struct config_args {
    std::string config_file;
    std::vector<std::string> overrides;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_file,
                        "kv configuration file (key = value lines)")
            ->check(CLI::ExistingFile);
        cmd->add_option("--set", overrides,
                        "override a configuration key, e.g. --set seed=7")
            ->expected(-1);
    }

    homolign::run_config resolve() const {
        homolign::run_config cfg;
        if (!config_file.empty())
            cfg = homolign::run_config::from_file(config_file);
        for (const std::string& kv : overrides) {
            std::size_t eq = kv.find('=');
            if (eq == std::string::npos)
                throw homolign::parse_error("override '" + kv +
                                            "' is not of the form key=value");
            cfg.apply(homolign::trimmed(std::string_view(kv).substr(0, eq)),
                      homolign::trimmed(std::string_view(kv).substr(eq + 1)));
        }
        cfg.validate();
        return cfg;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"view-invariant action comparison from 2D joint tracks"};
    app.require_subcommand(1);

    config_args synth_cfg, align_cfg, train_cfg, rec_cfg, rep_cfg;
    std::string synth_out, align_target, align_reference, align_out;
    std::string train_dataset, train_out, rec_dataset, rec_weights, rec_out;
    std::string rep_results, rep_dataset, rep_out = "report.txt";
    bool rep_significance = false;

    CLI::App* synth =
        app.add_subcommand("synth", "generate a synthetic multi-view dataset");
    synth->add_option("--out", synth_out, "output dataset directory")->required();
    synth_cfg.attach(synth);

    CLI::App* align_cmd =
        app.add_subcommand("align", "align a target sequence to a reference");
    align_cmd->add_option("--target", align_target, "target sequence file")
        ->required()
        ->check(CLI::ExistingFile);
    align_cmd->add_option("--reference", align_reference, "reference sequence file")
        ->required()
        ->check(CLI::ExistingFile);
    align_cmd->add_option("--out", align_out, "output directory")->required();
    align_cfg.attach(align_cmd);

    CLI::App* train =
        app.add_subcommand("train", "learn per-action joint weights");
    train->add_option("--dataset", train_dataset, "dataset directory")
        ->required()
        ->check(CLI::ExistingDirectory);
    train->add_option("--out", train_out, "output directory for weight documents")
        ->required();
    train_cfg.attach(train);

    CLI::App* recognize =
        app.add_subcommand("recognize", "classify the test split");
    recognize->add_option("--dataset", rec_dataset, "dataset directory")
        ->required()
        ->check(CLI::ExistingDirectory);
    recognize->add_option("--weights", rec_weights, "trained weights directory")
        ->required()
        ->check(CLI::ExistingDirectory);
    recognize->add_option("--out", rec_out, "output directory")->required();
    rec_cfg.attach(recognize);

    CLI::App* report =
        app.add_subcommand("report", "aggregate results into a text report");
    report->add_option("--results", rep_results,
                       "directory holding train + recognize outputs")
        ->required()
        ->check(CLI::ExistingDirectory);
    report->add_option("--dataset", rep_dataset,
                       "dataset directory (needed for --significance)")
        ->check(CLI::ExistingDirectory);
    report->add_flag("--significance", rep_significance,
                     "also compute per-triplet significance tables");
    report->add_option("--out", rep_out, "report file path");
    rep_cfg.attach(report);

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed())
            return homolign::cmd_synth(synth_cfg.resolve(), synth_out);
        if (align_cmd->parsed())
            return homolign::cmd_align(align_cfg.resolve(), align_target,
                                       align_reference, align_out);
        if (train->parsed())
            return homolign::cmd_train(train_cfg.resolve(), train_dataset,
                                       train_out);
        if (recognize->parsed())
            return homolign::cmd_recognize(rec_cfg.resolve(), rec_dataset,
                                           rec_weights, rec_out);
        if (report->parsed()) {
            if (rep_significance && rep_dataset.empty()) {
                std::cerr << "error: --significance requires --dataset\n";
                return homolign::exit_usage;
            }
            return homolign::cmd_report(rep_cfg.resolve(), rep_results,
                                        rep_dataset, rep_significance, rep_out);
        }
    } catch (const homolign::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return homolign::exit_code_for(e);
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return homolign::exit_io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return homolign::exit_usage;
    }
    return homolign::exit_usage;
}
