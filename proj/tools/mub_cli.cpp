// Command-line front end: run multi-start searches, verify basis sets,
// generate prime-dimension constructions, and bin trial results for plotting.
//
// Exit codes: 0 success (for `search`, completion of the batch; finding no
// MUB set is a result, not an error; for `verify`, the set passed), 1 a
// verified set is not mutually unbiased, 2 invalid flags or malformed input,
// 3 I/O failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "mub/basis_io.hpp"
#include "mub/constructions.hpp"
#include "mub/objective.hpp"
#include "mub/search.hpp"

namespace {

struct SearchFlags {
    int dim = 0;
    int bases = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    double success_tol = 1e-6;
    double term_tol = 1e-8;
    int max_iter = 400;
    int jobs = 1;
    double bin_width = 0.005;
    std::string out_prefix;
};

int run_search_command(const SearchFlags& flags) {
    mub::SearchConfig config;
    config.d = flags.dim;
    config.n_bases = flags.bases;
    config.trials = flags.trials;
    config.base_seed = flags.seed;
    config.success_threshold = flags.success_tol;
    config.lm_options.func_change_tol = flags.term_tol;
    config.lm_options.max_iterations = flags.max_iter;
    config.parallelism = flags.jobs;
    config.bin_width = flags.bin_width;

    try {
        mub::check_search_config(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const mub::SearchReport report = mub::run_search(config);
    try {
        mub::save_trials_csv(report, flags.out_prefix + ".trials.csv");
        mub::save_summary_json(report, flags.out_prefix, flags.out_prefix + ".summary.json");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }

    std::printf("d=%d N=%d trials=%d successes=%d rate=%.4f min_objective=%.17g\n", config.d,
                config.n_bases, config.trials, report.success_count, report.success_rate,
                report.min_objective);
    return 0;
}

int run_verify_command(const std::string& input, double success_tol) {
    mub::BasisSet set;
    try {
        set = mub::load_basis_set(input);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const double defect = mub::worst_unitarity_defect(set);
    if (defect > 1e-8) {
        std::printf("worst_unitarity_defect %.17g exceeds 1e-8; not a valid basis set\n", defect);
        return 2;
    }

    const mub::MubCheck check = mub::is_mub_set(set, success_tol);
    std::printf("objective %.17g\n", check.objective);
    std::printf("worst_modulus_deviation %.17g\n", check.worst_modulus_deviation);
    std::printf("worst_unitarity_defect %.17g\n", defect);
    std::printf("mutually_unbiased %s (threshold %.17g)\n", check.is_mub ? "yes" : "no", success_tol);
    return check.is_mub ? 0 : 1;
}

int run_construct_command(int dim, const std::string& out_path) {
    if (!mub::is_prime(dim)) {
        std::cerr << "error: dimension " << dim << " is not prime; no construction available\n";
        return 2;
    }
    try {
        mub::save_basis_set(mub::prime_mub_construction(dim), out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    std::printf("wrote %d bases for d=%d to %s\n", dim, dim, out_path.c_str());
    return 0;
}

int run_hist_command(const std::string& input, double bin_width, const std::string& out_path) {
    std::vector<double> objectives;
    try {
        objectives = mub::load_trial_objectives_csv(input);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (bin_width <= 0.0) {
        std::cerr << "error: bin width must be positive\n";
        return 2;
    }

    const std::vector<mub::HistogramBin> bins = mub::histogram(objectives, bin_width);
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 3;
    }
    for (const mub::HistogramBin& b : bins)
        out << mub::format_full_precision(0.5 * (b.lower + b.upper)) << ' ' << b.count << '\n';
    if (!out) {
        std::cerr << "error: write failed for " << out_path << "\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical search for mutually unbiased bases"};
    app.require_subcommand(1);

    SearchFlags search_flags;
    CLI::App* search = app.add_subcommand(
        "search", "Run seeded multi-start minimisations and write per-trial CSV + summary JSON");
    search->add_option("--dim", search_flags.dim, "Hilbert space dimension d")->required();
    search->add_option("--bases", search_flags.bases, "number of free bases N (N+1 bases total)")->required();
    search->add_option("--trials", search_flags.trials, "number of seeded trials")->required();
    search->add_option("--seed", search_flags.seed, "base seed (64-bit)")->required();
    search->add_option("--success-tol", search_flags.success_tol, "objective threshold declaring a MUB set found");
    search->add_option("--term-tol", search_flags.term_tol, "terminate when an accepted step changes the objective by less");
    search->add_option("--max-iter", search_flags.max_iter, "iteration cap per trial");
    search->add_option("--jobs", search_flags.jobs, "worker threads");
    search->add_option("--bin-width", search_flags.bin_width, "histogram bin width");
    search->add_option("--out", search_flags.out_prefix, "output prefix for .trials.csv and .summary.json")->required();

    std::string verify_input;
    double verify_tol = 1e-6;
    CLI::App* verify = app.add_subcommand("verify", "Check whether a basis-set JSON file is mutually unbiased");
    verify->add_option("--input", verify_input, "basis set JSON file")->required();
    verify->add_option("--success-tol", verify_tol, "objective threshold");

    int construct_dim = 0;
    std::string construct_out;
    CLI::App* construct = app.add_subcommand("construct", "Write the prime-dimension MUB construction as JSON");
    construct->add_option("--dim", construct_dim, "prime dimension")->required();
    construct->add_option("--out", construct_out, "output JSON file")->required();

    std::string hist_input;
    std::string hist_out;
    double hist_bin_width = 0.005;
    CLI::App* hist = app.add_subcommand("hist", "Bin the objectives of a trials CSV into plot-ready (center, count) rows");
    hist->add_option("--input", hist_input, "trials CSV file")->required();
    hist->add_option("--bin-width", hist_bin_width, "histogram bin width");
    hist->add_option("--out", hist_out, "output data file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << "\n";
        return 2;
    }

    if (search->parsed()) return run_search_command(search_flags);
    if (verify->parsed()) return run_verify_command(verify_input, verify_tol);
    if (construct->parsed()) return run_construct_command(construct_dim, construct_out);
    if (hist->parsed()) return run_hist_command(hist_input, hist_bin_width, hist_out);
    return 2;
}
