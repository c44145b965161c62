#pragma once

// File formats.
//
// BasisSet JSON:   {"d": int, "bases": [ [ [ [re, im], ... d ], ... d rows ], ... N ]}
//                  row-major, numbers as [re, im] pairs for lossless parsing.
// Trials CSV:      one header row, one row per trial; seeds in hex and
//                  objectives at 17 significant digits so files re-parse
//                  losslessly.
// Summary JSON:    aggregate of a search batch, versioned via schema_version.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mub/objective.hpp"
#include "mub/rng.hpp"
#include "mub/search.hpp"

namespace mub {

inline constexpr int kSummarySchemaVersion = 1;

struct MalformedInput : std::runtime_error {
    explicit MalformedInput(const std::string& what) : std::runtime_error(what) {}
};

inline nlohmann::ordered_json basis_set_to_json(const BasisSet& set) {
    check_basis_set(set);
    nlohmann::ordered_json root;
    root["d"] = set.d;
    nlohmann::ordered_json bases = nlohmann::ordered_json::array();
    for (const ComplexMatrix& u : set.bases) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (int i = 0; i < set.d; ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (int j = 0; j < set.d; ++j)
                row.push_back({u(i, j).real(), u(i, j).imag()});
            rows.push_back(std::move(row));
        }
        bases.push_back(std::move(rows));
    }
    root["bases"] = std::move(bases);
    return root;
}

inline BasisSet basis_set_from_json(const nlohmann::json& root) {
    if (!root.is_object() || !root.contains("d") || !root.contains("bases"))
        throw MalformedInput("basis set JSON: expected object with \"d\" and \"bases\"");
    if (!root["d"].is_number_integer()) throw MalformedInput("basis set JSON: \"d\" must be an integer");
    const int d = root["d"].get<int>();
    if (d < 2) throw MalformedInput("basis set JSON: d must be >= 2");
    const auto& bases = root["bases"];
    if (!bases.is_array() || bases.empty()) throw MalformedInput("basis set JSON: \"bases\" must be a non-empty array");

    BasisSet set;
    set.d = d;
    for (const auto& basis : bases) {
        if (!basis.is_array() || basis.size() != static_cast<std::size_t>(d))
            throw MalformedInput("basis set JSON: each basis must have d rows");
        ComplexMatrix u(d, d);
        for (int i = 0; i < d; ++i) {
            const auto& row = basis[i];
            if (!row.is_array() || row.size() != static_cast<std::size_t>(d))
                throw MalformedInput("basis set JSON: each row must have d entries");
            for (int j = 0; j < d; ++j) {
                const auto& pair = row[j];
                if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
                    throw MalformedInput("basis set JSON: entries must be [re, im] number pairs");
                u(i, j) = Complex(pair[0].get<double>(), pair[1].get<double>());
            }
        }
        if (!all_finite(u)) throw MalformedInput("basis set JSON: non-finite entry");
        set.bases.push_back(std::move(u));
    }
    return set;
}

inline BasisSet load_basis_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open " + path);
    nlohmann::json root;
    try {
        in >> root;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("JSON parse error: ") + e.what());
    }
    return basis_set_from_json(root);
}

inline void save_basis_set(const BasisSet& set, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << basis_set_to_json(set).dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + path);
}

// --- trials CSV ---

inline constexpr const char* kTrialsCsvHeader =
    "trial_id,seed,d,n_bases,objective_final,iterations,termination,success,wall_time_ms";

inline std::string format_seed_hex(std::uint64_t seed) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(seed));
    return buf;
}

inline std::string format_full_precision(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string trial_csv_row(const TrialResult& t, int d, int n_bases) {
    std::ostringstream row;
    row << t.trial_id << ',' << format_seed_hex(t.seed) << ',' << d << ',' << n_bases << ','
        << format_full_precision(t.objective_final) << ',' << t.iterations << ','
        << to_string(t.termination) << ',' << (t.success ? 1 : 0) << ',' << t.wall_time_ms;
    return row.str();
}

inline void save_trials_csv(const SearchReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << kTrialsCsvHeader << '\n';
    for (const TrialResult& t : report.trials)
        out << trial_csv_row(t, report.config.d, report.config.n_bases) << '\n';
    if (!out) throw std::runtime_error("write failed for " + path);
}

// Reads back the objective_final column. Tolerates an empty body (header
// only); anything structurally off is malformed input.
inline std::vector<double> load_trial_objectives_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw MalformedInput("empty CSV: " + path);
    if (line != kTrialsCsvHeader) throw MalformedInput("unexpected CSV header in " + path);

    std::vector<double> objectives;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(pos));
                break;
            }
            fields.push_back(line.substr(pos, comma - pos));
            pos = comma + 1;
        }
        if (fields.size() != 9) throw MalformedInput("bad CSV row: " + line);
        const std::string& text = fields[4];
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size())
            throw MalformedInput("bad objective value: " + text);
        objectives.push_back(value);
    }
    return objectives;
}

// --- summary JSON ---

inline nlohmann::ordered_json histogram_to_json(const std::vector<HistogramBin>& bins) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const HistogramBin& b : bins) {
        nlohmann::ordered_json j;
        j["bin_lower"] = b.lower;
        j["bin_upper"] = b.upper;
        j["count"] = b.count;
        arr.push_back(std::move(j));
    }
    return arr;
}

inline nlohmann::ordered_json summary_to_json(const SearchReport& report,
                                              const std::string& out_prefix) {
    const SearchConfig& c = report.config;
    nlohmann::ordered_json root;
    root["schema_version"] = kSummarySchemaVersion;
    nlohmann::ordered_json config;
    config["dim"] = c.d;
    config["bases"] = c.n_bases;
    config["trials"] = c.trials;
    config["seed"] = format_seed_hex(c.base_seed);
    config["success_tol"] = c.success_threshold;
    config["term_tol"] = c.lm_options.func_change_tol;
    config["max_iter"] = c.lm_options.max_iterations;
    config["jobs"] = c.parallelism;
    config["bin_width"] = c.bin_width;
    config["out"] = out_prefix;
    root["config"] = std::move(config);
    root["generator_id"] = kGeneratorId;
    root["success_count"] = report.success_count;
    root["success_rate"] = report.success_rate;
    root["min_objective"] = report.min_objective;
    nlohmann::ordered_json modal;
    modal["bin_lower"] = report.modal_bin.lower;
    modal["bin_upper"] = report.modal_bin.upper;
    modal["count"] = report.modal_bin.count;
    root["modal_bin"] = std::move(modal);
    root["modal_fraction"] = report.modal_fraction;
    root["histogram"] = histogram_to_json(report.histogram);
    return root;
}

inline void save_summary_json(const SearchReport& report, const std::string& out_prefix,
                              const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << summary_to_json(report, out_prefix).dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace mub
