#pragma once

// Multi-start search driver: many seeded trials of
// (sample Haar unitaries -> matrix log -> pack -> minimize), aggregated into
// success counts and a histogram of the minima found.
//
// Trials are independent; a bounded worker pool pulls trial indices from an
// atomic counter and writes into per-trial slots, so the aggregate report is
// identical for any worker count. Wall-clock time is recorded per trial but
// carries no determinism guarantee.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "mub/haar.hpp"
#include "mub/lm.hpp"
#include "mub/objective.hpp"
#include "mub/rng.hpp"
#include "mub/unitary_param.hpp"

namespace mub {

struct SearchConfig {
    int d = 2;
    int n_bases = 1;         // free unitaries; total bases searched = N + 1
    int trials = 1;
    std::uint64_t base_seed = 0;
    double success_threshold = 1e-6;
    LmOptions lm_options;
    int parallelism = 1;
    double bin_width = 0.005;
    double bin_origin = 0.0;
};

inline void check_search_config(const SearchConfig& c) {
    if (c.d < 2) throw std::invalid_argument("SearchConfig: d must be >= 2");
    if (c.n_bases < 1) throw std::invalid_argument("SearchConfig: n_bases must be >= 1");
    if (c.trials < 1) throw std::invalid_argument("SearchConfig: trials must be >= 1");
    if (c.success_threshold <= 0.0) throw std::invalid_argument("SearchConfig: success threshold must be positive");
    if (c.parallelism < 1) throw std::invalid_argument("SearchConfig: parallelism must be >= 1");
    if (c.bin_width <= 0.0) throw std::invalid_argument("SearchConfig: bin width must be positive");
}

struct TrialResult {
    int trial_id = 0;
    std::uint64_t seed = 0;
    double objective_final = 0.0;
    int iterations = 0;
    LmTermination termination = LmTermination::MaxIterations;
    long long wall_time_ms = 0;
    bool success = false;
};

struct HistogramBin {
    double lower = 0.0;
    double upper = 0.0;
    long long count = 0;
};

// Half-open bins [origin + i*w, origin + (i+1)*w). Only occupied bins are
// returned, so the range extends to whatever the data requires. Non-finite
// or absurdly large values saturate into the outermost representable bin so
// that counts always sum to the input size.
inline std::vector<HistogramBin> histogram(std::span<const double> values, double bin_width,
                                           double origin = 0.0) {
    if (bin_width <= 0.0) throw std::invalid_argument("histogram: bin width must be positive");
    constexpr double kIndexCap = 1e15;
    std::map<long long, long long> counts;
    for (double v : values) {
        double idx_real = std::floor((v - origin) / bin_width);
        if (!(idx_real > -kIndexCap)) idx_real = -kIndexCap;  // also catches NaN
        if (idx_real > kIndexCap) idx_real = kIndexCap;
        ++counts[static_cast<long long>(idx_real)];
    }
    std::vector<HistogramBin> bins;
    bins.reserve(counts.size());
    for (const auto& [idx, count] : counts)
        bins.push_back({origin + static_cast<double>(idx) * bin_width,
                        origin + static_cast<double>(idx + 1) * bin_width, count});
    return bins;
}

struct SearchReport {
    SearchConfig config;
    std::vector<TrialResult> trials;  // ordered by trial_id
    int success_count = 0;
    double success_rate = 0.0;
    double min_objective = 0.0;
    std::vector<HistogramBin> histogram;
    HistogramBin modal_bin;
    double modal_fraction = 0.0;
};

inline TrialResult run_trial(const SearchConfig& config, int trial_id) {
    check_search_config(config);
    const int d = config.d;
    const int n = config.n_bases;

    TrialResult result;
    result.trial_id = trial_id;
    result.seed = trial_seed(config.base_seed, static_cast<std::uint64_t>(trial_id));

    const auto t0 = std::chrono::steady_clock::now();
    try {
        Rng rng(result.seed);
        std::vector<double> x0;
        x0.reserve(param_count(d, n));
        for (int b = 0; b < n; ++b) {
            const ComplexMatrix u = haar_unitary(d, rng);
            const std::vector<double> segment = hermitian_to_params(log_unitary(u));
            x0.insert(x0.end(), segment.begin(), segment.end());
        }

        const MubResidualFn residual_fn(d, n);
        const LmResult lm = lm_minimize(residual_fn, std::move(x0),
                                        static_cast<int>(residual_fn.output_size()),
                                        config.lm_options);
        result.objective_final = lm.objective_final;
        result.iterations = lm.iterations;
        result.termination = lm.termination;
    } catch (const std::exception&) {
        // a numerical failure is a recorded outcome, never a batch abort
        result.termination = LmTermination::DampingOverflow;
        result.objective_final = std::numeric_limits<double>::infinity();
    }
    const auto t1 = std::chrono::steady_clock::now();
    result.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    result.success = result.objective_final <= config.success_threshold;
    return result;
}

namespace detail {

inline SearchReport aggregate(const SearchConfig& config, std::vector<TrialResult> trials) {
    SearchReport report;
    report.config = config;
    report.trials = std::move(trials);

    std::vector<double> minima;
    minima.reserve(report.trials.size());
    report.min_objective = std::numeric_limits<double>::infinity();
    for (const TrialResult& t : report.trials) {
        if (t.success) ++report.success_count;
        report.min_objective = std::min(report.min_objective, t.objective_final);
        minima.push_back(t.objective_final);
    }
    report.success_rate = static_cast<double>(report.success_count) / config.trials;
    report.histogram = histogram(minima, config.bin_width, config.bin_origin);

    report.modal_fraction = 0.0;
    for (const HistogramBin& bin : report.histogram) {
        if (bin.count > report.modal_bin.count) report.modal_bin = bin;
    }
    if (config.trials > 0)
        report.modal_fraction = static_cast<double>(report.modal_bin.count) / config.trials;
    return report;
}

}  // namespace detail

inline SearchReport run_search(const SearchConfig& config) {
    check_search_config(config);
    std::vector<TrialResult> results(config.trials);

    const int workers = std::min(config.parallelism, config.trials);
    if (workers <= 1) {
        for (int i = 0; i < config.trials; ++i) results[i] = run_trial(config, i);
    } else {
        std::atomic<int> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                try {
                    while (true) {
                        const int i = next.fetch_add(1);
                        if (i >= config.trials) break;
                        results[i] = run_trial(config, i);
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (std::thread& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    return detail::aggregate(config, std::move(results));
}

}  // namespace mub
