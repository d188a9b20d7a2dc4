#pragma once

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "monopat/constants.hpp"
#include "monopat/generators.hpp"
#include "monopat/tester.hpp"

namespace monopat {

struct DegenerateFit : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TrialRecord {
    std::uint64_t seed = 0;
    Index n = 0;
    std::size_t k = 0;
    double eps = 0.0;
    double delta = 0.0;
    std::string style;
    bool found = false;
    std::optional<PatternWitness> witness;
    std::uint64_t queries = 0;
    double wall_ms = 0.0;
};

struct SuccessConfig {
    InstanceSpec instance;
    double delta = 0.1;
    std::size_t trials = 100;
    std::uint64_t base_seed = 1;
    AlgorithmConstants consts;
};

struct SuccessReport {
    double rate = 0.0;
    std::vector<TrialRecord> records;
};

struct FitResult {
    double a = 0.0;
    double b = 0.0;
    double r2 = 0.0;
};

struct ScalingRow {
    Index n = 0;
    double mean_queries = 0.0;
    std::uint64_t max_queries = 0;
    std::size_t trials = 0;
};

struct ScalingConfig {
    std::vector<Index> ns;
    InstanceStyle style = InstanceStyle::blocks;
    std::size_t k = 3;
    double eps = 0.25;
    double delta = 1.0 / 3.0;
    std::size_t trials = 50;
    std::uint64_t base_seed = 1;
    AlgorithmConstants consts;
};

struct ScalingReport {
    std::vector<ScalingRow> rows;
    FitResult fit;
};

inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Ordinary least squares of mean against log2(n). Needs two distinct n;
/// exactly collinear rows recover the line with r2 = 1.
inline FitResult fit_log_slope(const std::vector<std::pair<Index, double>>& rows) {
    std::vector<Index> distinct;
    for (const auto& r : rows) distinct.push_back(r.first);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2)
        throw DegenerateFit("fit_log_slope: need at least 2 distinct n values");

    double sx = 0, sy = 0;
    for (const auto& r : rows) {
        sx += std::log2(static_cast<double>(r.first));
        sy += r.second;
    }
    const auto m = static_cast<double>(rows.size());
    double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0;
    for (const auto& r : rows) {
        double dx = std::log2(static_cast<double>(r.first)) - mx;
        sxx += dx * dx;
        sxy += dx * (r.second - my);
    }
    FitResult fit;
    fit.b = sxy / sxx;
    fit.a = my - fit.b * mx;
    double ss_res = 0, ss_tot = 0;
    for (const auto& r : rows) {
        double pred = fit.a + fit.b * std::log2(static_cast<double>(r.first));
        ss_res += (r.second - pred) * (r.second - pred);
        ss_tot += (r.second - my) * (r.second - my);
    }
    fit.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

/// Runs find_monotone over seeded trials of one generated instance. Every
/// witness is independently re-checked; a single bad one aborts with a hard
/// error, since a false positive would break the one-sided guarantee.
inline SuccessReport estimate_success(const SuccessConfig& config) {
    if (config.trials == 0) throw std::invalid_argument("estimate_success: trials must be >= 1");
    CertifiedInstance inst = is_far_style(config.instance.style)
                                 ? gen_far_instance(config.instance)
                                 : gen_free_instance(config.instance);
    auto base = std::make_shared<const std::vector<Value>>(inst.values);
    SuccessReport report;
    std::size_t found_count = 0;
    for (std::size_t i = 0; i < config.trials; ++i) {
        TrialRecord rec;
        rec.seed = config.base_seed + i;
        rec.n = config.instance.n;
        rec.k = config.instance.k;
        rec.eps = config.instance.eps;
        rec.delta = config.delta;
        rec.style = to_string(config.instance.style);

        auto view = SequenceView::over(base);
        Rng rng(rec.seed);
        auto start = std::chrono::steady_clock::now();
        RunOutcome outcome = find_monotone(view, config.instance.k, config.instance.eps,
                                           config.delta, config.consts, rng);
        auto stop = std::chrono::steady_clock::now();
        rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        rec.queries = outcome.queries;
        rec.found = outcome.found();
        if (outcome.found()) {
            if (!verify_witness(*base, *outcome.witness, view.interval(), view.range()))
                throw std::logic_error("estimate_success: reported witness failed re-verification");
            rec.witness = std::move(outcome.witness);
            ++found_count;
        }
        report.records.push_back(std::move(rec));
    }
    report.rate = static_cast<double>(found_count) / static_cast<double>(config.trials);
    return report;
}

/// Query growth against n: per n, trials on one instance; then an OLS fit of
/// mean queries against log2(n).
inline ScalingReport scaling_experiment(const ScalingConfig& config) {
    std::vector<Index> distinct = config.ns;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3)
        throw std::invalid_argument("scaling_experiment: need at least 3 distinct n values");

    ScalingReport report;
    std::vector<std::pair<Index, double>> fit_rows;
    for (Index n : distinct) {
        SuccessConfig sc;
        sc.instance = {config.style, n, config.k, config.eps, 0};
        sc.delta = config.delta;
        sc.trials = config.trials;
        sc.base_seed = config.base_seed;
        sc.consts = config.consts;
        auto run = estimate_success(sc);
        ScalingRow row;
        row.n = n;
        row.trials = config.trials;
        for (const auto& rec : run.records) {
            row.mean_queries += static_cast<double>(rec.queries);
            row.max_queries = std::max(row.max_queries, rec.queries);
        }
        row.mean_queries /= static_cast<double>(config.trials);
        fit_rows.emplace_back(n, row.mean_queries);
        report.rows.push_back(row);
    }
    report.fit = fit_log_slope(fit_rows);
    return report;
}

/// One TrialRecord as a JSON line. Field order is fixed; wall_ms is last so
/// determinism checks can strip it.
inline std::string jsonl_line(const TrialRecord& rec, bool with_wall_time = true) {
    std::string out = "{\"seed\":" + std::to_string(rec.seed) +
                      ",\"n\":" + std::to_string(rec.n) + ",\"k\":" + std::to_string(rec.k) +
                      ",\"eps\":" + format_double(rec.eps) +
                      ",\"delta\":" + format_double(rec.delta) + ",\"style\":\"" + rec.style +
                      "\",\"found\":" + (rec.found ? "true" : "false");
    if (rec.witness) {
        out += ",\"witness\":[";
        for (std::size_t i = 0; i < rec.witness->indices.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(rec.witness->indices[i]);
        }
        out += ']';
    }
    out += ",\"queries\":" + std::to_string(rec.queries);
    if (with_wall_time) out += ",\"wall_ms\":" + format_double(rec.wall_ms);
    out += '}';
    return out;
}

inline std::string csv_summary_header() {
    return "n,k,eps,delta,style,trials,success_rate,mean_queries,max_queries";
}

inline std::string csv_summary_row(Index n, std::size_t k, double eps, double delta,
                                   const std::string& style, std::size_t trials,
                                   double success_rate, double mean_queries,
                                   std::uint64_t max_queries) {
    return std::to_string(n) + ',' + std::to_string(k) + ',' + format_double(eps) + ',' +
           format_double(delta) + ',' + style + ',' + std::to_string(trials) + ',' +
           format_double(success_rate) + ',' + format_double(mean_queries) + ',' +
           std::to_string(max_queries);
}

}  // namespace monopat
