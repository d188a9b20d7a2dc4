// Acceptance suite. One function per criterion; each prints a PASS/FAIL line
// with the measured quantity. Run everything, or a subset with --only 1,4,9.
//
// Soundness and fuzz runs use reduced query budgets: the one-sided guarantee
// is budget-independent (a witness must verify, and none exists on free
// inputs), so a smaller budget only shortens the spin before Fail. Success
// and scaling criteria run the stock defaults.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <monopat/monopat.hpp>

#include "oracles.hpp"

using namespace monopat;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------- criterion 1
// One-sided error: over >= 10^4 fuzzed runs across far, free, random and
// masked inputs, every Found witness verifies against the invoked interval
// and range. Zero tolerance.
void criterion_one_sided() {
    Rng meta(20260808);
    AlgorithmConstants consts;
    consts.query_budget_factor = 300;
    const int total_runs = 12000;
    int violations = 0, found = 0, free_runs = 0, masked_runs = 0;
    int executed = 0;
    while (executed < total_runs) {
        Index n = 8 + static_cast<Index>(meta.uniform_u64(249));
        std::size_t k = 1 + meta.uniform_u64(5);
        std::vector<Value> values;
        bool is_free = false;
        switch (meta.uniform_u64(4)) {
            case 0: {  // far families
                auto style = std::vector<InstanceStyle>{
                    InstanceStyle::blocks, InstanceStyle::staircase, InstanceStyle::splittable,
                    InstanceStyle::suffix}[meta.uniform_u64(4)];
                double eps = 0.05 + 0.01 * static_cast<double>(meta.uniform_u64(20));
                InstanceSpec spec{style, n, k, eps, 0};
                if (static_cast<double>(n) * eps * static_cast<double>(k) >
                    static_cast<double>(n))
                    spec.eps = 1.0 / static_cast<double>(2 * k);
                try {
                    values = gen_far_instance(spec).values;
                } catch (const InfeasibleDensity&) {
                    // style capacity can fall short at tiny n; blocks always fits
                    spec.style = InstanceStyle::blocks;
                    spec.eps = 1.0 / static_cast<double>(2 * k);
                    values = gen_far_instance(spec).values;
                }
                break;
            }
            case 1: {  // free families
                if (k < 2) k = 2;
                auto style = meta.uniform_u64(2) ? InstanceStyle::free_concat
                                                 : InstanceStyle::free_interleave;
                values = gen_free_instance({style, n, k, 0.25, 0}).values;
                is_free = true;
                ++free_runs;
                break;
            }
            default: {  // iid values, small alphabet for plenty of ties
                values.resize(static_cast<std::size_t>(n));
                for (auto& v : values)
                    v = static_cast<double>(meta.uniform_u64(1 + meta.uniform_u64(60)));
                break;
            }
        }

        auto whole = SequenceView::over(values);
        std::optional<SequenceView> view = whole;
        if (meta.uniform_u64(2)) {  // random interval + value-range mask
            Index lo = meta.uniform_index({0, n - 1});
            Index hi = meta.uniform_index({lo, n - 1});
            ValueRange range = ValueRange::all();
            double cut = static_cast<double>(meta.uniform_u64(70));
            if (meta.uniform_u64(2)) range = ValueRange::at_least(cut);
            if (meta.uniform_u64(2)) {
                auto merged = range.intersect(ValueRange::below(cut + 5.0 + static_cast<double>(meta.uniform_u64(40))));
                if (merged) range = *merged;
            }
            view = whole.try_restrict({lo, hi}, range);
            ++masked_runs;
        }
        if (!view) continue;
        double eps = 0.1 + 0.05 * static_cast<double>(meta.uniform_u64(8));
        double delta = 0.1 + 0.05 * static_cast<double>(meta.uniform_u64(6));
        Rng rng(meta.next_u64());
        ++executed;
        RunOutcome out;
        try {
            out = find_monotone(*view, k, eps, delta, consts, rng);
        } catch (const std::logic_error&) {
            ++violations;  // internal invariant breach counts as a violation
            continue;
        }
        if (out.found()) {
            ++found;
            if (out.witness->length() != k ||
                !verify_witness(values, *out.witness, view->interval(), view->range()))
                ++violations;
            if (is_free) ++violations;  // free inputs can never yield a witness
        }
    }
    report(1, violations == 0,
           "one-sided error: " + std::to_string(violations) + " violations in " +
               std::to_string(total_runs) + " fuzzed runs (" + std::to_string(found) +
               " found, " + std::to_string(free_runs) + " free, " +
               std::to_string(masked_runs) + " masked)");
}

// ---------------------------------------------------------------- criterion 2
// Soundness on free inputs: 500 generated free instances per k in {2,3,4},
// each oracle-verified to have lis < k, and find_monotone fails on every one
// of 50 seeds. Zero tolerance.
void criterion_soundness() {
    AlgorithmConstants consts;
    consts.query_budget_factor = 600;
    int bad = 0;
    long runs = 0;
    for (std::size_t k : {2, 3, 4}) {
        for (int i = 0; i < 500; ++i) {
            Index n = 24 + static_cast<Index>(i % 97);
            auto style =
                i % 2 ? InstanceStyle::free_concat : InstanceStyle::free_interleave;
            auto inst = gen_free_instance({style, n, k, 0.25, static_cast<std::uint64_t>(i)});
            if (lis_length(inst.values) >= k) {
                ++bad;
                continue;
            }
            auto base = std::make_shared<const std::vector<Value>>(std::move(inst.values));
            for (std::uint64_t seed = 0; seed < 50; ++seed) {
                auto view = SequenceView::over(base);
                Rng rng(seed);
                auto out = find_monotone(view, k, 0.25, 0.25, consts, rng);
                ++runs;
                if (out.found()) ++bad;
            }
        }
    }
    report(2, bad == 0,
           "soundness on free inputs: " + std::to_string(bad) + " false reports over " +
               std::to_string(runs) + " runs (1500 instances x 50 seeds)");
}

// ---------------------------------------------------------------- criterion 3
// Success probability with stock constants: for every (k, style, n, eps) in
// {2,3,4} x {blocks, staircase, splittable} x {2^10, 2^14} x {0.1, 0.25},
// delta = 0.1, 200 seeded trials reach success rate >= 0.85.
void criterion_success() {
    AlgorithmConstants consts;
    bool pass = true;
    double worst = 2.0;
    std::string worst_at = "-";
    for (auto style :
         {InstanceStyle::blocks, InstanceStyle::staircase, InstanceStyle::splittable}) {
        for (std::size_t k : {2, 3, 4}) {
            for (Index n : {Index{1} << 10, Index{1} << 14}) {
                for (double eps : {0.1, 0.25}) {
                    SuccessConfig config;
                    config.instance = {style, n, k, eps, 0};
                    config.delta = 0.1;
                    config.trials = 200;
                    config.base_seed = 1000;
                    config.consts = consts;
                    auto run = estimate_success(config);
                    if (run.rate < worst) {
                        worst = run.rate;
                        worst_at = std::string(to_string(style)) + " k=" + std::to_string(k) +
                                   " n=" + std::to_string(n) + " eps=" + fmt(eps);
                    }
                    if (run.rate < 0.85) pass = false;
                }
            }
        }
    }
    report(3, pass,
           "success probability >= 0.85 on all 36 grid points (200 trials each); worst " +
               fmt(worst) + " at " + worst_at);
}

// ---------------------------------------------------------------- criterion 4
// Query scaling: k=3, eps=0.25, delta=1/3, blocks, n = 2^10..2^22 in factor-4
// steps, 50 trials per n. (a) r^2 of mean-vs-log2(n) >= 0.9; (b) mean at
// 2^22 <= 2.2 * (22/10) * mean at 2^10.
void criterion_scaling() {
    ScalingConfig config;
    for (int e = 10; e <= 22; e += 2) config.ns.push_back(Index{1} << e);
    config.style = InstanceStyle::blocks;
    config.k = 3;
    config.eps = 0.25;
    config.delta = 1.0 / 3.0;
    config.trials = 50;
    config.base_seed = 7;
    auto rep = scaling_experiment(config);
    double mean_lo = rep.rows.front().mean_queries;
    double mean_hi = rep.rows.back().mean_queries;
    double bound = 2.2 * (22.0 / 10.0) * mean_lo;
    bool pass = rep.fit.r2 >= 0.9 && mean_hi <= bound;
    report(4, pass,
           "query scaling: r2=" + fmt(rep.fit.r2) + " (need >= 0.9), mean(2^22)=" +
               fmt(mean_hi) + " <= " + fmt(bound) + " (2.2*(22/10)*mean(2^10)), slope b=" +
               fmt(rep.fit.b) + "/octave");
}

// ---------------------------------------------------------------- criterion 5
// Oracle equivalence: distance_to_free against exhaustive subset search on
// every permutation of length <= 8 for k in {2,3}; lis_length against the
// independent quadratic DP on every sequence of length <= 10 over a 4-letter
// alphabet (and against full subset enumeration up to length 6).
void criterion_oracles() {
    long checked = 0;
    int mismatches = 0;
    for (int m = 1; m <= 8; ++m) {
        std::vector<double> perm(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
        do {
            for (std::size_t k : {2, 3}) {
                if (distance_to_free(perm, k) != oracle::min_deletions_to_free(perm, k))
                    ++mismatches;
            }
            ++checked;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    long perm_checked = checked;

    checked = 0;
    for (int len = 1; len <= 10; ++len) {
        std::vector<double> seq(static_cast<std::size_t>(len), 0.0);
        long count = 1;
        for (int i = 0; i < len; ++i) count *= 4;
        for (long code = 0; code < count; ++code) {
            long rest = code;
            for (int i = 0; i < len; ++i) {
                seq[static_cast<std::size_t>(i)] = static_cast<double>(rest % 4);
                rest /= 4;
            }
            if (lis_length(seq) != oracle::dp_lis(seq)) ++mismatches;
            if (len <= 6 && lis_length(seq) != oracle::subset_lis(seq)) ++mismatches;
            ++checked;
        }
    }
    report(5, mismatches == 0,
           "oracle equivalence: " + std::to_string(mismatches) + " mismatches over " +
               std::to_string(perm_checked) + " permutations (k in {2,3}) and " +
               std::to_string(checked) + " 4-letter sequences");
}

// ---------------------------------------------------------------- criterion 6
// Greedy bound: for 1000 random sequences with n <= 64 and eps read off as
// distance_to_free/n, the greedy family has at least ceil(eps*n/k) members.
void criterion_greedy_bound() {
    Rng rng(606);
    int bad = 0;
    for (int round = 0; round < 1000; ++round) {
        auto n = 4 + rng.uniform_u64(61);
        std::vector<double> seq(n);
        std::uint64_t alphabet = 2 + rng.uniform_u64(96);
        for (auto& v : seq) v = static_cast<double>(rng.uniform_u64(alphabet));
        for (std::size_t k : {2, 3, 4}) {
            auto dist = distance_to_free(seq, k);
            auto fam = greedy_disjoint_family(seq, k);
            // ceil(eps*n/k) with eps = dist/n is ceil(dist/k)
            if (fam.size() < (dist + k - 1) / k) ++bad;
        }
    }
    report(6, bad == 0,
           "greedy bound |family| >= ceil(eps*n/k): " + std::to_string(bad) +
               " violations over 1000 sequences x k in {2,3,4}");
}

// ---------------------------------------------------------------- criterion 7
// Robustification guarantees: for 1000 random interval families with mass at least
// alpha*|I|, the returned G has mass >= (alpha/4)*|I| and an independent
// exhaustive enumeration finds no diluting interval for any member of G.
void criterion_robustify() {
    Rng rng(707);
    int bad = 0;
    long families = 0;
    while (families < 1000) {
        Index n = 24 + static_cast<Index>(rng.uniform_u64(177));
        IndexInterval whole{0, n - 1};
        std::vector<IndexInterval> parts;
        Index cursor = 0;
        while (cursor < n - 1 && parts.size() < 24) {
            Index lo = cursor + static_cast<Index>(rng.uniform_u64(9));
            Index hi = lo + static_cast<Index>(rng.uniform_u64(14));
            if (lo > n - 1) break;
            hi = std::min<Index>(hi, n - 1);
            parts.push_back({lo, hi});
            cursor = hi + 2;
        }
        if (parts.empty()) continue;
        Index mass = 0;
        for (const auto& p : parts) mass += p.size();
        // keep the scale strictly below 1 so rounding cannot break the
        // precondition mass >= alpha*|I|
        double alpha = static_cast<double>(mass) / static_cast<double>(n) *
                       (0.4 + 0.0059 * static_cast<double>(rng.uniform_u64(101)));
        if (!(alpha > 0)) continue;
        ++families;

        auto good = robustify_intervals(whole, parts, alpha);
        Index good_mass = 0;
        for (auto h : good) good_mass += parts[h].size();
        if (static_cast<double>(good_mass) < alpha / 4.0 * static_cast<double>(n)) ++bad;

        // independent exhaustive confirmation, not via find_bad_witness: scan
        // every [a, b], accumulating contained mass incrementally over b
        std::vector<bool> in_good(parts.size(), false);
        for (auto h : good) in_good[h] = true;
        std::vector<bool> has_witness(parts.size(), false);
        for (Index a = 0; a < n; ++a) {
            Index contained = 0;
            std::size_t next_part = 0;
            while (next_part < parts.size() && parts[next_part].lo < a) ++next_part;
            for (Index b = a; b < n; ++b) {
                while (next_part < parts.size() && parts[next_part].hi == b) {
                    contained += parts[next_part].size();
                    ++next_part;
                }
                if (static_cast<double>(contained) <
                    alpha / 4.0 * static_cast<double>(b - a + 1)) {
                    for (std::size_t h = 0; h < parts.size(); ++h)
                        if (a <= parts[h].lo && parts[h].hi <= b) has_witness[h] = true;
                }
            }
        }
        for (std::size_t h = 0; h < parts.size(); ++h)
            if (in_good[h] == has_witness[h]) ++bad;  // G is exactly the witness-free set
    }
    report(7, bad == 0,
           "robustification guarantees: " + std::to_string(bad) +
               " defects over 1000 random families (mass bound + exhaustive witness scan)");
}

// ---------------------------------------------------------------- criterion 8
// Determinism: identical configs give byte-identical JSON Lines, wall time
// aside, and identical query counts.
void criterion_determinism() {
    int diffs = 0;
    for (auto style : {InstanceStyle::blocks, InstanceStyle::splittable,
                       InstanceStyle::free_interleave}) {
        SuccessConfig config;
        config.instance = {style, 512, 3, 0.2, 0};
        config.delta = 0.2;
        config.trials = 40;
        config.base_seed = 99;
        config.consts.query_budget_factor = 2000;
        auto a = estimate_success(config);
        auto b = estimate_success(config);
        for (std::size_t i = 0; i < config.trials; ++i) {
            if (jsonl_line(a.records[i], false) != jsonl_line(b.records[i], false)) ++diffs;
            if (a.records[i].queries != b.records[i].queries) ++diffs;
        }
    }
    report(8, diffs == 0,
           "determinism: " + std::to_string(diffs) +
               " differing lines across repeated runs (3 styles x 40 trials)");
}

// ---------------------------------------------------------------- criterion 9
// Sample-Suffix budget: on the identity family, mean queries of sample_suffix
// fit a + b*log2(n) with r^2 >= 0.9 across n = 2^10..2^22.
void criterion_suffix_budget() {
    AlgorithmConstants consts;
    std::vector<std::pair<Index, double>> rows;
    for (int e = 10; e <= 22; e += 2) {
        Index n = Index{1} << e;
        auto inst = gen_far_instance({InstanceStyle::suffix, n, 3, 0.25, 0});
        auto base = std::make_shared<const std::vector<Value>>(std::move(inst.values));
        double mean = 0;
        int counted = 0;
        const int trials = 50;
        for (int t = 0; t < trials; ++t) {
            auto view = SequenceView::over(base);
            Rng rng(static_cast<std::uint64_t>(1000 + t));
            auto out = sample_suffix(view, 3, 0.25, 0.25, consts, rng);
            mean += static_cast<double>(out.queries);
            ++counted;
        }
        rows.emplace_back(n, mean / counted);
    }
    auto fit = fit_log_slope(rows);
    report(9, fit.r2 >= 0.9,
           "sample_suffix queries vs log2(n) on identity: r2=" + fmt(fit.r2) +
               " (need >= 0.9), slope b=" + fmt(fit.b) + "/octave");
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int a = 1; a < argc; ++a) {
        std::string arg = argv[a];
        if (arg == "--only" && a + 1 < argc) {
            std::string list = argv[++a];
            std::size_t pos = 0;
            while (pos < list.size()) {
                auto comma = list.find(',', pos);
                if (comma == std::string::npos) comma = list.size();
                selected.push_back(std::stoi(list.substr(pos, comma - pos)));
                pos = comma + 1;
            }
        }
    }
    auto want = [&](int id) {
        return selected.empty() || std::find(selected.begin(), selected.end(), id) != selected.end();
    };
    if (want(1)) criterion_one_sided();
    if (want(2)) criterion_soundness();
    if (want(3)) criterion_success();
    if (want(4)) criterion_scaling();
    if (want(5)) criterion_oracles();
    if (want(6)) criterion_greedy_bound();
    if (want(7)) criterion_robustify();
    if (want(8)) criterion_determinism();
    if (want(9)) criterion_suffix_budget();
    return g_failures == 0 ? 0 : 1;
}
