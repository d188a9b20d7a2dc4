#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "monopat/exact.hpp"
#include "monopat/view.hpp"

namespace monopat {

struct DegenerateSuffix : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PreconditionMassTooLow : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Certificate that `start` begins a growing suffix: per dyadic scale t a hit
/// set D_t inside the scale interval S_t(start), a per-scale density cap
/// `alpha` and a total-density floor `beta`. Hits must increase in value
/// across scales.
struct GrowingSuffixCert {
    Index start = 0;
    std::vector<std::vector<Index>> scale_sets;  // scale_sets[t-1] = D_t
    double alpha = 0.0;
    double beta = 0.0;
};

/// Certificate that (interval, tuples) splits at `c`: prefixes of length c
/// confined to `left`, suffixes to `right`, every prefix value below every
/// suffix value, all three parts of size >= alpha*|interval| and tuple density
/// >= beta.
struct SplittableCert {
    IndexInterval interval;
    DisjointFamily tuples;
    std::size_t split_index = 1;  // c
    IndexInterval left, middle, right;
    double alpha = 0.0;
    double beta = 0.0;
};

inline int ceil_log2(Index n) {
    int t = 0;
    Index p = 1;
    while (p < n) {
        p <<= 1;
        ++t;
    }
    return t;
}

/// The dyadic scale intervals of the suffix after `start` in a length-n
/// sequence: S_t = [start + 2^(t-1), start + 2^t - 1] clipped to [0, n-1],
/// for t = 1..ceil(log2(n - start)). They partition (start, n-1].
inline std::vector<IndexInterval> suffix_scales(Index start, Index n) {
    if (start < 0 || start >= n - 1)
        throw DegenerateSuffix("suffix_scales: no indices after start");
    int eta = ceil_log2(n - start);
    std::vector<IndexInterval> scales;
    scales.reserve(static_cast<std::size_t>(eta));
    for (int t = 1; t <= eta; ++t) {
        Index lo = start + (Index{1} << (t - 1));
        Index hi = std::min<Index>(n - 1, start + (Index{1} << t) - 1);
        scales.push_back({lo, hi});
    }
    return scales;
}

/// True iff the certificate's density conditions and cross-scale value
/// ordering all hold for `seq`. Structural defects (hit outside its scale
/// interval, out-of-range start) also yield false.
inline bool check_growing_suffix(std::span<const Value> seq, const GrowingSuffixCert& cert) {
    const auto n = static_cast<Index>(seq.size());
    if (cert.start < 0 || cert.start >= n - 1) return false;
    auto scales = suffix_scales(cert.start, n);
    if (cert.scale_sets.size() != scales.size()) return false;

    double density_sum = 0.0;
    Value prev_scales_max = 0.0;
    bool have_prev = false;
    for (std::size_t t = 0; t < scales.size(); ++t) {
        const auto& hits = cert.scale_sets[t];
        for (Index i : hits)
            if (!scales[t].contains(i)) return false;
        double density =
            static_cast<double>(hits.size()) / static_cast<double>(scales[t].size());
        if (density > cert.alpha) return false;
        density_sum += density;
        if (!hits.empty()) {
            Value lo = seq[static_cast<std::size_t>(hits.front())];
            Value hi = lo;
            for (Index i : hits) {
                Value v = seq[static_cast<std::size_t>(i)];
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            if (have_prev && lo <= prev_scales_max) return false;
            prev_scales_max = have_prev ? std::max(prev_scales_max, hi) : hi;
            have_prev = true;
        }
    }
    return density_sum >= cert.beta;
}

/// True iff every clause of the splittable definition holds for `seq`.
inline bool check_splittable(std::span<const Value> seq, const SplittableCert& cert) {
    const auto n = static_cast<Index>(seq.size());
    const auto& I = cert.interval;
    if (I.empty() || I.lo < 0 || I.hi >= n) return false;
    if (cert.tuples.tuples.empty()) return false;
    const std::size_t k = cert.tuples.tuples.front().length();
    if (k < 2) return false;
    const std::size_t c = cert.split_index;
    if (c < 1 || c > k - 1) return false;

    // adjacent partition into L, M, R, each of size >= alpha*|I|
    const auto &L = cert.left, &M = cert.middle, &R = cert.right;
    if (L.empty() || M.empty() || R.empty()) return false;
    if (L.lo != I.lo || M.lo != L.hi + 1 || R.lo != M.hi + 1 || R.hi != I.hi) return false;
    double min_part = cert.alpha * static_cast<double>(I.size());
    if (static_cast<double>(L.size()) < min_part || static_cast<double>(M.size()) < min_part ||
        static_cast<double>(R.size()) < min_part)
        return false;

    // tuples: valid disjoint k-patterns inside I, prefixes in L, suffixes in R
    std::vector<Index> used;
    Value prefix_max = 0.0, suffix_min = 0.0;
    bool first_tuple = true;
    for (const auto& w : cert.tuples.tuples) {
        if (w.length() != k) return false;
        if (!verify_witness(seq, w, I, ValueRange::all())) return false;
        for (std::size_t j = 0; j < k; ++j) {
            Index idx = w.indices[j];
            if (j < c && !L.contains(idx)) return false;
            if (j >= c && !R.contains(idx)) return false;
            used.push_back(idx);
        }
        Value pc = seq[static_cast<std::size_t>(w.indices[c - 1])];
        Value s1 = seq[static_cast<std::size_t>(w.indices[c])];
        prefix_max = first_tuple ? pc : std::max(prefix_max, pc);
        suffix_min = first_tuple ? s1 : std::min(suffix_min, s1);
        first_tuple = false;
    }
    std::sort(used.begin(), used.end());
    if (std::adjacent_find(used.begin(), used.end()) != used.end()) return false;  // disjoint
    if (prefix_max >= suffix_min) return false;

    double density = static_cast<double>(cert.tuples.size()) / static_cast<double>(I.size());
    return density >= cert.beta;
}

namespace detail {

inline void validate_interval_family(const IndexInterval& whole,
                                     const std::vector<IndexInterval>& parts) {
    std::vector<IndexInterval> sorted = parts;
    std::sort(sorted.begin(), sorted.end(),
              [](const IndexInterval& a, const IndexInterval& b) { return a.lo < b.lo; });
    Index prev_hi = whole.lo - 1;
    for (const auto& p : sorted) {
        if (p.empty() || p.lo <= prev_hi || p.hi > whole.hi)
            throw std::invalid_argument("interval family: parts must be disjoint, non-empty "
                                        "and contained in the enclosing interval");
        prev_hi = p.hi;
    }
}

}  // namespace detail

/// Exhaustive search for an interval J inside `whole` that contains
/// intervals[h] yet holds contained mass below (alpha/4)*|J|. Returns the
/// first such J in scan order, or nullopt.
inline std::optional<IndexInterval> find_bad_witness(const IndexInterval& whole,
                                                     const std::vector<IndexInterval>& intervals,
                                                     std::size_t h, double alpha) {
    detail::validate_interval_family(whole, intervals);
    if (h >= intervals.size()) throw std::invalid_argument("find_bad_witness: h out of range");
    const auto& target = intervals[h];
    for (Index a = whole.lo; a <= target.lo; ++a) {
        for (Index b = target.hi; b <= whole.hi; ++b) {
            IndexInterval j{a, b};
            Index mass = 0;
            for (const auto& part : intervals)
                if (j.contains(part)) mass += part.size();
            if (static_cast<double>(mass) < alpha / 4.0 * static_cast<double>(j.size()))
                return j;
        }
    }
    return std::nullopt;
}

/// The maximal set G of interval positions without a bad witness. Whenever
/// the total mass satisfies sum |I_h| >= alpha*|whole|, the result carries
/// mass at least (alpha/4)*|whole| and every interval J containing some I_h
/// with h in G holds contained mass >= (alpha/4)*|J|.
inline std::vector<std::size_t> robustify_intervals(const IndexInterval& whole,
                                                    const std::vector<IndexInterval>& intervals,
                                                    double alpha) {
    detail::validate_interval_family(whole, intervals);
    Index total = 0;
    for (const auto& part : intervals) total += part.size();
    if (static_cast<double>(total) < alpha * static_cast<double>(whole.size()))
        throw PreconditionMassTooLow("robustify_intervals: family mass below alpha*|I|");
    std::vector<std::size_t> good;
    for (std::size_t h = 0; h < intervals.size(); ++h)
        if (!find_bad_witness(whole, intervals, h, alpha)) good.push_back(h);
    return good;
}

}  // namespace monopat
