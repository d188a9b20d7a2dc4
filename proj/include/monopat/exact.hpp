#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "monopat/view.hpp"

namespace monopat {

/// k positions with strictly increasing indices and strictly increasing values.
struct PatternWitness {
    std::vector<Index> indices;
    std::vector<Value> values;  // base values at `indices`, kept for convenience

    std::size_t length() const { return indices.size(); }
    bool operator==(const PatternWitness& other) const { return indices == other.indices; }
};

/// Index-disjoint witnesses of one common length.
struct DisjointFamily {
    std::vector<PatternWitness> tuples;

    std::size_t size() const { return tuples.size(); }
};

/// Length of the longest strictly increasing subsequence. Patience sorting;
/// ties never chain.
inline std::size_t lis_length(std::span<const Value> seq) {
    std::vector<Value> tails;
    tails.reserve(seq.size());
    for (Value v : seq) {
        auto it = std::lower_bound(tails.begin(), tails.end(), v);
        if (it == tails.end())
            tails.push_back(v);
        else
            *it = v;
    }
    return tails.size();
}

/// Some length-k witness when lis_length(seq) >= k, nullopt otherwise.
inline std::optional<PatternWitness> find_pattern_exact(std::span<const Value> seq,
                                                        std::size_t k) {
    if (k == 0) throw std::invalid_argument("find_pattern_exact: k must be >= 1");
    const std::size_t n = seq.size();
    // patience piles with predecessor links
    std::vector<Value> tails;
    std::vector<std::size_t> tail_pos;   // index holding tails[j]
    std::vector<std::size_t> prev(n, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < n; ++i) {
        auto it = std::lower_bound(tails.begin(), tails.end(), seq[i]);
        auto j = static_cast<std::size_t>(it - tails.begin());
        if (j > 0) prev[i] = tail_pos[j - 1];
        if (it == tails.end()) {
            tails.push_back(seq[i]);
            tail_pos.push_back(i);
        } else {
            *it = seq[i];
            tail_pos[j] = i;
        }
        if (tails.size() >= k) {
            // reconstruct a full chain ending here and keep its first k entries
            std::vector<Index> chain;
            for (std::size_t cur = tail_pos[k - 1]; cur != static_cast<std::size_t>(-1);
                 cur = prev[cur])
                chain.push_back(static_cast<Index>(cur));
            std::reverse(chain.begin(), chain.end());
            chain.resize(k);
            PatternWitness w;
            w.indices = std::move(chain);
            for (Index idx : w.indices) w.values.push_back(seq[static_cast<std::size_t>(idx)]);
            return w;
        }
    }
    return std::nullopt;
}

/// True iff indices strictly increase, base values at them strictly increase,
/// every index lies in `interval` and every value in `range`.
inline bool verify_witness(std::span<const Value> seq, const PatternWitness& w,
                           const IndexInterval& interval, const ValueRange& range) {
    if (w.indices.empty()) return false;
    Index prev_idx = std::numeric_limits<Index>::min();
    Value prev_val = 0.0;
    bool first = true;
    for (Index idx : w.indices) {
        if (idx < 0 || idx >= static_cast<Index>(seq.size())) return false;
        if (!interval.contains(idx)) return false;
        Value v = seq[static_cast<std::size_t>(idx)];
        if (!range.contains(v)) return false;
        if (!first && (idx <= prev_idx || v <= prev_val)) return false;
        prev_idx = idx;
        prev_val = v;
        first = false;
    }
    return true;
}

namespace detail {

// Fenwick tree over value ranks, max-combine, used for "longest increasing
// subsequence starting at i" in one right-to-left sweep.
class MaxFenwick {
  public:
    explicit MaxFenwick(std::size_t n) : tree_(n + 1, 0) {}
    void update(std::size_t i, std::size_t v) {
        for (++i; i < tree_.size(); i += i & (~i + 1))
            if (tree_[i] < v) tree_[i] = v;
    }
    std::size_t prefix_max(std::size_t count) const {
        std::size_t best = 0;
        for (std::size_t i = count; i > 0; i -= i & (~i + 1))
            if (tree_[i] > best) best = tree_[i];
        return best;
    }

  private:
    std::vector<std::size_t> tree_;
};

// lis_from[i] = length of the longest strictly increasing subsequence of
// values[positions] starting at positions[i].
inline std::vector<std::size_t> lis_from_each(const std::vector<Index>& positions,
                                              std::span<const Value> seq) {
    const std::size_t m = positions.size();
    std::vector<Value> vals(m);
    for (std::size_t i = 0; i < m; ++i) vals[i] = seq[static_cast<std::size_t>(positions[i])];
    std::vector<Value> sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    // rank r: number of distinct values strictly greater than vals[i]
    MaxFenwick fw(sorted.size());
    std::vector<std::size_t> out(m);
    for (std::size_t i = m; i-- > 0;) {
        auto r = static_cast<std::size_t>(
            std::lower_bound(sorted.begin(), sorted.end(), vals[i]) - sorted.begin());
        std::size_t greater = sorted.size() - r - 1;  // count of values > vals[i]
        out[i] = 1 + fw.prefix_max(greater);
        fw.update(sorted.size() - r - 1, out[i]);
    }
    return out;
}

}  // namespace detail

/// Repeatedly extracts the lexicographically-first completable length-k
/// increasing subsequence from the remaining positions until none exists.
/// Deterministic, so the family is reproducible.
inline DisjointFamily greedy_disjoint_family(std::span<const Value> seq, std::size_t k) {
    if (k == 0) throw std::invalid_argument("greedy_disjoint_family: k must be >= 1");
    DisjointFamily family;
    std::vector<Index> remaining(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) remaining[i] = static_cast<Index>(i);

    while (remaining.size() >= k) {
        auto lis_from = detail::lis_from_each(remaining, seq);
        if (*std::max_element(lis_from.begin(), lis_from.end()) < k) break;

        PatternWitness w;
        std::size_t start = 0;
        Value last_val = 0.0;
        bool have_last = false;
        std::vector<std::size_t> picked;  // positions into `remaining`
        for (std::size_t need = k; need > 0; --need) {
            std::size_t j = start;
            for (; j < remaining.size(); ++j) {
                if (lis_from[j] < need) continue;
                Value v = seq[static_cast<std::size_t>(remaining[j])];
                if (have_last && v <= last_val) continue;
                break;
            }
            if (j == remaining.size())
                throw std::logic_error("greedy_disjoint_family: completable chain vanished");
            picked.push_back(j);
            last_val = seq[static_cast<std::size_t>(remaining[j])];
            have_last = true;
            start = j + 1;
        }
        for (std::size_t j : picked) {
            w.indices.push_back(remaining[j]);
            w.values.push_back(seq[static_cast<std::size_t>(remaining[j])]);
        }
        family.tuples.push_back(std::move(w));
        for (std::size_t t = picked.size(); t-- > 0;)
            remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(picked[t]));
    }
    return family;
}

/// Minimum number of deletions that leave a sequence with no length-k
/// increasing subsequence (equivalently, one decomposable into k-1
/// non-increasing pieces).
///
/// Computed as n minus the largest union of k-1 non-increasing subsequences,
/// via row insertion truncated to k-1 rows on the position-reversed sequence.
inline std::size_t distance_to_free(std::span<const Value> seq, std::size_t k) {
    if (k < 2) throw std::invalid_argument("distance_to_free: k must be >= 2");
    const std::size_t rows_kept = k - 1;
    std::vector<std::vector<Value>> rows;
    for (std::size_t i = seq.size(); i-- > 0;) {
        Value cur = seq[i];
        for (std::size_t r = 0; r < rows_kept; ++r) {
            if (r == rows.size()) rows.emplace_back();
            auto& row = rows[r];
            auto it = std::upper_bound(row.begin(), row.end(), cur);
            if (it == row.end()) {
                row.push_back(cur);
                cur = std::numeric_limits<Value>::quiet_NaN();
                break;
            }
            std::swap(cur, *it);
        }
        // values bumped past the last kept row are discarded
    }
    std::size_t kept = 0;
    for (const auto& row : rows) kept += row.size();
    return seq.size() - kept;
}

}  // namespace monopat
