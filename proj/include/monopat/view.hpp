#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace monopat {

using Index = std::int64_t;
using Value = double;

/// A queried cell: either a real value or masked (outside the active value range).
/// Masked cells compare with nothing and never take part in a pattern.
using MaskedValue = std::optional<Value>;

struct IndexOutsideInterval : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct EmptyRestriction : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Closed interval of sequence positions, [lo, hi].
struct IndexInterval {
    Index lo = 0;
    Index hi = -1;

    constexpr bool empty() const { return hi < lo; }
    constexpr Index size() const { return empty() ? 0 : hi - lo + 1; }
    constexpr bool contains(Index i) const { return lo <= i && i <= hi; }
    constexpr bool contains(const IndexInterval& other) const {
        return other.empty() || (lo <= other.lo && other.hi <= hi);
    }
    constexpr bool operator==(const IndexInterval& other) const {
        return lo == other.lo && hi == other.hi;
    }

    constexpr IndexInterval clipped_to(const IndexInterval& outer) const {
        return {lo < outer.lo ? outer.lo : lo, hi > outer.hi ? outer.hi : hi};
    }
};

/// One-sided bound on values.
struct ValueBound {
    Value value = 0.0;
    bool inclusive = true;
};

/// Value window. Conventions follow strict pattern comparisons: a lower bound
/// defaults to inclusive ("f(i) >= v") and an upper bound to exclusive
/// ("f(i) < v"), so splitting a range at a pivot loses no values.
struct ValueRange {
    std::optional<ValueBound> lower;  // absent = unbounded below
    std::optional<ValueBound> upper;  // absent = unbounded above

    static ValueRange all() { return {}; }
    /// (-inf, v)
    static ValueRange below(Value v) { return {std::nullopt, ValueBound{v, false}}; }
    /// [v, +inf)
    static ValueRange at_least(Value v) { return {ValueBound{v, true}, std::nullopt}; }

    bool contains(Value v) const {
        if (lower && (lower->inclusive ? v < lower->value : v <= lower->value)) return false;
        if (upper && (upper->inclusive ? v > upper->value : v >= upper->value)) return false;
        return true;
    }

    /// Intersection of two ranges; nullopt when provably empty.
    std::optional<ValueRange> intersect(const ValueRange& other) const {
        ValueRange out = *this;
        if (other.lower) {
            if (!out.lower || other.lower->value > out.lower->value ||
                (other.lower->value == out.lower->value && !other.lower->inclusive))
                out.lower = other.lower;
        }
        if (other.upper) {
            if (!out.upper || other.upper->value < out.upper->value ||
                (other.upper->value == out.upper->value && !other.upper->inclusive))
                out.upper = other.upper;
        }
        if (out.lower && out.upper) {
            if (out.lower->value > out.upper->value) return std::nullopt;
            if (out.lower->value == out.upper->value &&
                !(out.lower->inclusive && out.upper->inclusive))
                return std::nullopt;
        }
        return out;
    }
};

/// Read-only query access to a value sequence, restricted to an index interval
/// and a value range, with a per-tree query tally.
///
/// Masking is carried as (interval, range) metadata: a query whose base value
/// falls outside `range` observes a masked cell. Restriction is O(1) and never
/// widens either component. All views derived from one top-level view share a
/// tally; query_count() reads the tally delta since the view was created, so a
/// parent's count covers its descendants. Distinct top-level views have
/// independent tallies.
class SequenceView {
  public:
    static SequenceView over(std::shared_ptr<const std::vector<Value>> base) {
        if (!base || base->empty())
            throw std::invalid_argument("SequenceView: base sequence must be non-empty");
        SequenceView v;
        v.base_ = std::move(base);
        v.interval_ = {0, static_cast<Index>(v.base_->size()) - 1};
        v.range_ = ValueRange::all();
        v.tally_ = std::make_shared<std::uint64_t>(0);
        v.birth_ = 0;
        return v;
    }

    static SequenceView over(std::vector<Value> values) {
        return over(std::make_shared<const std::vector<Value>>(std::move(values)));
    }

    MaskedValue query(Index i) const {
        if (!interval_.contains(i))
            throw IndexOutsideInterval("query: index " + std::to_string(i) +
                                       " outside view interval");
        ++*tally_;
        Value v = (*base_)[static_cast<std::size_t>(i)];
        if (!range_.contains(v)) return std::nullopt;
        return v;
    }

    /// Narrow the view. The new range is intersected with the current one; the
    /// returned view shares the tally but reports a fresh count of 0.
    SequenceView restrict(const IndexInterval& interval, const ValueRange& range) const {
        auto v = try_restrict(interval, range);
        if (!v) throw EmptyRestriction("restrict: empty interval or value range");
        return *std::move(v);
    }

    /// Like restrict, but signals a vacuous restriction as nullopt instead of
    /// throwing; callers inside recursions treat it as an immediate Fail.
    std::optional<SequenceView> try_restrict(const IndexInterval& interval,
                                             const ValueRange& range) const {
        if (!interval_.contains(interval))
            throw std::invalid_argument("restrict: interval not contained in view");
        if (interval.empty()) return std::nullopt;
        auto merged = range_.intersect(range);
        if (!merged) return std::nullopt;
        SequenceView v = *this;
        v.interval_ = interval;
        v.range_ = *std::move(merged);
        v.birth_ = *tally_;
        return v;
    }

    /// Queries issued through this view and everything derived from it since
    /// this view was created.
    std::uint64_t query_count() const { return *tally_ - birth_; }

    /// Absolute tally of the whole view tree (shared across derived views).
    std::uint64_t tree_query_count() const { return *tally_; }

    const IndexInterval& interval() const { return interval_; }
    const ValueRange& range() const { return range_; }
    Index size() const { return interval_.size(); }
    const std::vector<Value>& base() const { return *base_; }
    std::shared_ptr<const std::vector<Value>> base_ptr() const { return base_; }

  private:
    SequenceView() = default;

    std::shared_ptr<const std::vector<Value>> base_;
    IndexInterval interval_;
    ValueRange range_;
    std::shared_ptr<std::uint64_t> tally_;
    std::uint64_t birth_ = 0;
};

}  // namespace monopat
