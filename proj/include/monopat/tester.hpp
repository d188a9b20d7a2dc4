#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "monopat/constants.hpp"
#include "monopat/exact.hpp"
#include "monopat/rng.hpp"
#include "monopat/structure.hpp"
#include "monopat/view.hpp"

namespace monopat {

struct MalformedIntervals : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Result of one randomized search: a verified witness, or Fail, plus the
/// number of queries the call issued (including all recursive work).
struct RunOutcome {
    std::optional<PatternWitness> witness;
    std::uint64_t queries = 0;

    bool found() const { return witness.has_value(); }
};

/// A length-k increasing subsequence among explicit (index, value) points, if
/// one exists. Points must carry distinct indices; masked cells are the
/// caller's to exclude.
inline std::optional<PatternWitness> extract_increasing(
    std::vector<std::pair<Index, Value>> points, std::size_t k) {
    if (k == 0) throw std::invalid_argument("extract_increasing: k must be >= 1");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end(),
                             [](const auto& a, const auto& b) { return a.first == b.first; }),
                 points.end());
    std::vector<Value> vals;
    vals.reserve(points.size());
    for (const auto& p : points) vals.push_back(p.second);
    auto local = find_pattern_exact(vals, k);
    if (!local) return std::nullopt;
    PatternWitness w;
    for (Index pos : local->indices) {
        w.indices.push_back(points[static_cast<std::size_t>(pos)].first);
        w.values.push_back(points[static_cast<std::size_t>(pos)].second);
    }
    return w;
}

namespace detail {

constexpr std::uint64_t kNoLimit = ~std::uint64_t{0};

inline std::uint64_t count_from(double x) {
    if (!(x > 1.0)) return 1;
    if (x >= 4.0e18) return std::uint64_t{1} << 62;
    return static_cast<std::uint64_t>(std::ceil(x));
}

struct Ctx {
    const AlgorithmConstants* consts;
    std::uint64_t limit = kNoLimit;  // absolute cap on the view tree's tally
    std::size_t depth = 1;
    std::size_t k_root = 1;

    bool exhausted(const SequenceView& v) const { return v.tree_query_count() >= limit; }
};

inline std::uint64_t capped_limit(const SequenceView& v, const Ctx& parent, double factor,
                                  Index span) {
    if (factor <= 0) return parent.limit;
    double cap = factor * static_cast<double>(ceil_log2(std::max<Index>(span, 2)));
    std::uint64_t now = v.tree_query_count();
    std::uint64_t add = count_from(cap);
    std::uint64_t lim = now > kNoLimit - add ? kNoLimit : now + add;
    return std::min(lim, parent.limit);
}

inline Ctx root_ctx(const SequenceView& v, const AlgorithmConstants& consts, std::size_t k) {
    Ctx ctx;
    ctx.consts = &consts;
    ctx.k_root = k;
    if (consts.query_budget_factor > 0) {
        Ctx unlimited = ctx;
        unlimited.limit = kNoLimit;
        ctx.limit = capped_limit(v, unlimited, consts.query_budget_factor, v.size());
    }
    return ctx;
}

// Forward declaration; the three subroutines and the main search recurse into
// each other with strictly decreasing pattern length.
inline std::optional<PatternWitness> find_monotone_impl(const SequenceView& view, std::size_t k,
                                                        double eps, double delta, const Ctx& ctx,
                                                        Rng& rng);

inline void check_witness(const SequenceView& view, const PatternWitness& w, std::size_t k) {
    if (w.length() != k ||
        !verify_witness(view.base(), w, view.interval(), view.range()))
        throw std::logic_error("tester: produced witness failed verification");
}

inline std::optional<PatternWitness> sample_suffix_impl(const SequenceView& view, std::size_t k,
                                                        double eps, double delta, const Ctx& ctx,
                                                        Rng& rng) {
    if (view.size() < 2) return std::nullopt;
    const auto& iv = view.interval();
    const auto& c = *ctx.consts;
    int guesses = static_cast<int>(std::ceil(std::log2(1.0 / eps))) + 2;
    std::vector<std::pair<Index, Value>> points;
    for (int j = 0; j <= guesses; ++j) {
        double alpha_hat = std::ldexp(1.0, -j);
        std::uint64_t reps =
            count_from(c.suffix_rep_multiplier * (alpha_hat / eps) * std::log(3.0 / delta));
        std::uint64_t per_scale = count_from(c.suffix_scale_multiplier / alpha_hat);
        for (std::uint64_t rep = 0; rep < reps; ++rep) {
            if (ctx.exhausted(view)) return std::nullopt;
            Index start = rng.uniform_index({iv.lo, iv.hi - 1});
            points.clear();
            for (const auto& scale : suffix_scales(start - iv.lo, iv.size())) {
                IndexInterval s{scale.lo + iv.lo, scale.hi + iv.lo};
                for (std::uint64_t i = 0; i < per_scale; ++i) {
                    if (ctx.exhausted(view)) break;
                    Index q = rng.uniform_index(s);
                    if (auto v = view.query(q)) points.emplace_back(q, *v);
                }
                if (ctx.exhausted(view)) break;
            }
            if (auto w = extract_increasing(points, k)) {
                check_witness(view, *w, k);
                return w;
            }
        }
    }
    return std::nullopt;
}

inline std::optional<PatternWitness> find_within_interval_impl(
    const SequenceView& view, std::size_t k, double eps, double delta, Index x, Value vx,
    Index y, Value vy, const std::vector<IndexInterval>& intervals, const Ctx& ctx, Rng& rng) {
    std::vector<std::pair<Index, Value>> points{{x, vx}, {y, vy}};
    const auto& c = *ctx.consts;
    for (bool seek_below : {true, false}) {
        for (std::size_t kappa = 1; kappa + 1 < k; ++kappa) {
            if (ctx.exhausted(view)) break;
            const auto& j = intervals[kappa - 1];
            auto sub = view.try_restrict(
                j, seek_below ? ValueRange::below(vy) : ValueRange::at_least(vy));
            if (!sub) continue;
            Ctx child = ctx;
            child.limit = capped_limit(view, ctx, c.recursion_budget_factor, j.size());
            child.depth = ctx.depth + 1;
            std::size_t sub_k = seek_below ? kappa + 1 : k - kappa;
            auto r = find_monotone_impl(*sub, sub_k, eps / 2.0,
                                        delta / (2.0 * static_cast<double>(k)), child, rng);
            if (r)
                for (std::size_t i = 0; i < r->length(); ++i)
                    points.emplace_back(r->indices[i], r->values[i]);
        }
    }
    auto w = extract_increasing(points, k);
    if (w) check_witness(view, *w, k);
    return w;
}

inline std::optional<PatternWitness> find_good_split_impl(const SequenceView& view,
                                                          std::size_t k, double eps,
                                                          double delta, std::size_t c,
                                                          double xi, const Ctx& ctx, Rng& rng) {
    const auto& iv = view.interval();
    const auto& consts = *ctx.consts;
    std::uint64_t rounds = count_from(consts.c1 * static_cast<double>(k) / (eps * xi * xi) *
                                      std::log2(1.0 / delta));
    for (std::uint64_t it = 0; it < rounds; ++it) {
        if (ctx.exhausted(view)) break;
        Index w = rng.uniform_index(iv);
        Index z = rng.uniform_index(iv);
        auto vw = view.query(w);
        if (!vw) continue;
        std::optional<SequenceView> left;
        if (z > iv.lo) left = view.try_restrict({iv.lo, z - 1}, ValueRange::below(*vw));
        auto right = view.try_restrict({z, iv.hi}, ValueRange::at_least(*vw));
        if (!left || !right) continue;

        Ctx lctx = ctx;
        lctx.limit = capped_limit(view, ctx, consts.recursion_budget_factor, left->size());
        lctx.depth = ctx.depth + 1;
        auto rl = find_monotone_impl(*left, c, eps * xi / 3.0, delta / 3.0, lctx, rng);
        if (!rl) continue;
        Ctx rctx = ctx;
        rctx.limit = capped_limit(view, ctx, consts.recursion_budget_factor, right->size());
        rctx.depth = ctx.depth + 1;
        auto rr = find_monotone_impl(*right, k - c, eps * xi / 3.0, delta / 3.0, rctx, rng);
        if (!rr) continue;

        PatternWitness joined = *rl;
        joined.indices.insert(joined.indices.end(), rr->indices.begin(), rr->indices.end());
        joined.values.insert(joined.values.end(), rr->values.begin(), rr->values.end());
        check_witness(view, joined, k);
        return joined;
    }
    return std::nullopt;
}

inline std::optional<PatternWitness> find_monotone_impl(const SequenceView& view, std::size_t k,
                                                        double eps, double delta, const Ctx& ctx,
                                                        Rng& rng) {
    if (ctx.depth > ctx.k_root)
        throw std::logic_error("find_monotone: recursion depth exceeded pattern length");
    const auto& consts = *ctx.consts;
    const auto& iv = view.interval();
    double p = consts.p(k, eps);

    // Phase 1: growing-suffix search on a share of the remaining budget.
    if (consts.suffix_budget_share > 0) {
        Ctx sctx = ctx;
        if (ctx.limit != kNoLimit) {
            std::uint64_t now = view.tree_query_count();
            std::uint64_t rem = ctx.limit > now ? ctx.limit - now : 0;
            sctx.limit = now + static_cast<std::uint64_t>(
                                   consts.suffix_budget_share * static_cast<double>(rem));
        }
        if (auto w = sample_suffix_impl(view, k, eps / p, delta, sctx, rng)) return w;
    }

    // Phase 2: sample a start x and a candidate partner y at every scale.
    std::uint64_t iterations =
        count_from(consts.c1 * std::log2(1.0 / delta) * p *
                   std::pow(static_cast<double>(k), 5) / (eps * eps));
    for (std::uint64_t it = 0; it < iterations; ++it) {
        if (ctx.exhausted(view)) break;
        Index x = rng.uniform_index(iv);
        auto vx = view.query(x);
        if (!vx) continue;
        if (k == 1) {
            PatternWitness w{{x}, {*vx}};
            check_witness(view, w, k);
            return w;
        }

        struct Candidate {
            Index y;
            Value vy;
            int t;
        };
        std::optional<Candidate> best;
        for (int t = 1; t <= 62; ++t) {
            Index step = Index{1} << t;
            Index offset = (step + 12 * static_cast<Index>(k) - 1) / (12 * static_cast<Index>(k));
            Index lo_t = x + std::max<Index>(1, offset);
            if (lo_t > iv.hi) break;
            if (ctx.exhausted(view)) break;
            Index hi_t = std::min<Index>(iv.hi, x + step);
            Index y_t = rng.uniform_index({lo_t, hi_t});
            auto v = view.query(y_t);
            if (v && *v > *vx) {
                if (!best || y_t > best->y || (y_t == best->y && t > best->t))
                    best = Candidate{y_t, *v, t};
            }
        }
        if (!best) continue;
        if (k == 2) {
            PatternWitness w{{x, best->y}, {*vx, best->vy}};
            check_witness(view, w, k);
            return w;
        }

        // k >= 3: overshoot branch, then the fitting ladder.
        double ell = std::max(2.0, 4.0 * p / eps);
        double scale_reach = std::ldexp(1.0, best->t) / (12.0 * static_cast<double>(k));
        std::vector<IndexInterval> intervals;
        bool geometry_ok = true;
        for (std::size_t i = 1; i + 1 < k; ++i) {
            double lo_real = scale_reach * std::pow(ell, -static_cast<double>(k - 1 - i));
            double hi_real = scale_reach * std::pow(ell, -static_cast<double>(k - 2 - i));
            Index jlo = x + static_cast<Index>(std::ceil(lo_real));
            Index jhi = x + static_cast<Index>(std::ceil(hi_real)) - 1;
            if (jlo > jhi) {
                geometry_ok = false;
                break;
            }
            intervals.push_back({jlo, jhi});
        }
        if (geometry_ok && !ctx.exhausted(view)) {
            auto w = find_within_interval_impl(view, k, eps / (2.0 * p), delta / 2.0, x, *vx,
                                               best->y, best->vy, intervals, ctx, rng);
            if (w) return w;
        }

        double eps_split = consts.split_eps_uses_k5
                               ? eps / (consts.c2 * std::pow(static_cast<double>(k), 5))
                               : eps / consts.c2;
        int t_lo = std::max(
            0, best->t - static_cast<int>(std::ceil(3.0 * static_cast<double>(k) *
                                                    std::log2(ell))));
        for (int tp = t_lo; tp <= best->t; ++tp) {
            if (ctx.exhausted(view)) break;
            Index reach = Index{1} << tp;
            IndexInterval window{std::max<Index>(iv.lo, x - reach),
                                 std::min<Index>(iv.hi, x + reach)};
            auto g = view.try_restrict(window, ValueRange::all());
            if (!g) continue;
            for (std::size_t c0 = 1; c0 < k; ++c0) {
                if (ctx.exhausted(view)) break;
                Ctx sub = ctx;
                sub.limit =
                    capped_limit(view, ctx, consts.split_call_budget_factor, window.size());
                auto w = find_good_split_impl(*g, k, eps_split, delta / 2.0, c0, 0.25, sub, rng);
                if (w) return w;
            }
        }
    }
    return std::nullopt;
}

inline void validate_probability(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in (0,1)");
}

}  // namespace detail

/// Non-adaptive growing-suffix search: guesses the suffix density at every
/// power of two, samples starts and per-scale points accordingly, and pools
/// each start's queried points through the exact extractor.
inline RunOutcome sample_suffix(const SequenceView& view, std::size_t k, double eps,
                                double delta, const AlgorithmConstants& consts, Rng& rng) {
    if (k == 0) throw std::invalid_argument("sample_suffix: k must be >= 1");
    detail::validate_probability(eps, "eps");
    detail::validate_probability(delta, "delta");
    consts.validate();
    std::uint64_t start = view.query_count();
    auto ctx = detail::root_ctx(view, consts, k);
    auto w = detail::sample_suffix_impl(view, k, eps, delta, ctx, rng);
    return {std::move(w), view.query_count() - start};
}

/// Overshoot handler: for each of the k-2 intervals between x and y, search
/// below f(y) for one pattern length and at/above f(y) for the complementary
/// one, then assemble any length-k chain from everything found plus {x, y}.
inline RunOutcome find_within_interval(const SequenceView& view, std::size_t k, double eps,
                                       double delta, Index x, Index y,
                                       const std::vector<IndexInterval>& intervals,
                                       const AlgorithmConstants& consts, Rng& rng) {
    if (k < 2) throw std::invalid_argument("find_within_interval: k must be >= 2");
    detail::validate_probability(eps, "eps");
    detail::validate_probability(delta, "delta");
    consts.validate();
    if (intervals.size() != k - 2)
        throw MalformedIntervals("find_within_interval: expected k-2 intervals");
    if (!(x < y) || !view.interval().contains(x) || !view.interval().contains(y))
        throw MalformedIntervals("find_within_interval: x, y must satisfy x < y inside the view");
    Index prev = x - 1;
    for (const auto& j : intervals) {
        if (j.empty() || j.lo <= prev || j.hi > y)
            throw MalformedIntervals(
                "find_within_interval: intervals must be ordered, disjoint and within [x, y]");
        prev = j.hi;
    }
    std::uint64_t start = view.query_count();
    auto vx = view.query(x);
    auto vy = view.query(y);
    if (!vx || !vy || !(*vx < *vy))
        throw std::invalid_argument("find_within_interval: requires unmasked f(x) < f(y)");
    auto ctx = detail::root_ctx(view, consts, k);
    auto w = detail::find_within_interval_impl(view, k, eps, delta, x, *vx, y, *vy, intervals,
                                               ctx, rng);
    return {std::move(w), view.query_count() - start};
}

/// Fitting handler: repeatedly samples a cut position z and a pivot value
/// f(w), then searches left of z below the pivot for a length-c pattern and
/// right of z at/above it for the complement.
inline RunOutcome find_good_split(const SequenceView& view, std::size_t k, double eps,
                                  double delta, std::size_t c, double xi,
                                  const AlgorithmConstants& consts, Rng& rng) {
    if (k < 2) throw std::invalid_argument("find_good_split: k must be >= 2");
    if (c < 1 || c >= k) throw std::invalid_argument("find_good_split: need 1 <= c <= k-1");
    if (!(xi > 0.0 && xi <= 1.0)) throw std::invalid_argument("find_good_split: xi in (0,1]");
    detail::validate_probability(eps, "eps");
    detail::validate_probability(delta, "delta");
    consts.validate();
    std::uint64_t start = view.query_count();
    auto ctx = detail::root_ctx(view, consts, k);
    auto w = detail::find_good_split_impl(view, k, eps, delta, c, xi, ctx, rng);
    return {std::move(w), view.query_count() - start};
}

/// The main adaptive search. One-sided: a returned witness always verifies
/// against the view's interval and value range; on views with no length-k
/// increasing subsequence the outcome is Fail on every seed.
inline RunOutcome find_monotone(const SequenceView& view, std::size_t k, double eps,
                                double delta, const AlgorithmConstants& consts, Rng& rng) {
    if (k == 0) throw std::invalid_argument("find_monotone: k must be >= 1");
    detail::validate_probability(eps, "eps");
    detail::validate_probability(delta, "delta");
    consts.validate();
    std::uint64_t start = view.query_count();
    auto ctx = detail::root_ctx(view, consts, k);
    auto w = detail::find_monotone_impl(view, k, eps, delta, ctx, rng);
    return {std::move(w), view.query_count() - start};
}

}  // namespace monopat
