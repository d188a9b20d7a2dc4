#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "monopat/exact.hpp"
#include "monopat/structure.hpp"
#include "monopat/view.hpp"

namespace monopat {

struct InfeasibleDensity : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class InstanceStyle {
    blocks,          // consecutive ascending k-runs, run bands descending left to right
    staircase,       // dyadic value bands, ascending within and across
    splittable,      // low-valued prefix runs on the left half, high-valued suffix runs right
    suffix,          // identity sequence; the canonical growing-suffix input
    free_interleave,  // k-1 descending runs, interleaved round-robin
    free_concat,      // k-1 descending runs, concatenated with ascending bands
};

inline const char* to_string(InstanceStyle s) {
    switch (s) {
        case InstanceStyle::blocks: return "blocks";
        case InstanceStyle::staircase: return "staircase";
        case InstanceStyle::splittable: return "splittable";
        case InstanceStyle::suffix: return "suffix";
        case InstanceStyle::free_interleave: return "free-interleave";
        case InstanceStyle::free_concat: return "free-concat";
    }
    return "?";
}

inline InstanceStyle style_from_string(const std::string& s) {
    for (auto style : {InstanceStyle::blocks, InstanceStyle::staircase,
                       InstanceStyle::splittable, InstanceStyle::suffix,
                       InstanceStyle::free_interleave, InstanceStyle::free_concat})
        if (s == to_string(style)) return style;
    throw std::invalid_argument("unknown instance style: " + s);
}

inline bool is_far_style(InstanceStyle s) {
    return s == InstanceStyle::blocks || s == InstanceStyle::staircase ||
           s == InstanceStyle::splittable || s == InstanceStyle::suffix;
}

struct InstanceSpec {
    InstanceStyle style = InstanceStyle::blocks;
    Index n = 0;
    std::size_t k = 2;
    double eps = 0.25;    // far styles only
    std::uint64_t seed = 0;
};

/// A generated sequence together with its certificate: for far styles an
/// explicit disjoint family of at least ceil(eps*n) length-k witnesses, for
/// free styles a cover by k-1 non-increasing pieces.
struct CertifiedInstance {
    std::vector<Value> values;
    DisjointFamily family;
    std::vector<std::vector<Index>> free_proof;

    bool is_far() const { return free_proof.empty(); }
};

namespace detail {

inline Index required_family(const InstanceSpec& spec) {
    return static_cast<Index>(
        std::ceil(spec.eps * static_cast<double>(spec.n)));
}

inline PatternWitness run_witness(const std::vector<Value>& values, Index first,
                                  std::size_t len) {
    PatternWitness w;
    for (std::size_t r = 0; r < len; ++r) {
        w.indices.push_back(first + static_cast<Index>(r));
        w.values.push_back(values[static_cast<std::size_t>(first) + r]);
    }
    return w;
}

inline CertifiedInstance gen_blocks(const InstanceSpec& spec) {
    const Index n = spec.n;
    const auto k = static_cast<Index>(spec.k);
    const Index full = n / k;
    CertifiedInstance out;
    out.values.resize(static_cast<std::size_t>(n));
    for (Index b = 0; b * k < n; ++b) {
        double band = static_cast<double>((full - 1 - b) * k);
        for (Index r = 0; r < k && b * k + r < n; ++r)
            out.values[static_cast<std::size_t>(b * k + r)] = band + static_cast<double>(r);
    }
    for (Index b = 0; b < full; ++b)
        out.family.tuples.push_back(run_witness(out.values, b * k, spec.k));
    return out;
}

inline CertifiedInstance gen_staircase(const InstanceSpec& spec) {
    const Index n = spec.n;
    CertifiedInstance out;
    out.values.resize(static_cast<std::size_t>(n));
    // band t covers [2^(t-1), 2^t); band 0 is index 0
    Index band_start = 0, band_end = 1, band = 0;
    for (Index i = 0; i < n; ++i) {
        if (i >= band_end) {
            band_start = band_end;
            band_end = band_start * 2;
            ++band;
        }
        out.values[static_cast<std::size_t>(i)] =
            static_cast<double>(band * n) + static_cast<double>(i - band_start);
    }
    const auto k = static_cast<Index>(spec.k);
    for (Index b = 0; (b + 1) * k <= n; ++b)
        out.family.tuples.push_back(run_witness(out.values, b * k, spec.k));
    return out;
}

inline CertifiedInstance gen_suffix(const InstanceSpec& spec) {
    CertifiedInstance out;
    out.values.resize(static_cast<std::size_t>(spec.n));
    for (Index i = 0; i < spec.n; ++i)
        out.values[static_cast<std::size_t>(i)] = static_cast<double>(i);
    const auto k = static_cast<Index>(spec.k);
    for (Index b = 0; (b + 1) * k <= spec.n; ++b)
        out.family.tuples.push_back(run_witness(out.values, b * k, spec.k));
    return out;
}

inline CertifiedInstance gen_splittable(const InstanceSpec& spec) {
    const Index n = spec.n;
    const std::size_t k = spec.k;
    const std::size_t c = k < 2 ? 1 : (k + 1) / 2;
    const auto prefix_len = static_cast<Index>(c);
    const auto suffix_len = static_cast<Index>(k - c);
    CertifiedInstance out;
    out.values.assign(static_cast<std::size_t>(n), 0.0);
    if (k == 1) return gen_blocks(spec);

    const Index half = n / 2;
    const Index left_runs = half / prefix_len;
    const Index right_runs = (n - half) / suffix_len;
    const double right_base = static_cast<double>(left_runs * prefix_len + n);
    double filler = -1.0;  // below every run value, descending

    for (Index i = 0; i < half; ++i) {
        Index run = i / prefix_len;
        Index pos = i % prefix_len;
        if (run < left_runs)
            out.values[static_cast<std::size_t>(i)] =
                static_cast<double>((left_runs - 1 - run) * prefix_len + pos);
        else
            out.values[static_cast<std::size_t>(i)] = filler--;
    }
    for (Index i = half; i < n; ++i) {
        Index run = (i - half) / suffix_len;
        Index pos = (i - half) % suffix_len;
        if (run < right_runs)
            out.values[static_cast<std::size_t>(i)] =
                right_base +
                static_cast<double>((right_runs - 1 - run) * suffix_len + pos);
        else
            out.values[static_cast<std::size_t>(i)] = filler--;
    }

    Index pairs = std::min(left_runs, right_runs);
    for (Index j = 0; j < pairs; ++j) {
        PatternWitness w = run_witness(out.values, j * prefix_len, c);
        PatternWitness tail = run_witness(out.values, half + j * suffix_len, k - c);
        w.indices.insert(w.indices.end(), tail.indices.begin(), tail.indices.end());
        w.values.insert(w.values.end(), tail.values.begin(), tail.values.end());
        out.family.tuples.push_back(std::move(w));
    }
    return out;
}

inline CertifiedInstance gen_free_concat(const InstanceSpec& spec) {
    const Index n = spec.n;
    const auto runs = static_cast<Index>(spec.k - 1);
    CertifiedInstance out;
    out.values.resize(static_cast<std::size_t>(n));
    out.free_proof.resize(static_cast<std::size_t>(runs));
    Index start = 0;
    for (Index r = 0; r < runs; ++r) {
        Index len = n / runs + (r < n % runs ? 1 : 0);
        for (Index pos = 0; pos < len; ++pos) {
            Index i = start + pos;
            out.values[static_cast<std::size_t>(i)] =
                static_cast<double>(r * n) + static_cast<double>(len - 1 - pos);
            out.free_proof[static_cast<std::size_t>(r)].push_back(i);
        }
        start += len;
    }
    return out;
}

inline CertifiedInstance gen_free_interleave(const InstanceSpec& spec) {
    const Index n = spec.n;
    const auto runs = static_cast<Index>(spec.k - 1);
    CertifiedInstance out;
    out.values.resize(static_cast<std::size_t>(n));
    out.free_proof.resize(static_cast<std::size_t>(runs));
    for (Index i = 0; i < n; ++i) {
        Index r = i % runs;
        out.values[static_cast<std::size_t>(i)] =
            static_cast<double>(r * n) + static_cast<double>(n - i);
        out.free_proof[static_cast<std::size_t>(r)].push_back(i);
    }
    return out;
}

inline void certify_far(const InstanceSpec& spec, const CertifiedInstance& inst) {
    Index needed = required_family(spec);
    if (static_cast<Index>(inst.family.size()) < needed)
        throw InfeasibleDensity(std::string("gen_far_instance: style ") +
                                to_string(spec.style) + " cannot certify " +
                                std::to_string(needed) + " disjoint tuples at n=" +
                                std::to_string(spec.n));
    IndexInterval whole{0, spec.n - 1};
    std::vector<Index> used;
    for (const auto& w : inst.family.tuples) {
        if (w.length() != spec.k ||
            !verify_witness(inst.values, w, whole, ValueRange::all()))
            throw std::logic_error("gen_far_instance: certificate tuple failed verification");
        used.insert(used.end(), w.indices.begin(), w.indices.end());
    }
    std::sort(used.begin(), used.end());
    if (std::adjacent_find(used.begin(), used.end()) != used.end())
        throw std::logic_error("gen_far_instance: certificate tuples overlap");
}

inline void certify_free(const InstanceSpec& spec, const CertifiedInstance& inst) {
    if (lis_length(inst.values) >= spec.k)
        throw std::logic_error("gen_free_instance: instance contains a length-k pattern");
    std::vector<bool> covered(static_cast<std::size_t>(spec.n), false);
    if (inst.free_proof.size() != spec.k - 1)
        throw std::logic_error("gen_free_instance: proof must have k-1 pieces");
    for (const auto& piece : inst.free_proof) {
        Index prev_idx = -1;
        Value prev_val = 0.0;
        for (Index i : piece) {
            if (i < 0 || i >= spec.n || covered[static_cast<std::size_t>(i)])
                throw std::logic_error("gen_free_instance: proof cover defect");
            Value v = inst.values[static_cast<std::size_t>(i)];
            if (prev_idx >= 0 && (i <= prev_idx || v > prev_val))
                throw std::logic_error("gen_free_instance: proof piece not non-increasing");
            covered[static_cast<std::size_t>(i)] = true;
            prev_idx = i;
            prev_val = v;
        }
    }
    for (bool b : covered)
        if (!b) throw std::logic_error("gen_free_instance: proof does not cover all indices");
}

}  // namespace detail

/// Deterministic eps-far instance with an explicit disjoint family of at
/// least ceil(eps*n) length-k witnesses, certified before return.
inline CertifiedInstance gen_far_instance(const InstanceSpec& spec) {
    if (!is_far_style(spec.style))
        throw std::invalid_argument("gen_far_instance: not a far style");
    if (spec.k < 1 || spec.n < static_cast<Index>(spec.k))
        throw std::invalid_argument("gen_far_instance: need n >= k >= 1");
    if (!(spec.eps > 0.0 && spec.eps <= 1.0))
        throw std::invalid_argument("gen_far_instance: eps must lie in (0,1]");
    if (detail::required_family(spec) * static_cast<Index>(spec.k) > spec.n)
        throw InfeasibleDensity("gen_far_instance: ceil(eps*n)*k exceeds n");
    CertifiedInstance inst;
    switch (spec.style) {
        case InstanceStyle::blocks: inst = detail::gen_blocks(spec); break;
        case InstanceStyle::staircase: inst = detail::gen_staircase(spec); break;
        case InstanceStyle::splittable: inst = detail::gen_splittable(spec); break;
        case InstanceStyle::suffix: inst = detail::gen_suffix(spec); break;
        default: break;
    }
    detail::certify_far(spec, inst);
    return inst;
}

/// Deterministic instance free of length-k increasing subsequences, with the
/// explicit (k-1)-piece non-increasing cover as proof, certified before return.
inline CertifiedInstance gen_free_instance(const InstanceSpec& spec) {
    if (is_far_style(spec.style))
        throw std::invalid_argument("gen_free_instance: not a free style");
    if (spec.k < 2) throw std::invalid_argument("gen_free_instance: k must be >= 2");
    if (spec.n < 1) throw std::invalid_argument("gen_free_instance: n must be >= 1");
    CertifiedInstance inst = spec.style == InstanceStyle::free_concat
                                 ? detail::gen_free_concat(spec)
                                 : detail::gen_free_interleave(spec);
    detail::certify_free(spec, inst);
    return inst;
}

}  // namespace monopat
