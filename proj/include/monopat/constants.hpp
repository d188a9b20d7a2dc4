#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace monopat {

/// Tunable constants of the randomized search. The iteration-count formulas
/// keep their stated shape; the budget fields bound how much of those
/// schedules a single invocation may actually spend, so worst-case work per
/// call stays proportional to log n at every recursion level. Found results
/// are always verified, so no budget setting can introduce a false positive.
struct AlgorithmConstants {
    // iteration multipliers
    double c1 = 4.0;
    double c2 = 6.0;

    // p = P(k * log2(1/eps)) with P(x) = (x + p_shift)^p_degree
    double p_shift = 2.0;
    double p_degree = 3.0;

    // Sample-Suffix: samples per scale = ceil(scale_multiplier / alpha_hat),
    // start repetitions = ceil(rep_multiplier * (alpha_hat/eps) * ln(3/delta))
    double suffix_scale_multiplier = 4.0;
    double suffix_rep_multiplier = 4.0;

    // The fitting branch calls the split search with eps/(c2*k^5) when set
    // (matching the k^5 density loss in the guarantee), plain eps/c2 otherwise.
    bool split_eps_uses_k5 = true;

    // hard execution budget; per-call limits scale with log2 of the relevant
    // interval length, and a factor of 0 removes that cap
    double query_budget_factor = 24000.0;  // top-level call
    double recursion_budget_factor = 128.0;  // each recursive search call
    double split_call_budget_factor = 768.0;  // each split-search invocation

    // fraction of the remaining budget granted to the suffix phase at every
    // level; 0 skips the phase, 1 grants everything that is left
    double suffix_budget_share = 0.25;

    double p(std::size_t k, double eps) const {
        double x = static_cast<double>(k) * std::log2(1.0 / eps);
        double v = std::pow(x + p_shift, p_degree);
        return v < 1.0 ? 1.0 : v;
    }

    void validate() const {
        if (c1 <= 0 || c2 <= 0 || p_degree < 0 || p_shift < 0 ||
            suffix_scale_multiplier <= 0 || suffix_rep_multiplier <= 0)
            throw std::invalid_argument("AlgorithmConstants: multipliers must be positive");
        if (query_budget_factor < 0 || suffix_budget_share < 0 || suffix_budget_share > 1 ||
            recursion_budget_factor < 0 || split_call_budget_factor < 0)
            throw std::invalid_argument("AlgorithmConstants: invalid budget settings");
    }
};

}  // namespace monopat
