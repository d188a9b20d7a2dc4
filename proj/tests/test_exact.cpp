#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <monopat/exact.hpp>
#include <monopat/rng.hpp>

#include "oracles.hpp"

using namespace monopat;

namespace {

std::vector<Value> random_values(Rng& rng, std::size_t n, std::uint64_t alphabet) {
    std::vector<Value> out(n);
    for (auto& v : out) v = static_cast<double>(rng.uniform_u64(alphabet));
    return out;
}

}  // namespace

TEST_CASE("lis_length basics") {
    CHECK(lis_length(std::vector<Value>{1, 2, 3}) == 3);
    CHECK(lis_length(std::vector<Value>{3, 2, 1}) == 1);
    CHECK(lis_length(std::vector<Value>{}) == 0);
    CHECK(lis_length(std::vector<Value>{2, 5, 1, 6, 3, 7}) == 4);
    // ties never chain
    CHECK(lis_length(std::vector<Value>{2, 2, 2}) == 1);
    CHECK(lis_length(std::vector<Value>{1, 1, 2}) == 2);
}

TEST_CASE("lis_length agrees with subset enumeration and quadratic DP") {
    Rng rng(11);
    for (int round = 0; round < 300; ++round) {
        auto vals = random_values(rng, 1 + rng.uniform_u64(11), 1 + rng.uniform_u64(8));
        auto got = lis_length(vals);
        CHECK(got == oracle::dp_lis(vals));
        if (vals.size() <= 10) CHECK(got == oracle::subset_lis(vals));
    }
}

TEST_CASE("find_pattern_exact basics") {
    CHECK(!find_pattern_exact(std::vector<Value>{3, 2, 1}, 2).has_value());
    auto w = find_pattern_exact(std::vector<Value>{1, 2}, 2);
    REQUIRE(w.has_value());
    CHECK(w->indices == std::vector<Index>{0, 1});
    CHECK_THROWS_AS(find_pattern_exact(std::vector<Value>{1}, 0), std::invalid_argument);
}

TEST_CASE("find_pattern_exact presence matches brute force, witnesses verify") {
    Rng rng(13);
    for (int round = 0; round < 300; ++round) {
        auto vals = random_values(rng, 10, 1 + rng.uniform_u64(10));
        std::size_t k = 1 + rng.uniform_u64(4);
        auto w = find_pattern_exact(vals, k);
        bool present = oracle::dp_lis(vals) >= k;
        CHECK(w.has_value() == present);
        if (w) {
            CHECK(w->length() == k);
            CHECK(verify_witness(vals, *w, {0, static_cast<Index>(vals.size()) - 1},
                                 ValueRange::all()));
        }
    }
}

TEST_CASE("verify_witness rejects structural defects") {
    std::vector<Value> seq{1, 2, 3};
    CHECK(verify_witness(seq, PatternWitness{{0, 1, 2}, {}}, {0, 2}, ValueRange::all()));
    CHECK(!verify_witness(seq, PatternWitness{{0, 0, 1}, {}}, {0, 2}, ValueRange::all()));
    CHECK(!verify_witness(seq, PatternWitness{{}, {}}, {0, 2}, ValueRange::all()));
    std::vector<Value> seq2{5, 1, 6};
    CHECK(!verify_witness(seq2, PatternWitness{{0, 2}, {}}, {0, 2}, ValueRange::at_least(6)));
    CHECK(!verify_witness(seq, PatternWitness{{0, 1}, {}}, {1, 2}, ValueRange::all()));
    CHECK(!verify_witness(seq, PatternWitness{{0, 5}, {}}, {0, 2}, ValueRange::all()));
}

TEST_CASE("greedy_disjoint_family frozen examples") {
    auto f1 = greedy_disjoint_family(std::vector<Value>{1, 2, 3, 4}, 2);
    CHECK(f1.size() == 2);  // brute-force maximum is 2
    CHECK(greedy_disjoint_family(std::vector<Value>{3, 2, 1}, 2).size() == 0);
    auto f3 = greedy_disjoint_family(std::vector<Value>{1, 3, 2, 4}, 2);
    CHECK(f3.size() == 2);  // brute-force maximum is 2
}

TEST_CASE("greedy family is valid, disjoint, maximal and deterministic") {
    Rng rng(17);
    for (int round = 0; round < 200; ++round) {
        auto vals = random_values(rng, 2 + rng.uniform_u64(11), 1 + rng.uniform_u64(9));
        std::size_t k = 2 + rng.uniform_u64(2);
        auto fam = greedy_disjoint_family(vals, k);
        std::vector<bool> used(vals.size(), false);
        for (const auto& w : fam.tuples) {
            CHECK(w.length() == k);
            CHECK(verify_witness(vals, w, {0, static_cast<Index>(vals.size()) - 1},
                                 ValueRange::all()));
            for (Index i : w.indices) {
                CHECK(!used[static_cast<std::size_t>(i)]);
                used[static_cast<std::size_t>(i)] = true;
            }
        }
        // maximal: the leftover indices hold no further k-pattern
        std::vector<Value> rest;
        for (std::size_t i = 0; i < vals.size(); ++i)
            if (!used[i]) rest.push_back(vals[i]);
        CHECK(oracle::dp_lis(rest) < k);
        // deterministic
        auto again = greedy_disjoint_family(vals, k);
        REQUIRE(again.size() == fam.size());
        for (std::size_t i = 0; i < fam.size(); ++i)
            CHECK(again.tuples[i].indices == fam.tuples[i].indices);
    }
}

TEST_CASE("distance_to_free frozen examples") {
    CHECK(distance_to_free(std::vector<Value>{1, 2, 3}, 3) == 1);
    CHECK(distance_to_free(std::vector<Value>{9, 7, 7, 2}, 2) == 0);
    CHECK(distance_to_free(std::vector<Value>{9, 7, 7, 2}, 4) == 0);
    CHECK(distance_to_free(std::vector<Value>{1, 2, 3, 4, 5, 6}, 3) == 4);
    CHECK_THROWS_AS(distance_to_free(std::vector<Value>{1, 2}, 1), std::invalid_argument);
}

TEST_CASE("distance_to_free matches exhaustive subset search up to n = 12") {
    Rng rng(19);
    for (int round = 0; round < 250; ++round) {
        auto vals = random_values(rng, 1 + rng.uniform_u64(12), 1 + rng.uniform_u64(9));
        for (std::size_t k : {2, 3}) {
            CHECK(distance_to_free(vals, k) == oracle::min_deletions_to_free(vals, k));
        }
    }
}

TEST_CASE("greedy bound: family size at least distance/k") {
    Rng rng(23);
    for (int round = 0; round < 150; ++round) {
        auto vals = random_values(rng, 4 + rng.uniform_u64(61), 1 + rng.uniform_u64(40));
        std::size_t k = 2 + rng.uniform_u64(3);
        auto dist = distance_to_free(vals, k);
        auto fam = greedy_disjoint_family(vals, k);
        CHECK(fam.size() * k >= dist);
    }
}

TEST_CASE("greedy family matches brute-force packing on small inputs") {
    Rng rng(29);
    for (int round = 0; round < 60; ++round) {
        auto vals = random_values(rng, 4 + rng.uniform_u64(7), 1 + rng.uniform_u64(6));
        std::size_t k = 2 + rng.uniform_u64(2);
        auto fam = greedy_disjoint_family(vals, k);
        // greedy is maximal, not necessarily maximum: every optimal tuple must
        // touch one of the k*|fam| indices greedy used
        auto best = oracle::max_disjoint_family(vals, k);
        CHECK(fam.size() <= best);
        CHECK(best <= k * fam.size());
        if (best > 0) CHECK(fam.size() > 0);
    }
}
