#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "matfree/arrangement.hpp"
#include "matfree/catalog.hpp"
#include "matfree/matkernel.hpp"
#include "matfree/search.hpp"

using namespace matfree;

namespace {

Covector cv(std::vector<int> entries, unsigned conductor = 1) {
    Covector v;
    for (int e : entries) v.push_back(CycloScalar::integer(e, conductor));
    return v;
}

Arrangement random_arrangement(std::mt19937& rng, unsigned dim, int count) {
    std::uniform_int_distribution<int> coeff(-2, 2);
    Arrangement a(dim, 1);
    while ((int)a.size() < count) {
        std::vector<int> row(dim);
        for (auto& e : row) e = coeff(rng);
        if (std::all_of(row.begin(), row.end(), [](int e) { return e == 0; })) continue;
        Hyperplane h{cv(row)};
        if (a.index_of(h) < 0) a.add(h);
    }
    return a;
}

}  // namespace

TEST_CASE("verdict names") {
    CHECK(std::string(verdict_name(SearchVerdict::certified)) == "certified");
    CHECK(std::string(verdict_name(SearchVerdict::exhausted_none)) == "exhausted_none");
    CHECK(std::string(verdict_name(SearchVerdict::budget_exceeded)) == "budget_exceeded");
}

TEST_CASE("defect candidates agree with the defect function") {
    std::mt19937 rng(271);
    for (int trial = 0; trial < 25; ++trial) {
        Arrangement a = random_arrangement(rng, 3, 7);
        std::vector<int> placed;
        for (int i = 1; i <= 7; ++i)
            if (rng() % 3 == 0) placed.push_back(i);
        Arrangement prefix(3, 1);
        for (int i : placed) prefix.add(a[i - 1]);
        for (long long required = 0; required <= 3; ++required) {
            std::vector<int> got = defect_candidates(a, placed, required);
            std::vector<int> expected;
            for (int i = 1; i <= 7; ++i) {
                if (std::find(placed.begin(), placed.end(), i) != placed.end()) continue;
                if (defect(prefix, a[i - 1]) == required) expected.push_back(i);
            }
            CHECK(got == expected);
        }
    }
}

TEST_CASE("search certifies the rank-3 catalog entries") {
    CatalogEntry g25 = named("G25");
    SearchOutcome out = search_mat(*g25.arrangement, {});
    REQUIRE(out.verdict == SearchVerdict::certified);
    CHECK(out.mat_certificate->exponents == std::vector<int>{1, 4, 7});
    CHECK(!out.restricted_first_block);
    // The certificate stands on its own.
    CHECK(verify_mat_partition(*g25.arrangement, out.mat_certificate->blocks).ok);
}

TEST_CASE("the ten-line example separates mat from mat2") {
    CatalogEntry e = named("ex-mat2-not-mat");
    SearchOutcome mat = search_mat(*e.arrangement, {});
    CHECK(mat.verdict == SearchVerdict::exhausted_none);
    CHECK(!mat.mat_certificate);

    SearchOutcome mat2 = search_mat2(*e.arrangement, {});
    REQUIRE(mat2.verdict == SearchVerdict::certified);
    CHECK(mat2.mat2_certificate->exponents == std::vector<int>{1, 4, 5});
    CHECK(verify_mat2_sequence(*e.arrangement, mat2.mat2_certificate->steps).ok);
}

TEST_CASE("monomial G(3,3,3) admits no certificate in either mode") {
    Arrangement g = monomial_arrangement(3, 3, 3);
    SearchOutcome mat = search_mat(g, {});
    CHECK(mat.verdict == SearchVerdict::exhausted_none);
    SearchOutcome mat2 = search_mat2(g, {});
    CHECK(mat2.verdict == SearchVerdict::exhausted_none);
}

TEST_CASE("rank two arrangements are always certified") {
    std::mt19937 rng(88);
    for (int count = 2; count <= 6; ++count) {
        Arrangement a = random_arrangement(rng, 2, count);
        SearchOutcome mat = search_mat(a, {});
        CHECK(mat.verdict == SearchVerdict::certified);
        SearchOutcome mat2 = search_mat2(a, {});
        CHECK(mat2.verdict == SearchVerdict::certified);
        CHECK(mat.mat_certificate->exponents == mat2.mat2_certificate->exponents);
    }
}

TEST_CASE("single-worker search is deterministic") {
    CatalogEntry e = named("ex-product-a2");
    SearchOutcome first = search_mat(*e.arrangement, {});
    SearchOutcome second = search_mat(*e.arrangement, {});
    REQUIRE(first.verdict == SearchVerdict::certified);
    CHECK(first.stats.nodes == second.stats.nodes);
    CHECK(first.mat_certificate->blocks == second.mat_certificate->blocks);

    SearchConfig no_memo;
    no_memo.memoize = false;
    SearchOutcome third = search_mat(*e.arrangement, no_memo);
    CHECK(third.verdict == first.verdict);
    CHECK(third.mat_certificate->blocks == first.mat_certificate->blocks);
    CHECK(third.stats.memo_hits == 0);
}

TEST_CASE("memoization does not change exhaustion verdicts") {
    CatalogEntry e = named("ex-mat2-not-mat");
    SearchConfig no_memo;
    no_memo.memoize = false;
    CHECK(search_mat(*e.arrangement, no_memo).verdict == SearchVerdict::exhausted_none);
}

TEST_CASE("worker count does not change the verdict") {
    CatalogEntry e = named("ex-mat2-not-mat");
    SearchConfig four;
    four.worker_count = 4;
    CHECK(search_mat(*e.arrangement, four).verdict == SearchVerdict::exhausted_none);
    four.mode = SearchMode::mat2;
    SearchOutcome out = search_mat2(*e.arrangement, four);
    REQUIRE(out.verdict == SearchVerdict::certified);
    CHECK(verify_mat2_sequence(*e.arrangement, out.mat2_certificate->steps).ok);
    CHECK(out.mat2_certificate->exponents == std::vector<int>{1, 4, 5});
}

TEST_CASE("first-block restrictions are reported and honored") {
    CatalogEntry h3 = named("H3");
    SearchConfig cfg;
    cfg.first_blocks = std::vector<std::vector<int>>{{5, 12, 13}};  // concurrent triple
    SearchOutcome out = search_mat(*h3.arrangement, cfg);
    CHECK(out.verdict == SearchVerdict::exhausted_none);
    CHECK(out.restricted_first_block);

    cfg.first_blocks = std::vector<std::vector<int>>{{13, 14, 15}};
    SearchOutcome found = search_mat(*h3.arrangement, cfg);
    REQUIRE(found.verdict == SearchVerdict::certified);
    CHECK(found.restricted_first_block);
    std::vector<int> first = found.mat_certificate->blocks[0];
    std::sort(first.begin(), first.end());
    CHECK(first == std::vector<int>{13, 14, 15});
}

TEST_CASE("tiny budgets give up without a certificate") {
    CatalogEntry e = named("ex-mat2-not-mat");
    SearchConfig cfg;
    cfg.node_budget = 5;
    SearchOutcome out = search_mat(*e.arrangement, cfg);
    CHECK(out.verdict == SearchVerdict::budget_exceeded);
    CHECK(!out.mat_certificate);
    CHECK(out.stats.nodes <= 6);
}

TEST_CASE("oversized inputs are rejected up front") {
    Arrangement big(2, 1);
    for (int k = 0; k < 129; ++k) {
        Covector row{CycloScalar::integer(1), CycloScalar::integer(k)};
        big.add(Hyperplane{row});
    }
    CHECK_THROWS_AS(search_mat(big, {}), std::invalid_argument);
    CHECK_THROWS_AS(search_mat2(big, {}), std::invalid_argument);
}

TEST_CASE("search agrees with the brute-force oracle on a random corpus") {
    std::mt19937 rng(5150);
    std::uniform_int_distribution<int> dim_pick(2, 3), count_pick(2, 6);
    int mat_certified = 0, mat2_only = 0;
    for (int trial = 0; trial < 30; ++trial) {
        Arrangement a = random_arrangement(rng, dim_pick(rng), count_pick(rng));
        SearchOutcome fast = search_mat(a, {});
        SearchOutcome slow = brute_force_oracle(a, SearchMode::mat);
        REQUIRE(fast.verdict == slow.verdict);
        if (fast.verdict == SearchVerdict::certified) {
            ++mat_certified;
            CHECK(fast.mat_certificate->exponents == slow.mat_certificate->exponents);
        }

        SearchOutcome fast2 = search_mat2(a, {});
        SearchOutcome slow2 = brute_force_oracle(a, SearchMode::mat2);
        REQUIRE(fast2.verdict == slow2.verdict);
        if (fast2.verdict == SearchVerdict::certified &&
            fast.verdict != SearchVerdict::certified)
            ++mat2_only;
        if (fast.verdict == SearchVerdict::certified &&
            fast2.verdict == SearchVerdict::certified)
            CHECK(fast.mat_certificate->exponents == fast2.mat2_certificate->exponents);
        // MAT-freeness implies MAT2-freeness.
        if (fast.verdict == SearchVerdict::certified)
            CHECK(fast2.verdict == SearchVerdict::certified);
    }
    // The corpus must exercise both outcomes to mean anything.
    CHECK(mat_certified > 5);
}
