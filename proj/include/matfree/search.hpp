#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "matfree/matkernel.hpp"

namespace matfree {

enum class SearchMode { mat, mat2 };

struct SearchConfig {
    SearchMode mode = SearchMode::mat;
    std::uint64_t node_budget = 50'000'000;  // expanded states before giving up
    unsigned worker_count = 1;
    bool memoize = true;
    std::size_t memo_limit = 1u << 22;       // max memo entries per worker
    // Restrict the first block/step to these index sets (1-based), e.g. orbit
    // representatives when exhausting up to a known symmetry. The outcome
    // records that exhaustion is relative to this restriction.
    std::optional<std::vector<std::vector<int>>> first_blocks;
    std::uint64_t progress_every = 0;        // nodes between stderr progress lines, 0 = off
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t memo_hits = 0;
    double wall_ms = 0.0;
};

enum class SearchVerdict { certified, exhausted_none, budget_exceeded };

struct SearchOutcome {
    SearchVerdict verdict = SearchVerdict::exhausted_none;
    std::optional<MatCertificate> mat_certificate;
    std::optional<Mat2Certificate> mat2_certificate;
    SearchStats stats;
    bool restricted_first_block = false;
};

const char* verdict_name(SearchVerdict v);

// Unplaced hyperplanes whose defect against the placed sub-arrangement (given
// by 1-based indices) equals required. This is the branching set of the
// search: required = number of completed blocks in MAT mode, the targeted
// slot's exponent in MAT2 mode.
std::vector<int> defect_candidates(const Arrangement& a, const std::vector<int>& placed,
                                   long long required);

// Depth-first search for a MAT-partition. Deterministic for worker_count = 1:
// blocks are enumerated largest-first, then lexicographically by member
// indices, so the first certificate found is a canonical one. Memoization is
// keyed on the placed bitset; a free arrangement's exponents are intrinsic to
// it, so every search path reaching the same placed set carries the same
// exponent vector (this is asserted on every memo hit). Throws
// std::invalid_argument above 128 hyperplanes.
SearchOutcome search_mat(const Arrangement& a, const SearchConfig& cfg = {});

// Same driver over MAT2 steps: per depth it enumerates the slot-suffix start s
// (largest step first) and, for each run of equal exponent slots, index-sorted
// candidate subsets, so slot ties are canonicalized by ascending index.
SearchOutcome search_mat2(const Arrangement& a, const SearchConfig& cfg = {});

// Independent oracle for |A| <= 8: enumerates every ordered set partition
// (MAT) or every step sequence including all slot permutations (MAT2) and
// verifies each candidate with the matkernel verifier. No pruning, no
// memoization, no shared code with the search driver beyond the verifier
// itself.
SearchOutcome brute_force_oracle(const Arrangement& a, SearchMode mode);

}  // namespace matfree
