#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matfree/matkernel.hpp"

namespace matfree {

// One built-in catalog entry: either explicit defining forms (possibly with a
// known-good partition or step sequence attached) or a facts-only record for
// an arrangement whose coordinates are not tabulated here.
struct CatalogEntry {
    std::string name;
    bool is_facts = false;
    std::optional<Arrangement> arrangement;
    std::vector<std::vector<int>> mat_blocks;  // built-in MAT partition, empty if none
    std::vector<Mat2Step> mat2_steps;          // built-in MAT2 sequence, empty if none
    std::optional<FactsRecord> facts;
    std::string note;
};

// Arrangement of the imprimitive reflection group G(r,e,ℓ) over conductor r:
// the hyperplanes x_i = ζ^k x_j for 1 <= i < j <= ℓ, k = 1..r, preceded by
// the coordinate hyperplanes when e < r or r = 1. Pairs (i,j) run in
// lexicographic order with the r root-of-unity twists consecutive per pair.
// Throws std::invalid_argument unless e divides r and r, e, ℓ >= 1.
Arrangement monomial_arrangement(unsigned r, unsigned e, unsigned l);

// The standard partition certifying monomial_arrangement(r,1,ℓ) MAT-free:
// all ℓ coordinate hyperplanes first, then for i = 2..ℓ and each twist
// j = 1..r the block {x_{i-1} = ζ^j x_k | k = i..ℓ} of size ℓ-i+1.
// Verifying it yields exponents (1, r+1, 2r+1, ..., (ℓ-1)r+1).
std::vector<std::vector<int>> monomial_mat_partition(unsigned r, unsigned l);

// Looks up a built-in entry. Fixed names: H3, H4, G25, G26, ex-mat2-not-mat,
// ex-product-a2, E6, E7, E8, plus the facts-only names (see facts()).
// Families: A<n> (braid forms x_i - x_j in dimension n), B<n>
// (= monomial_arrangement(2,1,n) with its partition), D<n>
// (= monomial_arrangement(2,2,n)), and G(r,e,l) in that literal spelling.
// Throws std::invalid_argument for unknown names.
CatalogEntry named(const std::string& name);

// Tabulated invariants for arrangements kept without coordinates:
// G24, G27, G29, G31, G32, G33, G34. Throws std::invalid_argument otherwise.
FactsRecord facts(const std::string& name);

// The fixed entry names in stable listing order (families not enumerated).
std::vector<std::string> catalog_names();

}  // namespace matfree
