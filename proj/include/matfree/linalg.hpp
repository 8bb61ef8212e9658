#pragma once

#include <vector>

#include "matfree/cyclotomic.hpp"

namespace matfree {

using Covector = std::vector<CycloScalar>;

// Gauss-Jordan over the exact cyclotomic field. Rows are reduced to the
// canonical reduced row echelon form of their span (leading coefficient 1,
// zeros above and below every pivot, zero rows dropped), so two row sets span
// the same subspace iff the reduced rows compare equal. Returns the rank.
unsigned rref_in_place(std::vector<Covector>& rows);

// Reduces v against rows already in reduced echelon form and reports whether
// it lies in their span.
bool in_row_span(const std::vector<Covector>& rref_rows, Covector v);

}  // namespace matfree
