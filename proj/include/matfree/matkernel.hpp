#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "matfree/arrangement.hpp"

namespace matfree {

// One per-hyperplane defect check inside a step: the hyperplane (1-based
// arrangement index when produced by verify_*, 1-based block position from the
// raw check_* entry points), the value condition (3) demands, and the value
// actually computed.
struct DefectCheck {
    int index = 0;
    long long required = 0;
    long long value = 0;
};

// Outcome of checking one addition step (one MAT block or one MAT2 step)
// against a prefix arrangement. size_ok covers the shape constraints (q <= p
// for MAT, the s > t suffix constraint for MAT2); codim_ok is condition (1),
// avoid_ok condition (2), defect_ok condition (3). exponents_after is filled
// only when all four pass.
struct StepReport {
    int step = 0;
    std::vector<int> members;   // 1-based arrangement indices (empty from check_*)
    std::vector<int> slots;     // MAT2 only: slot per member, parallel to members
    int slot_start = 0;         // MAT2 only: s
    bool size_ok = false;
    bool codim_ok = false;
    bool avoid_ok = false;
    bool defect_ok = false;
    int blocking_prefix = 0;    // 1-based prefix index witnessing an avoidance failure
    std::vector<DefectCheck> defects;
    std::vector<int> exponents_after;

    bool passed() const { return size_ok && codim_ok && avoid_ok && defect_ok; }
    // Short name of the first failed condition, empty when passed.
    std::string failed_condition() const;
};

struct MatCertificate {
    std::string arrangement;                // path or catalog name, informational
    std::vector<std::vector<int>> blocks;   // 1-based indices
    std::vector<int> exponents;
    std::vector<StepReport> reports;
};

struct Mat2Step {
    int s = 0;                                    // first targeted slot
    std::vector<std::pair<int, int>> slotted;     // (1-based index, slot)
};

struct Mat2Certificate {
    std::string arrangement;
    std::vector<Mat2Step> steps;
    std::vector<int> exponents;
    std::vector<std::vector<int>> exponent_trace;  // exponents after each step
    std::vector<StepReport> reports;
};

using Certificate = std::variant<MatCertificate, Mat2Certificate>;

// |Aprime| - |restriction(Aprime, h)|. Throws std::invalid_argument when h is
// a member of Aprime.
long long defect(const Arrangement& aprime, const Hyperplane& h);

// Checks one MAT block against the prefix Aprime whose exponents are exps
// (ascending, length = dim; trusted, not re-derived). Structural misuse
// (member of Aprime, duplicate inside the block, empty block, malformed exps)
// throws std::invalid_argument; mathematical failures come back in the report.
StepReport check_mat_step(const Arrangement& aprime, const std::vector<int>& exps,
                          const std::vector<Hyperplane>& block);

// Checks one MAT2 step: hyperplanes assigned to the exponent slots s..dim.
// slotted entries are (hyperplane, slot); slots must cover s..dim exactly once.
StepReport check_mat2_step(const Arrangement& aprime, const std::vector<int>& exps, int s,
                           const std::vector<std::pair<Hyperplane, int>>& slotted);

// Dual-partition exponent formula: d_i = #{k : sizes[k] >= dim-i+1}, i=1..dim.
std::vector<int> exponents_from_partition(const std::vector<int>& block_sizes, unsigned dim);

struct MatVerification {
    bool ok = false;
    MatCertificate certificate;  // reports up to and including the failed step
    int failed_step = 0;         // 0 when ok
    std::string reason;
};

struct Mat2Verification {
    bool ok = false;
    Mat2Certificate certificate;
    int failed_step = 0;
    std::string reason;
};

// Runs check_mat_step cumulatively over the blocks (1-based indices into a).
// Throws std::invalid_argument when blocks do not partition {1..|A|} or
// contain an empty block.
MatVerification verify_mat_partition(const Arrangement& a,
                                     const std::vector<std::vector<int>>& blocks,
                                     const std::string& name = "");

// Cumulative check_mat2_step over the steps; same structural error contract,
// plus per-step slot-coverage validation.
Mat2Verification verify_mat2_sequence(const Arrangement& a, const std::vector<Mat2Step>& steps,
                                      const std::string& name = "");

enum class FilterStatus { pass, fail, inapplicable };

struct FilterResult {
    FilterStatus status = FilterStatus::inapplicable;
    std::vector<int> witnesses;        // 1-based indices with |A| - |A^H| = top exponent
    long long top_exponent = 0;
    std::vector<long long> drops;      // |A| - |A^H| per hyperplane, index order
};

// Necessary condition for MAT2-freeness: some H has |A| - |A^H| equal to the
// largest exponent. fail therefore disproves MAT2-freeness (and MAT-freeness).
// Inapplicable on the empty arrangement. exps must be ascending, length = dim,
// and sum to |A| (they claim to be the exponents of A).
FilterResult necessary_filter(const Arrangement& a, const std::vector<int>& exps);

// Tabulated facts about an arrangement whose defining forms are not available:
// counts, exponents, and the constant restriction size where known.
struct FactsRecord {
    std::string name;
    std::optional<long long> hyperplanes;
    std::optional<std::vector<int>> exponents;
    std::optional<long long> restriction_size;  // |A^H|, constant over H where recorded
    bool no_free_filtration = false;
    std::string note;
};

// Same filter on tabulated numbers. Throws std::invalid_argument when the
// record lacks hyperplane count, exponents, or restriction size.
bool necessary_filter_tabulated(const FactsRecord& f);

struct FiltrationEntry {
    int size = 0;
    int added_index = 0;          // 1-based hyperplane added at this size (0 for size 0)
    std::vector<int> exponents;   // ascending
};

// Single-hyperplane free filtration read off a certificate: blocks/steps in
// certificate order, members inside a MAT block by ascending index, inside a
// MAT2 step from the top slot down (each prefix stays ascending). The
// certificate is re-verified first; an invalid one throws
// std::invalid_argument.
std::vector<FiltrationEntry> free_filtration(const Arrangement& a, const MatCertificate& c);
std::vector<FiltrationEntry> free_filtration(const Arrangement& a, const Mat2Certificate& c);

// Treats every MAT block as one MAT2 step on the top slots and re-verifies.
Mat2Certificate mat_to_mat2(const Arrangement& a, const MatCertificate& c);

// Blockwise union of two MAT certificates on the product arrangement (block k
// = block k of c1, then block k of c2 shifted by |A1|; missing factors
// dropped). Re-verified before return; failure to re-verify is a logic error.
MatCertificate product_partition(const Arrangement& a1, const MatCertificate& c1,
                                 const Arrangement& a2, const MatCertificate& c2);

// Inverse direction: split a product certificate into certificates of the two
// factors by taking the non-empty factor parts of each block. Both results are
// re-verified.
std::pair<MatCertificate, MatCertificate> factor_partitions(const Arrangement& a1,
                                                            const Arrangement& a2,
                                                            const MatCertificate& cprod);

// JSON encoding of certificates (the on-disk format). Parsing validates field
// types and throws ParseError on malformed documents.
nlohmann::json certificate_to_json(const MatCertificate& c);
nlohmann::json certificate_to_json(const Mat2Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);

}  // namespace matfree
