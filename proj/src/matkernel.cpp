#include "matfree/matkernel.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace matfree {

namespace {

void validate_exponents(const std::vector<int>& exps, unsigned dim, const char* who) {
    if (exps.size() != dim)
        throw std::invalid_argument(std::string(who) + ": exponent vector length != dim");
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] < 0)
            throw std::invalid_argument(std::string(who) + ": negative exponent");
        if (i && exps[i] < exps[i - 1])
            throw std::invalid_argument(std::string(who) + ": exponents not ascending");
    }
}

void validate_new_hyperplanes(const Arrangement& aprime, const std::vector<Hyperplane>& hs,
                              const char* who) {
    for (std::size_t i = 0; i < hs.size(); ++i) {
        if (hs[i].dim() != aprime.dim() || hs[i].conductor() != aprime.conductor())
            throw std::invalid_argument(std::string(who) + ": hyperplane outside ambient space");
        if (aprime.index_of(hs[i]))
            throw std::invalid_argument(std::string(who) + ": hyperplane already in the prefix");
        for (std::size_t j = i + 1; j < hs.size(); ++j)
            if (hs[i] == hs[j])
                throw std::invalid_argument(std::string(who) + ": duplicate hyperplane in step");
    }
}

// Shared conditions (1) and (2) plus the defect checks of condition (3).
void run_step_conditions(const Arrangement& aprime, const std::vector<Hyperplane>& hs,
                         const std::vector<long long>& required, StepReport& rep) {
    std::size_t q = hs.size();
    rep.codim_ok = rank(hs) == q;
    Subspace x = intersection_of(hs, aprime.dim(), aprime.conductor());
    rep.avoid_ok = true;
    for (std::size_t i = 0; i < aprime.size(); ++i) {
        if (subspace_in_hyperplane(x, aprime[i])) {
            rep.avoid_ok = false;
            rep.blocking_prefix = static_cast<int>(i) + 1;
            break;
        }
    }
    rep.defect_ok = true;
    for (std::size_t i = 0; i < q; ++i) {
        long long value = defect(aprime, hs[i]);
        rep.defects.push_back({static_cast<int>(i) + 1, required[i], value});
        if (value != required[i]) rep.defect_ok = false;
    }
}

}  // namespace

std::string StepReport::failed_condition() const {
    if (passed()) return "";
    if (!size_ok)
        return slots.empty() ? "block larger than the top-exponent multiplicity (q <= p)"
                             : "slot start does not clear the zero slots (s > t)";
    if (!codim_ok) return "(1) members are dependent (intersection codimension too small)";
    if (!avoid_ok)
        return "(2) intersection lies inside prefix hyperplane " + std::to_string(blocking_prefix);
    return "(3) defect mismatch";
}

long long defect(const Arrangement& aprime, const Hyperplane& h) {
    if (aprime.index_of(h))
        throw std::invalid_argument("defect: hyperplane is a member of the arrangement");
    return static_cast<long long>(aprime.size()) -
           static_cast<long long>(restriction(aprime, h).size());
}

StepReport check_mat_step(const Arrangement& aprime, const std::vector<int>& exps,
                          const std::vector<Hyperplane>& block) {
    validate_exponents(exps, aprime.dim(), "check_mat_step");
    if (block.empty()) throw std::invalid_argument("check_mat_step: empty block");
    validate_new_hyperplanes(aprime, block, "check_mat_step");

    StepReport rep;
    std::size_t q = block.size();
    int d = exps.back();
    std::size_t p = static_cast<std::size_t>(
        std::count(exps.begin(), exps.end(), d));
    rep.size_ok = q <= p;
    std::vector<long long> required(q, d);
    run_step_conditions(aprime, block, required, rep);
    if (rep.passed()) {
        rep.exponents_after = exps;
        for (std::size_t i = exps.size() - q; i < exps.size(); ++i) rep.exponents_after[i] = d + 1;
    }
    return rep;
}

StepReport check_mat2_step(const Arrangement& aprime, const std::vector<int>& exps, int s,
                           const std::vector<std::pair<Hyperplane, int>>& slotted) {
    unsigned dim = aprime.dim();
    validate_exponents(exps, dim, "check_mat2_step");
    if (slotted.empty()) throw std::invalid_argument("check_mat2_step: empty step");
    std::size_t q = slotted.size();
    if (s < 1 || static_cast<std::size_t>(s) + q - 1 != dim)
        throw std::invalid_argument("check_mat2_step: slots are not the suffix s..dim");
    std::vector<bool> seen(dim + 1, false);
    std::vector<Hyperplane> hs;
    hs.reserve(q);
    std::vector<long long> required;
    required.reserve(q);
    for (const auto& [h, slot] : slotted) {
        if (slot < s || static_cast<unsigned>(slot) > dim)
            throw std::invalid_argument("check_mat2_step: slot out of range");
        if (seen[static_cast<std::size_t>(slot)])
            throw std::invalid_argument("check_mat2_step: repeated slot");
        seen[static_cast<std::size_t>(slot)] = true;
        hs.push_back(h);
        required.push_back(exps[static_cast<std::size_t>(slot) - 1]);
    }
    validate_new_hyperplanes(aprime, hs, "check_mat2_step");

    StepReport rep;
    rep.slot_start = s;
    for (const auto& [h, slot] : slotted) rep.slots.push_back(slot);
    int t = 0;
    for (std::size_t i = 0; i < exps.size(); ++i)
        if (exps[i] != 0) {
            t = static_cast<int>(i) + 1;
            break;
        }
    rep.size_ok = s > t;
    run_step_conditions(aprime, hs, required, rep);
    if (rep.passed()) {
        rep.exponents_after = exps;
        for (unsigned j = static_cast<unsigned>(s); j <= dim; ++j) rep.exponents_after[j - 1] += 1;
    }
    return rep;
}

std::vector<int> exponents_from_partition(const std::vector<int>& block_sizes, unsigned dim) {
    for (int s : block_sizes)
        if (s < 1 || static_cast<unsigned>(s) > dim)
            throw std::invalid_argument("exponents_from_partition: block size out of 1..dim");
    std::vector<int> exps(dim, 0);
    for (unsigned i = 1; i <= dim; ++i) {
        int threshold = static_cast<int>(dim - i + 1);
        exps[i - 1] = static_cast<int>(
            std::count_if(block_sizes.begin(), block_sizes.end(),
                          [threshold](int s) { return s >= threshold; }));
    }
    return exps;
}

namespace {

// Checks that the given 1-based index groups partition {1..n}; returns a
// message describing the violation, empty when fine.
std::string partition_defect(const std::vector<std::vector<int>>& groups, std::size_t n,
                             bool allow_empty_group) {
    std::vector<char> used(n + 1, 0);
    std::size_t total = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].empty() && !allow_empty_group)
            return "block " + std::to_string(g + 1) + " is empty";
        for (int i : groups[g]) {
            if (i < 1 || static_cast<std::size_t>(i) > n)
                return "index " + std::to_string(i) + " out of 1.." + std::to_string(n);
            if (used[static_cast<std::size_t>(i)])
                return "index " + std::to_string(i) + " appears twice";
            used[static_cast<std::size_t>(i)] = 1;
            ++total;
        }
    }
    if (total != n) return "indices cover " + std::to_string(total) + " of " + std::to_string(n);
    return "";
}

}  // namespace

MatVerification verify_mat_partition(const Arrangement& a,
                                     const std::vector<std::vector<int>>& blocks,
                                     const std::string& name) {
    if (auto msg = partition_defect(blocks, a.size(), false); !msg.empty())
        throw std::invalid_argument("not a partition: " + msg);
    MatVerification out;
    out.certificate.arrangement = name;
    out.certificate.blocks = blocks;
    Arrangement prefix(a.dim(), a.conductor());
    std::vector<int> exps(a.dim(), 0);
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        std::vector<Hyperplane> block;
        block.reserve(blocks[k].size());
        for (int i : blocks[k]) block.push_back(a[static_cast<std::size_t>(i - 1)]);
        StepReport rep = check_mat_step(prefix, exps, block);
        rep.step = static_cast<int>(k) + 1;
        rep.members = blocks[k];
        for (std::size_t i = 0; i < rep.defects.size(); ++i)
            rep.defects[i].index = blocks[k][i];
        out.certificate.reports.push_back(rep);
        if (!rep.passed()) {
            out.failed_step = static_cast<int>(k) + 1;
            out.reason = rep.failed_condition();
            return out;
        }
        exps = rep.exponents_after;
        for (auto& h : block) prefix.add(std::move(h));
    }
    out.certificate.exponents = exps;
    std::vector<int> sizes;
    sizes.reserve(blocks.size());
    for (const auto& b : blocks) sizes.push_back(static_cast<int>(b.size()));
    if (exps != exponents_from_partition(sizes, a.dim()))
        throw std::logic_error("verified exponents disagree with the dual-partition formula");
    out.ok = true;
    return out;
}

Mat2Verification verify_mat2_sequence(const Arrangement& a, const std::vector<Mat2Step>& steps,
                                      const std::string& name) {
    std::vector<std::vector<int>> groups;
    groups.reserve(steps.size());
    for (const auto& st : steps) {
        groups.emplace_back();
        for (const auto& [i, slot] : st.slotted) groups.back().push_back(i);
    }
    if (auto msg = partition_defect(groups, a.size(), false); !msg.empty())
        throw std::invalid_argument("steps do not cover the arrangement: " + msg);
    Mat2Verification out;
    out.certificate.arrangement = name;
    out.certificate.steps = steps;
    Arrangement prefix(a.dim(), a.conductor());
    std::vector<int> exps(a.dim(), 0);
    for (std::size_t k = 0; k < steps.size(); ++k) {
        std::vector<std::pair<Hyperplane, int>> slotted;
        slotted.reserve(steps[k].slotted.size());
        for (const auto& [i, slot] : steps[k].slotted)
            slotted.emplace_back(a[static_cast<std::size_t>(i - 1)], slot);
        StepReport rep = check_mat2_step(prefix, exps, steps[k].s, slotted);
        rep.step = static_cast<int>(k) + 1;
        rep.members = groups[k];
        for (std::size_t i = 0; i < rep.defects.size(); ++i)
            rep.defects[i].index = groups[k][i];
        out.certificate.reports.push_back(rep);
        if (!rep.passed()) {
            out.failed_step = static_cast<int>(k) + 1;
            out.reason = rep.failed_condition();
            return out;
        }
        exps = rep.exponents_after;
        out.certificate.exponent_trace.push_back(exps);
        for (const auto& [h, slot] : slotted) prefix.add(h);
    }
    out.certificate.exponents = exps;
    out.ok = true;
    return out;
}

FilterResult necessary_filter(const Arrangement& a, const std::vector<int>& exps) {
    validate_exponents(exps, a.dim(), "necessary_filter");
    FilterResult res;
    if (a.size() == 0) {
        res.status = FilterStatus::inapplicable;
        return res;
    }
    long long sum = std::accumulate(exps.begin(), exps.end(), 0LL);
    if (sum != static_cast<long long>(a.size()))
        throw std::invalid_argument("necessary_filter: exponents sum to " + std::to_string(sum) +
                                    ", arrangement has " + std::to_string(a.size()) +
                                    " hyperplanes");
    res.top_exponent = exps.back();
    for (std::size_t i = 0; i < a.size(); ++i) {
        // restriction skips the hyperplane itself, so this is |A| - |A^H|.
        long long drop = static_cast<long long>(a.size()) -
                         static_cast<long long>(restriction(a, a[i]).size());
        res.drops.push_back(drop);
        if (drop == res.top_exponent) res.witnesses.push_back(static_cast<int>(i) + 1);
    }
    res.status = res.witnesses.empty() ? FilterStatus::fail : FilterStatus::pass;
    return res;
}

bool necessary_filter_tabulated(const FactsRecord& f) {
    std::string missing;
    if (!f.hyperplanes) missing += " hyperplane-count";
    if (!f.exponents || f.exponents->empty()) missing += " exponents";
    if (!f.restriction_size) missing += " restriction-size";
    if (!missing.empty())
        throw std::invalid_argument("facts record '" + f.name + "' lacks" + missing +
                                    "; the tabulated filter needs all three");
    return *f.hyperplanes - *f.restriction_size == f.exponents->back();
}

namespace {

std::vector<FiltrationEntry> filtration_from_additions(
    unsigned dim, const std::vector<std::pair<int, int>>& additions) {
    // additions: (1-based hyperplane index, 0-based exponent slot to bump).
    std::vector<FiltrationEntry> chain;
    std::vector<int> exps(dim, 0);
    chain.push_back({0, 0, exps});
    int size = 0;
    for (const auto& [index, slot] : additions) {
        exps[static_cast<std::size_t>(slot)] += 1;
        std::vector<int> sorted = exps;
        std::sort(sorted.begin(), sorted.end());
        chain.push_back({++size, index, sorted});
    }
    return chain;
}

}  // namespace

std::vector<FiltrationEntry> free_filtration(const Arrangement& a, const MatCertificate& c) {
    auto ver = verify_mat_partition(a, c.blocks, c.arrangement);
    if (!ver.ok)
        throw std::invalid_argument("invalid certificate: step " + std::to_string(ver.failed_step) +
                                    " fails " + ver.reason);
    std::vector<std::pair<int, int>> additions;
    std::vector<int> exps(a.dim(), 0);
    for (const auto& block : c.blocks) {
        // Within a block: ascending index; each member bumps the last remaining
        // copy of the block's base top exponent, keeping the vector ascending.
        int d = exps.back();
        std::vector<int> members = block;
        std::sort(members.begin(), members.end());
        for (int m : members) {
            int slot = -1;
            for (int j = static_cast<int>(a.dim()) - 1; j >= 0; --j)
                if (exps[static_cast<std::size_t>(j)] == d) {
                    slot = j;
                    break;
                }
            exps[static_cast<std::size_t>(slot)] = d + 1;
            additions.emplace_back(m, slot);
        }
    }
    return filtration_from_additions(a.dim(), additions);
}

std::vector<FiltrationEntry> free_filtration(const Arrangement& a, const Mat2Certificate& c) {
    auto ver = verify_mat2_sequence(a, c.steps, c.arrangement);
    if (!ver.ok)
        throw std::invalid_argument("invalid certificate: step " + std::to_string(ver.failed_step) +
                                    " fails " + ver.reason);
    std::vector<std::pair<int, int>> additions;
    for (const auto& st : c.steps) {
        // Top slot first: every prefix of the step keeps ascending exponents.
        auto slotted = st.slotted;
        std::sort(slotted.begin(), slotted.end(),
                  [](const auto& x, const auto& y) { return x.second > y.second; });
        for (const auto& [index, slot] : slotted) additions.emplace_back(index, slot - 1);
    }
    return filtration_from_additions(a.dim(), additions);
}

Mat2Certificate mat_to_mat2(const Arrangement& a, const MatCertificate& c) {
    auto ver = verify_mat_partition(a, c.blocks, c.arrangement);
    if (!ver.ok)
        throw std::invalid_argument("invalid certificate: step " + std::to_string(ver.failed_step) +
                                    " fails " + ver.reason);
    std::vector<Mat2Step> steps;
    steps.reserve(c.blocks.size());
    for (const auto& block : c.blocks) {
        Mat2Step st;
        st.s = static_cast<int>(a.dim()) - static_cast<int>(block.size()) + 1;
        std::vector<int> members = block;
        std::sort(members.begin(), members.end());
        int slot = st.s;
        for (int m : members) st.slotted.emplace_back(m, slot++);
        steps.push_back(std::move(st));
    }
    auto ver2 = verify_mat2_sequence(a, steps, c.arrangement);
    if (!ver2.ok)
        throw std::logic_error("block-to-step conversion failed re-verification at step " +
                               std::to_string(ver2.failed_step) + ": " + ver2.reason);
    return ver2.certificate;
}

MatCertificate product_partition(const Arrangement& a1, const MatCertificate& c1,
                                 const Arrangement& a2, const MatCertificate& c2) {
    auto v1 = verify_mat_partition(a1, c1.blocks, c1.arrangement);
    if (!v1.ok) throw std::invalid_argument("invalid certificate for the first factor");
    auto v2 = verify_mat_partition(a2, c2.blocks, c2.arrangement);
    if (!v2.ok) throw std::invalid_argument("invalid certificate for the second factor");
    Arrangement ap = product(a1, a2);
    int shift = static_cast<int>(a1.size());
    std::vector<std::vector<int>> blocks;
    std::size_t depth = std::max(c1.blocks.size(), c2.blocks.size());
    for (std::size_t k = 0; k < depth; ++k) {
        std::vector<int> block;
        if (k < c1.blocks.size())
            block.insert(block.end(), c1.blocks[k].begin(), c1.blocks[k].end());
        if (k < c2.blocks.size())
            for (int i : c2.blocks[k]) block.push_back(i + shift);
        blocks.push_back(std::move(block));
    }
    std::string name = (c1.arrangement.empty() ? "A1" : c1.arrangement) + " x " +
                       (c2.arrangement.empty() ? "A2" : c2.arrangement);
    auto ver = verify_mat_partition(ap, blocks, name);
    if (!ver.ok)
        throw std::logic_error("product certificate failed re-verification at step " +
                               std::to_string(ver.failed_step) + ": " + ver.reason);
    return ver.certificate;
}

std::pair<MatCertificate, MatCertificate> factor_partitions(const Arrangement& a1,
                                                            const Arrangement& a2,
                                                            const MatCertificate& cprod) {
    Arrangement ap = product(a1, a2);
    auto vp = verify_mat_partition(ap, cprod.blocks, cprod.arrangement);
    if (!vp.ok) throw std::invalid_argument("invalid certificate for the product");
    int n1 = static_cast<int>(a1.size());
    std::vector<std::vector<int>> b1, b2;
    for (const auto& block : cprod.blocks) {
        std::vector<int> p1, p2;
        for (int i : block)
            (i <= n1 ? p1 : p2).push_back(i <= n1 ? i : i - n1);
        if (!p1.empty()) b1.push_back(std::move(p1));
        if (!p2.empty()) b2.push_back(std::move(p2));
    }
    auto v1 = verify_mat_partition(a1, b1, "factor 1 of " + cprod.arrangement);
    if (!v1.ok)
        throw std::logic_error("first factor extraction failed re-verification at step " +
                               std::to_string(v1.failed_step) + ": " + v1.reason);
    auto v2 = verify_mat_partition(a2, b2, "factor 2 of " + cprod.arrangement);
    if (!v2.ok)
        throw std::logic_error("second factor extraction failed re-verification at step " +
                               std::to_string(v2.failed_step) + ": " + v2.reason);
    return {v1.certificate, v2.certificate};
}

namespace {

nlohmann::json report_to_json(const StepReport& r, bool mat2) {
    nlohmann::json j{{"step", r.step},
                     {"members", r.members},
                     {"size_ok", r.size_ok},
                     {"codim_ok", r.codim_ok},
                     {"avoid_ok", r.avoid_ok},
                     {"defect_ok", r.defect_ok},
                     {"exponents_after", r.exponents_after}};
    if (mat2) {
        j["slots"] = r.slots;
        j["slot_start"] = r.slot_start;
    }
    if (!r.avoid_ok) j["blocking_prefix"] = r.blocking_prefix;
    nlohmann::json defects = nlohmann::json::array();
    for (const auto& d : r.defects)
        defects.push_back({{"index", d.index}, {"required", d.required}, {"value", d.value}});
    j["defects"] = defects;
    return j;
}

}  // namespace

nlohmann::json certificate_to_json(const MatCertificate& c) {
    nlohmann::json j{{"kind", "mat"},
                     {"arrangement", c.arrangement},
                     {"blocks", c.blocks},
                     {"exponents", c.exponents}};
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& r : c.reports) reports.push_back(report_to_json(r, false));
    j["reports"] = reports;
    return j;
}

nlohmann::json certificate_to_json(const Mat2Certificate& c) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& st : c.steps) {
        nlohmann::json slotted = nlohmann::json::array();
        for (const auto& [i, slot] : st.slotted)
            slotted.push_back({{"index", i}, {"slot", slot}});
        steps.push_back({{"s", st.s}, {"slotted", slotted}});
    }
    nlohmann::json j{{"kind", "mat2"},
                     {"arrangement", c.arrangement},
                     {"steps", steps},
                     {"exponents", c.exponents},
                     {"exponent_trace", c.exponent_trace}};
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& r : c.reports) reports.push_back(report_to_json(r, true));
    j["reports"] = reports;
    return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
    auto bad = [](const std::string& why) -> ParseError {
        return ParseError("certificate: " + why);
    };
    if (!j.is_object()) throw bad("document is not an object");
    if (!j.contains("kind") || !j.at("kind").is_string()) throw bad("missing string field 'kind'");
    std::string kind = j.at("kind").get<std::string>();
    std::string arrangement =
        j.contains("arrangement") && j.at("arrangement").is_string()
            ? j.at("arrangement").get<std::string>()
            : "";
    auto int_array = [&bad](const nlohmann::json& v, const char* what) {
        if (!v.is_array()) throw bad(std::string(what) + " is not an array");
        std::vector<int> out;
        for (const auto& e : v) {
            if (!e.is_number_integer()) throw bad(std::string(what) + " holds a non-integer");
            out.push_back(e.get<int>());
        }
        return out;
    };
    if (kind == "mat") {
        MatCertificate c;
        c.arrangement = arrangement;
        if (!j.contains("blocks")) throw bad("mat certificate lacks 'blocks'");
        if (!j.at("blocks").is_array()) throw bad("'blocks' is not an array");
        for (const auto& b : j.at("blocks")) c.blocks.push_back(int_array(b, "block"));
        if (j.contains("exponents")) c.exponents = int_array(j.at("exponents"), "exponents");
        return c;
    }
    if (kind == "mat2") {
        Mat2Certificate c;
        c.arrangement = arrangement;
        if (!j.contains("steps")) throw bad("mat2 certificate lacks 'steps'");
        if (!j.at("steps").is_array()) throw bad("'steps' is not an array");
        for (const auto& s : j.at("steps")) {
            if (!s.is_object() || !s.contains("s") || !s.at("s").is_number_integer() ||
                !s.contains("slotted") || !s.at("slotted").is_array())
                throw bad("step needs integer 's' and array 'slotted'");
            Mat2Step st;
            st.s = s.at("s").get<int>();
            for (const auto& e : s.at("slotted")) {
                if (!e.is_object() || !e.contains("index") || !e.contains("slot") ||
                    !e.at("index").is_number_integer() || !e.at("slot").is_number_integer())
                    throw bad("slotted entry needs integer 'index' and 'slot'");
                st.slotted.emplace_back(e.at("index").get<int>(), e.at("slot").get<int>());
            }
            c.steps.push_back(std::move(st));
        }
        if (j.contains("exponents")) c.exponents = int_array(j.at("exponents"), "exponents");
        return c;
    }
    throw bad("unknown kind '" + kind + "' (expected \"mat\" or \"mat2\")");
}

}  // namespace matfree
