#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include <json.hpp>

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

Arrangement braid(unsigned n) {
    Arrangement a(n, 1);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) {
            std::vector<int> row(n, 0);
            row[i] = 1;
            row[j] = -1;
            a.add(Hyperplane(cv(row)));
        }
    return a;
}

}  // namespace

TEST_CASE("defect counts lost hyperplanes under restriction") {
    Arrangement two(2, 1);
    two.add(Hyperplane{cv({1, 0})});
    two.add(Hyperplane{cv({0, 1})});
    Hyperplane diag{cv({1, 1})};
    // Both hyperplanes meet the diagonal in the origin: one flat survives.
    CHECK(defect(two, diag) == 1);

    Arrangement empty(2, 1);
    CHECK(defect(empty, diag) == 0);
    CHECK_THROWS_AS(defect(two, two[0]), std::invalid_argument);
}

TEST_CASE("dual partition exponent formula") {
    CHECK(exponents_from_partition({3, 2, 2, 2, 1}, 3) == std::vector<int>{1, 4, 5});
    CHECK(exponents_from_partition({3, 2, 2, 2, 2, 1, 1, 1, 1}, 3) ==
          std::vector<int>{1, 5, 9});
    CHECK(exponents_from_partition({2, 1}, 3) == std::vector<int>{0, 1, 2});
    CHECK(exponents_from_partition({}, 4) == std::vector<int>{0, 0, 0, 0});

    // Cross-check against the counting definition on random size vectors.
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> count(0, 9);
    for (int trial = 0; trial < 50; ++trial) {
        unsigned dim = 1 + trial % 6;
        std::uniform_int_distribution<int> size(1, (int)dim);
        std::vector<int> sizes(count(rng));
        for (auto& s : sizes) s = size(rng);
        std::vector<int> got = exponents_from_partition(sizes, dim);
        REQUIRE(got.size() == dim);
        for (unsigned i = 1; i <= dim; ++i) {
            int expected = 0;
            for (int s : sizes)
                if (s >= (int)(dim - i + 1)) ++expected;
            CHECK(got[i - 1] == expected);
        }
    }
}

TEST_CASE("single step checks on the braid of rank two") {
    Arrangement a = braid(3);
    Arrangement empty(3, 1);
    std::vector<int> zero{0, 0, 0};

    StepReport ok = check_mat_step(empty, zero, {a[0], a[1]});
    CHECK(ok.passed());
    CHECK(ok.exponents_after == std::vector<int>{0, 1, 1});

    // All three share the diagonal, so rank 2 < 3 kills condition (1).
    StepReport flat = check_mat_step(empty, zero, {a[0], a[1], a[2]});
    CHECK(!flat.passed());
    CHECK(!flat.codim_ok);
    CHECK(flat.failed_condition() != "");

    // x2-x3 meets x1-x2 inside the prefix union: condition (2).
    Arrangement prefix = a.select({0, 1});
    StepReport blocked = check_mat_step(prefix, {0, 1, 1}, {a[2]});
    CHECK(blocked.passed());  // single extra hyperplane through the diagonal is fine
    CHECK(blocked.exponents_after == std::vector<int>{0, 1, 2});

    CHECK_THROWS_AS(check_mat_step(prefix, {0, 1, 1}, {a[0]}), std::invalid_argument);
    CHECK_THROWS_AS(check_mat_step(empty, zero, {}), std::invalid_argument);
    CHECK_THROWS_AS(check_mat_step(empty, {0, 0}, {a[0]}), std::invalid_argument);
    CHECK_THROWS_AS(check_mat_step(empty, zero, {a[0], a[0]}), std::invalid_argument);
}

TEST_CASE("mat2 steps respect the slot suffix rule") {
    Arrangement a = braid(3);
    Arrangement empty(3, 1);
    std::vector<int> zero{0, 0, 0};

    StepReport ok = check_mat2_step(empty, zero, 2, {{a[0], 2}, {a[2], 3}});
    CHECK(ok.passed());
    CHECK(ok.exponents_after == std::vector<int>{0, 1, 1});

    // t = 2 once slot 2 holds a nonzero exponent; a step at s = 2 now breaks
    // the suffix rule.
    Arrangement prefix = a.select({0, 2});
    StepReport low = check_mat2_step(prefix, {0, 1, 1}, 2, {{a[1], 2}, {Hyperplane{cv({1, 1, -2})}, 3}});
    CHECK(!low.passed());
    CHECK(!low.size_ok);

    StepReport high = check_mat2_step(prefix, {0, 1, 1}, 3, {{a[1], 3}});
    CHECK(high.passed());
    CHECK(high.exponents_after == std::vector<int>{0, 1, 2});

    CHECK_THROWS_AS(check_mat2_step(empty, zero, 2, {{a[0], 2}, {a[1], 2}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_mat2_step(empty, zero, 2, {{a[0], 3}}), std::invalid_argument);
    CHECK_THROWS_AS(check_mat2_step(empty, zero, 0, {{a[0], 1}}), std::invalid_argument);
}

TEST_CASE("partition verification is invariant under within-block shuffles") {
    Arrangement a = braid(4);
    SearchOutcome found = search_mat(a, {});
    REQUIRE(found.verdict == SearchVerdict::certified);
    const MatCertificate& cert = *found.mat_certificate;
    MatVerification base = verify_mat_partition(a, cert.blocks);
    REQUIRE(base.ok);
    CHECK(base.certificate.exponents == std::vector<int>{0, 1, 2, 3});
    for (const auto& r : base.certificate.reports) CHECK(r.passed());
    CHECK(base.certificate.reports.back().exponents_after == base.certificate.exponents);

    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        auto blocks = cert.blocks;
        for (auto& blk : blocks) std::shuffle(blk.begin(), blk.end(), rng);
        MatVerification v = verify_mat_partition(a, blocks);
        CHECK(v.ok);
        CHECK(v.certificate.exponents == base.certificate.exponents);
    }
}

TEST_CASE("partition verification rejects structural garbage") {
    Arrangement a = braid(3);
    CHECK_THROWS_AS(verify_mat_partition(a, {{1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(verify_mat_partition(a, {{1, 2}, {2, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(verify_mat_partition(a, {{1, 2, 3}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(verify_mat_partition(a, {{1, 2}, {4}}), std::invalid_argument);

    // Mathematically wrong but structurally fine: failure report, no throw.
    MatVerification v = verify_mat_partition(a, {{1, 2, 3}});
    CHECK(!v.ok);
    CHECK(v.failed_step == 1);
    CHECK(!v.certificate.reports.empty());
    CHECK(!v.certificate.reports.back().codim_ok);
    CHECK(v.reason != "");
}

TEST_CASE("necessary filter on computed drops") {
    Arrangement b4 = braid(4);
    FilterResult r = necessary_filter(b4, {0, 1, 2, 3});
    CHECK(r.status == FilterStatus::pass);
    CHECK(r.top_exponent == 3);
    CHECK(r.drops == std::vector<long long>(6, 3));
    CHECK(r.witnesses.size() == 6);

    // G(3,3,3): every drop is 5 but the top exponent is 4.
    Arrangement g333 = monomial_arrangement(3, 3, 3);
    FilterResult f = necessary_filter(g333, {1, 4, 4});
    CHECK(f.status == FilterStatus::fail);
    CHECK(f.witnesses.empty());
    CHECK(f.drops == std::vector<long long>(9, 5));

    CHECK(necessary_filter(Arrangement(3, 1), {0, 0, 0}).status ==
          FilterStatus::inapplicable);
    CHECK_THROWS_AS(necessary_filter(b4, {3, 2, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(necessary_filter(b4, {0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(necessary_filter(b4, {0, 1, 2, 4}), std::invalid_argument);
}

TEST_CASE("necessary filter on tabulated records") {
    FactsRecord g24{"G24", 21, std::vector<int>{1, 9, 11}, 8, false, ""};
    CHECK(!necessary_filter_tabulated(g24));

    FactsRecord passing{"toy", 7, std::vector<int>{1, 3, 3}, 4, false, ""};
    CHECK(necessary_filter_tabulated(passing));

    FactsRecord incomplete{"G29", std::nullopt, std::vector<int>{1, 13, 17, 29}, std::nullopt,
                           false, ""};
    CHECK_THROWS_AS(necessary_filter_tabulated(incomplete), std::invalid_argument);
}

TEST_CASE("certificates round-trip through json") {
    Arrangement a = braid(4);
    SearchOutcome mat = search_mat(a, {});
    REQUIRE(mat.verdict == SearchVerdict::certified);
    // Parsing keeps the claim (kind, arrangement, blocks/steps, exponents) and
    // drops the derived reports; verification regenerates those.
    nlohmann::json j1 = certificate_to_json(*mat.mat_certificate);
    Certificate back = certificate_from_json(j1);
    REQUIRE(std::holds_alternative<MatCertificate>(back));
    const MatCertificate& m = std::get<MatCertificate>(back);
    CHECK(m.blocks == mat.mat_certificate->blocks);
    CHECK(m.exponents == mat.mat_certificate->exponents);
    CHECK(m.arrangement == mat.mat_certificate->arrangement);
    nlohmann::json stripped = certificate_to_json(m);
    CHECK(certificate_to_json(std::get<MatCertificate>(certificate_from_json(stripped))) ==
          stripped);

    SearchOutcome mat2 = search_mat2(a, {});
    REQUIRE(mat2.verdict == SearchVerdict::certified);
    nlohmann::json j2 = certificate_to_json(*mat2.mat2_certificate);
    Certificate back2 = certificate_from_json(j2);
    REQUIRE(std::holds_alternative<Mat2Certificate>(back2));
    const Mat2Certificate& m2 = std::get<Mat2Certificate>(back2);
    REQUIRE(m2.steps.size() == mat2.mat2_certificate->steps.size());
    for (std::size_t i = 0; i < m2.steps.size(); ++i) {
        CHECK(m2.steps[i].s == mat2.mat2_certificate->steps[i].s);
        CHECK(m2.steps[i].slotted == mat2.mat2_certificate->steps[i].slotted);
    }
    CHECK(m2.exponents == mat2.mat2_certificate->exponents);
    nlohmann::json stripped2 = certificate_to_json(m2);
    CHECK(certificate_to_json(std::get<Mat2Certificate>(certificate_from_json(stripped2))) ==
          stripped2);

    CHECK_THROWS_AS(certificate_from_json(nlohmann::json{{"kind", "nope"}}), ParseError);
    nlohmann::json bad = j1;
    bad["blocks"] = "not-a-list";
    CHECK_THROWS_AS(certificate_from_json(bad), ParseError);
    nlohmann::json bad2 = j2;
    bad2["steps"][0]["slotted"][0] = {{"index", 1}};  // slot missing
    CHECK_THROWS_AS(certificate_from_json(bad2), ParseError);
}

TEST_CASE("free filtration adds one hyperplane at a time") {
    Arrangement a = braid(4);
    SearchOutcome found = search_mat(a, {});
    REQUIRE(found.verdict == SearchVerdict::certified);
    std::vector<FiltrationEntry> chain = free_filtration(a, *found.mat_certificate);
    REQUIRE(chain.size() == a.size() + 1);
    CHECK(chain.front().size == 0);
    CHECK(chain.front().added_index == 0);
    CHECK(chain.front().exponents == std::vector<int>{0, 0, 0, 0});
    std::vector<bool> seen(a.size(), false);
    for (std::size_t i = 1; i < chain.size(); ++i) {
        CHECK(chain[i].size == (int)i);
        REQUIRE(chain[i].added_index >= 1);
        REQUIRE(chain[i].added_index <= (int)a.size());
        CHECK(!seen[chain[i].added_index - 1]);
        seen[chain[i].added_index - 1] = true;
        CHECK(std::is_sorted(chain[i].exponents.begin(), chain[i].exponents.end()));
        int sum = 0;
        for (int e : chain[i].exponents) sum += e;
        CHECK(sum == (int)i);
    }
    CHECK(chain.back().exponents == found.mat_certificate->exponents);

    SearchOutcome found2 = search_mat2(a, {});
    REQUIRE(found2.verdict == SearchVerdict::certified);
    std::vector<FiltrationEntry> chain2 = free_filtration(a, *found2.mat2_certificate);
    CHECK(chain2.size() == a.size() + 1);
    CHECK(chain2.back().exponents == found2.mat2_certificate->exponents);

    MatCertificate broken = *found.mat_certificate;
    broken.blocks = {{1, 2, 3}, {4, 5, 6}};
    CHECK_THROWS_AS(free_filtration(a, broken), std::invalid_argument);
}

TEST_CASE("every mat certificate converts to a mat2 certificate") {
    Arrangement a = braid(4);
    SearchOutcome found = search_mat(a, {});
    REQUIRE(found.verdict == SearchVerdict::certified);
    Mat2Certificate m2 = mat_to_mat2(a, *found.mat_certificate);
    CHECK(m2.exponents == found.mat_certificate->exponents);
    CHECK(m2.steps.size() == found.mat_certificate->blocks.size());
    Mat2Verification v = verify_mat2_sequence(a, m2.steps);
    CHECK(v.ok);
    CHECK(v.certificate.exponents == m2.exponents);
}

TEST_CASE("product partitions verify and split back") {
    Arrangement a = braid(3);
    Arrangement b = braid(4);
    SearchOutcome ca = search_mat(a, {});
    SearchOutcome cb = search_mat(b, {});
    REQUIRE(ca.verdict == SearchVerdict::certified);
    REQUIRE(cb.verdict == SearchVerdict::certified);

    MatCertificate cp = product_partition(a, *ca.mat_certificate, b, *cb.mat_certificate);
    Arrangement p = product(a, b);
    MatVerification v = verify_mat_partition(p, cp.blocks);
    CHECK(v.ok);
    CHECK(v.certificate.exponents == cp.exponents);

    auto [fa, fb] = factor_partitions(a, b, cp);
    CHECK(verify_mat_partition(a, fa.blocks).ok);
    CHECK(verify_mat_partition(b, fb.blocks).ok);
    CHECK(fa.exponents == ca.mat_certificate->exponents);
    CHECK(fb.exponents == cb.mat_certificate->exponents);
}
