#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "matfree/arrangement.hpp"
#include "matfree/linalg.hpp"

using namespace matfree;

namespace {

Covector cv(std::vector<int> entries, unsigned conductor = 1) {
    Covector v;
    for (int e : entries) v.push_back(CycloScalar::integer(e, conductor));
    return v;
}

// The x_i - x_j arrangement in dimension n.
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

TEST_CASE("hyperplane normalization and equality") {
    Hyperplane a{cv({2, 4, 0})};
    Hyperplane b{cv({1, 2, 0})};
    Hyperplane c{cv({-3, -6, 0})};
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a.str() == "1 ; 2 ; 0");
    CHECK_THROWS_AS(Hyperplane{cv({0, 0, 0})}, std::invalid_argument);

    Covector mixed{CycloScalar::integer(1, 2), CycloScalar::integer(1, 3)};
    CHECK_THROWS_AS(Hyperplane{mixed}, std::invalid_argument);
}

TEST_CASE("parse reports 1-based line numbers") {
    auto message = [](const std::string& text) {
        try {
            Arrangement::parse(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("conductor 1\ndim 3\n1 ; 0\n").find("line 3") == 0);
    CHECK(message("dim 3\n1 ; 0 ; 0\n").find("line 2") == 0);  // no conductor yet
    CHECK(message("conductor 1\nconductor 2\n").find("line 2") == 0);
    CHECK(message("conductor 1\ndim 2\n1 ; 0\n# fine\n2 ; 0\n").find("line 5") == 0);
    CHECK(message("conductor 1\ndim 2\nbogus line\n").find("line 3") == 0);
    CHECK(message("conductor 0\n").find("line 1") == 0);
    // Duplicate message names both lines.
    std::string dup = message("conductor 1\ndim 2\n1 ; 1\n2 ; 2\n");
    CHECK(dup.find("line 4") == 0);
    CHECK(dup.find("line 3") != std::string::npos);
}

TEST_CASE("parse and emit round-trip") {
    std::string text =
        "# a comment\n"
        "conductor 5\n"
        "dim 3\n"
        "1 ; z ; z^2\n"
        "0 ; 2 ; -1/3\n"
        "1 ; 0 ; 0\n";
    Arrangement a = Arrangement::parse(text);
    CHECK(a.size() == 3);
    CHECK(a.dim() == 3);
    CHECK(a.conductor() == 5);
    Arrangement b = Arrangement::parse(a.emit());
    CHECK(a.emit() == b.emit());
    CHECK(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

    // Normalization happens on parse: "0 ; 2 ; -1/3" leads with 1.
    CHECK(a[1].str() == "0 ; 1 ; -1/6");

    CHECK_THROWS_AS(Arrangement::parse("conductor 7\ndim 2\n1 ; z\n", 5), ParseError);
    CHECK_NOTHROW(Arrangement::parse("conductor 7\ndim 2\n1 ; z\n", 7));
}

TEST_CASE("duplicate and mismatched additions are rejected") {
    Arrangement a(3, 1);
    a.add(Hyperplane{cv({1, 2, 0})});
    CHECK_THROWS_AS(a.add(Hyperplane{cv({2, 4, 0})}), std::invalid_argument);
    CHECK_THROWS_AS(a.add(Hyperplane{cv({1, 2})}), std::invalid_argument);
    CHECK_THROWS_AS(a.add(Hyperplane{cv({1, 0, 0}, 3)}), std::invalid_argument);
    CHECK(a.index_of(Hyperplane{cv({3, 6, 0})}) == 0);
    CHECK(a.index_of(Hyperplane{cv({1, 0, 0})}) < 0);
}

TEST_CASE("rank and reduced row echelon form") {
    Arrangement b4 = braid(4);
    CHECK(b4.size() == 6);
    CHECK(rank(b4) == 3);
    CHECK(rank(braid(3)) == 2);

    // rref is canonical: two spanning sets of the same plane reduce equally.
    std::vector<Covector> r1{cv({1, 1, 0}), cv({0, 1, 1})};
    std::vector<Covector> r2{cv({1, 2, 1}), cv({2, 3, 1})};
    CHECK(rref_in_place(r1) == 2);
    CHECK(rref_in_place(r2) == 2);
    CHECK(r1 == r2);
    CHECK(in_row_span(r1, cv({1, 0, -1})));
    CHECK(!in_row_span(r1, cv({1, 0, 0})));
}

TEST_CASE("intersection subspaces and codimension") {
    Arrangement b4 = braid(4);
    // x1-x2 and x1-x3 meet in the codimension-2 flat x1=x2=x3.
    Subspace x = intersection_subspace(b4, {0, 1});
    CHECK(x.codim() == 2);
    Subspace whole = intersection_of({}, 4, 1);
    CHECK(whole.codim() == 0);
    // All six hyperplanes cut down to the diagonal line.
    Subspace diag = intersection_subspace(b4, {0, 1, 2, 3, 4, 5});
    CHECK(diag.codim() == 3);
    CHECK_THROWS_AS(intersection_subspace(b4, {7}), std::invalid_argument);
}

TEST_CASE("subspace membership matches a rank oracle") {
    std::mt19937 rng(123);
    std::uniform_int_distribution<int> pick(0, 5);
    int checked = 0;
    while (checked < 120) {
        Arrangement a = random_arrangement(rng, 3, 6);
        // X = intersection of a random subset.
        std::vector<int> subset;
        for (int i = 0; i < 6; ++i)
            if (pick(rng) < 2) subset.push_back(i);
        if (subset.empty()) continue;
        Subspace x = intersection_subspace(a, subset);
        for (int i = 0; i < 6; ++i) {
            // Independent oracle: h contains X iff adding h's covector to the
            // annihilator rows leaves the rank unchanged.
            std::vector<Covector> rows = x.annihilator();
            rows.push_back(a[i].covector());
            bool contained = rref_in_place(rows) == x.codim();
            CHECK(subspace_in_hyperplane(x, a[i]) == contained);
            ++checked;
        }
    }
}

TEST_CASE("restriction counts distinct flats once") {
    Arrangement b4 = braid(4);
    // In x1=x2 the images of x1-x3 and x2-x3 coincide, likewise x1-x4, x2-x4.
    std::vector<Subspace> r = restriction(b4, b4[0]);
    CHECK(r.size() == 3);
    for (const auto& x : r) CHECK(x.codim() == 2);
    CHECK(std::is_sorted(r.begin(), r.end(),
                         [](const Subspace& a, const Subspace& b) {
                             return Subspace::compare(a, b) < 0;
                         }));

    // The cutting hyperplane need not belong to the arrangement.
    Arrangement two(3, 1);
    two.add(Hyperplane{cv({1, 0, 0})});
    two.add(Hyperplane{cv({0, 1, 0})});
    std::vector<Subspace> s = restriction(two, Hyperplane{cv({0, 0, 1})});
    CHECK(s.size() == 2);
}

TEST_CASE("localization keeps exactly the hyperplanes through the flat") {
    Arrangement b4 = braid(4);
    Subspace x = intersection_subspace(b4, {0, 1});  // x1=x2=x3
    Arrangement local = localization(b4, x);
    CHECK(local.size() == 3);
    CHECK(local.index_of(b4[0]) >= 0);
    CHECK(local.index_of(b4[1]) >= 0);
    // x2-x3 passes through the flat too; x1-x4 does not.
    CHECK(local.index_of(Hyperplane{cv({0, 1, -1, 0})}) >= 0);
    CHECK(local.index_of(Hyperplane{cv({1, 0, 0, -1})}) < 0);
}

TEST_CASE("product pads covectors and mixes conductors") {
    Arrangement left = Arrangement::parse("conductor 3\ndim 2\n1 ; z\n0 ; 1\n");
    Arrangement right = Arrangement::parse("conductor 4\ndim 1\n1\n");
    Arrangement p = product(left, right);
    CHECK(p.dim() == 3);
    CHECK(p.size() == 3);
    CHECK(p.conductor() == 12);
    CHECK(rank(p) == rank(left) + rank(right));
    // Left block comes first, padded on the right.
    CHECK(p[0].covector()[2].is_zero());
    CHECK(p[2].covector()[0].is_zero());
    CHECK(p[2].covector()[1].is_zero());

    // An empty factor adds dimension only.
    Arrangement empty(2, 1);
    Arrangement q = product(braid(3), empty);
    CHECK(q.dim() == 5);
    CHECK(q.size() == 3);
    CHECK(rank(q) == 2);
}

TEST_CASE("select keeps order and checks bounds") {
    Arrangement b4 = braid(4);
    Arrangement s = b4.select({5, 0, 2});
    CHECK(s.size() == 3);
    CHECK(s[0] == b4[5]);
    CHECK(s[1] == b4[0]);
    CHECK(s[2] == b4[2]);
    CHECK_THROWS_AS(b4.select({6}), std::invalid_argument);
    CHECK_THROWS_AS(b4.select({-1}), std::invalid_argument);
}
