#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "matfree/linalg.hpp"

namespace matfree {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A linear hyperplane ker(alpha) in K^dim, K = Q(zeta_n). The covector is
// normalized so its first nonzero entry is 1; two covectors describe the same
// hyperplane iff they normalize to the same entries, so operator== is
// geometric equality.
class Hyperplane {
public:
    // Throws std::invalid_argument on a zero covector or mixed conductors.
    explicit Hyperplane(Covector covector);

    unsigned dim() const { return static_cast<unsigned>(covector_.size()); }
    unsigned conductor() const { return conductor_; }
    const Covector& covector() const { return covector_; }

    Hyperplane lifted(unsigned conductor) const;

    bool operator==(const Hyperplane& o) const {
        return conductor_ == o.conductor_ && covector_ == o.covector_;
    }
    bool operator!=(const Hyperplane& o) const { return !(*this == o); }
    std::size_t hash() const;
    // Entries joined with " ; " in canonical scalar syntax.
    std::string str() const;

private:
    unsigned conductor_;
    Covector covector_;
};

struct HyperplaneHash {
    std::size_t operator()(const Hyperplane& h) const { return h.hash(); }
};

// A linear subspace of K^dim, represented by the canonical reduced-echelon
// basis of its annihilator (the covectors vanishing on it). The empty
// annihilator is the whole space. Canonical form makes equality and hashing
// structural.
class Subspace {
public:
    // From spanning covectors of the annihilator (they get reduced).
    Subspace(unsigned dim, unsigned conductor, std::vector<Covector> annihilator_span);

    unsigned dim() const { return dim_; }
    unsigned conductor() const { return conductor_; }
    unsigned codim() const { return static_cast<unsigned>(annihilator_.size()); }
    const std::vector<Covector>& annihilator() const { return annihilator_; }

    bool operator==(const Subspace& o) const {
        return dim_ == o.dim_ && conductor_ == o.conductor_ && annihilator_ == o.annihilator_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    // Deterministic total order for sorted output (codim first, then entries).
    static int compare(const Subspace& a, const Subspace& b);
    std::size_t hash() const;
    std::string str() const;

private:
    unsigned dim_;
    unsigned conductor_;
    std::vector<Covector> annihilator_;
};

struct SubspaceHash {
    std::size_t operator()(const Subspace& s) const { return s.hash(); }
};

// A finite list of distinct hyperplanes in a fixed K^dim. Order is
// significant: certificates refer to hyperplanes by position.
class Arrangement {
public:
    Arrangement(unsigned dim, unsigned conductor);

    unsigned dim() const { return dim_; }
    unsigned conductor() const { return conductor_; }
    std::size_t size() const { return hyperplanes_.size(); }
    const Hyperplane& operator[](std::size_t i) const { return hyperplanes_[i]; }
    const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }

    // Throws std::invalid_argument on dimension/conductor mismatch or a
    // duplicate of an existing member.
    void add(Hyperplane h);
    std::optional<std::size_t> index_of(const Hyperplane& h) const;

    // Sub-arrangement picking 0-based positions, preserving their order.
    Arrangement select(const std::vector<int>& indices) const;

    // Reads the "conductor/dim/one covector per line" text format. Lines may
    // carry '#' comments; entries are separated by ';'. Errors (including
    // duplicates) are reported as ParseError with 1-based line numbers.
    // conductor_limit > 0 rejects files whose conductor exceeds it.
    static Arrangement parse(const std::string& text, unsigned conductor_limit = 0);
    // Canonical emission of the same format; parse(emit()) reproduces the
    // arrangement exactly.
    std::string emit() const;

private:
    unsigned dim_;
    unsigned conductor_;
    std::vector<Hyperplane> hyperplanes_;
};

// Rank of the covector span.
unsigned rank(const std::vector<Hyperplane>& hyperplanes);
unsigned rank(const Arrangement& a);

// Common intersection of the listed hyperplanes (whole space when empty).
Subspace intersection_of(const std::vector<Hyperplane>& hyperplanes, unsigned dim,
                         unsigned conductor);
// Same, picking 0-based members of an arrangement.
Subspace intersection_subspace(const Arrangement& a, const std::vector<int>& indices);

// Whether X lies inside ker(alpha_h), i.e. alpha_h vanishes on X.
bool subspace_in_hyperplane(const Subspace& x, const Hyperplane& h);

// The restriction of a to h: distinct subspaces h cap k for k in a, k != h,
// sorted canonically. h itself need not belong to a.
std::vector<Subspace> restriction(const Arrangement& a, const Hyperplane& h);

// Hyperplanes of a containing x, order preserved.
Arrangement localization(const Arrangement& a, const Subspace& x);

// Product arrangement in K^(d1+d2): covectors of a padded right with zeros,
// then covectors of b padded left, over the lcm conductor.
Arrangement product(const Arrangement& a, const Arrangement& b);

}  // namespace matfree
