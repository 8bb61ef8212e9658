#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "matfree/rational.hpp"

namespace matfree {

// Coefficients of the n-th cyclotomic polynomial Phi_n, lowest degree first,
// as exact integers. Computed by the recursive exact division
//   Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d,
// which stays in Z[x] throughout. n >= 1.
std::vector<mpz_class> cyclotomic_polynomial(unsigned n);

// Euler's totient, the degree of Phi_n.
unsigned euler_phi(unsigned n);

// One element of the cyclotomic field Q(zeta_n), stored as the coefficient
// vector of its canonical representative of degree < phi(n) in Q[x]/(Phi_n).
// The conductor n is part of the value; arithmetic between different
// conductors is a usage error (callers lift explicitly). Equality of
// coefficient vectors is equality in the field, because the representative is
// canonical.
class CycloScalar {
public:
    // Zero in Q = Q(zeta_1).
    CycloScalar();

    static CycloScalar from_rational(const Rational& q, unsigned conductor = 1);
    static CycloScalar integer(long v, unsigned conductor = 1);
    // zeta_n^k.
    static CycloScalar root_of_unity(unsigned n, unsigned k = 1);
    // The golden ratio (1 + sqrt 5)/2 as -zeta_5^2 - zeta_5^3, and its
    // reciprocal (sqrt 5 - 1)/2 = zeta_5 + zeta_5^4. Both live in conductor 5.
    static CycloScalar golden_ratio();
    static CycloScalar golden_ratio_reciprocal();
    // From raw polynomial-in-zeta_n coefficients (any length; reduced mod Phi_n).
    static CycloScalar from_poly(std::vector<Rational> coeffs, unsigned conductor);

    unsigned conductor() const { return conductor_; }
    // Canonical coefficients, length phi(conductor).
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    // Value as a rational; requires is_rational().
    Rational rational_value() const;

    // Image under the inclusion Q(zeta_m) -> Q(zeta_n), zeta_m -> zeta_n^{n/m}.
    // Requires conductor() | n.
    CycloScalar lifted(unsigned n) const;

    CycloScalar operator-() const;
    friend CycloScalar operator+(const CycloScalar& a, const CycloScalar& b);
    friend CycloScalar operator-(const CycloScalar& a, const CycloScalar& b);
    friend CycloScalar operator*(const CycloScalar& a, const CycloScalar& b);
    // Field division; throws std::domain_error on division by zero.
    friend CycloScalar operator/(const CycloScalar& a, const CycloScalar& b);
    CycloScalar inverse() const;

    bool operator==(const CycloScalar& o) const {
        return conductor_ == o.conductor_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const CycloScalar& o) const { return !(*this == o); }
    // Total order used only to fix deterministic output orderings.
    static int compare(const CycloScalar& a, const CycloScalar& b);

    // Numeric embedding zeta_n -> exp(2 pi i / n), for cross-checks only.
    std::complex<double> embed() const;

    // Canonical text form: rational-combination-of-powers syntax, e.g.
    // "0", "1", "-z", "z^2", "1/2 - 1/2*z", "-2/3*z^3 + 1".
    std::string str() const;
    // Parses the same syntax into conductor n (powers are taken mod n).
    // Throws std::invalid_argument on syntax errors.
    static CycloScalar parse(const std::string& text, unsigned conductor);

    std::size_t hash() const;

private:
    CycloScalar(unsigned conductor, std::vector<Rational> canonical);
    unsigned conductor_;
    std::vector<Rational> coeffs_;
};

struct CycloScalarHash {
    std::size_t operator()(const CycloScalar& s) const { return s.hash(); }
};

}  // namespace matfree
