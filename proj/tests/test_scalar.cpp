#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "matfree/cyclotomic.hpp"

using namespace matfree;

namespace {

CycloScalar random_scalar(std::mt19937& rng, unsigned conductor) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    // Over-length coefficient vectors exercise the reduction mod Phi_n.
    std::vector<Rational> c(euler_phi(conductor) + 2);
    for (auto& q : c) {
        q = Rational(num(rng));
        q /= den(rng);
    }
    return CycloScalar::from_poly(std::move(c), conductor);
}

CycloScalar horner(const std::vector<mpz_class>& poly, const CycloScalar& x) {
    CycloScalar acc = CycloScalar::integer(0, x.conductor());
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
        Rational c(*it);
        acc = acc * x + CycloScalar::from_rational(c, x.conductor());
    }
    return acc;
}

}  // namespace

TEST_CASE("cyclotomic polynomial small table and shape") {
    CHECK(cyclotomic_polynomial(1) == std::vector<mpz_class>{-1, 1});
    CHECK(cyclotomic_polynomial(2) == std::vector<mpz_class>{1, 1});
    CHECK(cyclotomic_polynomial(3) == std::vector<mpz_class>{1, 1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<mpz_class>{1, 0, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<mpz_class>{1, -1, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<mpz_class>{1, 0, -1, 0, 1});

    // 105 is the first index with a coefficient outside {-1,0,1}.
    auto p105 = cyclotomic_polynomial(105);
    CHECK(p105[7] == -2);

    for (unsigned n : {1u, 2u, 5u, 8u, 9u, 15u, 24u, 30u, 36u, 60u, 105u}) {
        auto p = cyclotomic_polynomial(n);
        CHECK(p.size() == euler_phi(n) + 1);
        CHECK(p.back() == 1);
    }

    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(2) == 1);
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(105) == 48);
    CHECK_THROWS_AS(cyclotomic_polynomial(0), std::invalid_argument);
}

TEST_CASE("zeta_n is a root of Phi_n") {
    for (unsigned n = 1; n <= 30; ++n) {
        CycloScalar z = CycloScalar::root_of_unity(n);
        CHECK(horner(cyclotomic_polynomial(n), z).is_zero());
        // ... and of x^n - 1.
        CycloScalar pw = CycloScalar::integer(1, n);
        for (unsigned k = 0; k < n; ++k) pw = pw * z;
        CHECK(pw == CycloScalar::integer(1, n));
    }
}

TEST_CASE("field axioms on random elements") {
    std::mt19937 rng(20240811);
    for (unsigned conductor : {1u, 4u, 5u, 7u, 12u}) {
        CycloScalar one = CycloScalar::integer(1, conductor);
        for (int trial = 0; trial < 20; ++trial) {
            CycloScalar a = random_scalar(rng, conductor);
            CycloScalar b = random_scalar(rng, conductor);
            CycloScalar c = random_scalar(rng, conductor);
            CHECK(a + b == b + a);
            CHECK((a + b) + c == a + (b + c));
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a - b == a + (-b));
            CHECK((a - a).is_zero());
            if (!a.is_zero()) {
                CHECK(a * a.inverse() == one);
                CHECK(a / a == one);
                CHECK((b / a) * a == b);
            }
        }
    }
}

TEST_CASE("numeric embedding cross-checks exact arithmetic") {
    const double pi = std::acos(-1.0);
    for (unsigned n = 1; n <= 12; ++n) {
        std::complex<double> expected = std::polar(1.0, 2 * pi / n);
        CHECK(std::abs(CycloScalar::root_of_unity(n).embed() - expected) < 1e-9);
    }
    std::mt19937 rng(7);
    for (unsigned conductor : {5u, 8u, 9u}) {
        for (int trial = 0; trial < 10; ++trial) {
            CycloScalar a = random_scalar(rng, conductor);
            CycloScalar b = random_scalar(rng, conductor);
            CHECK(std::abs((a + b).embed() - (a.embed() + b.embed())) < 1e-8);
            CHECK(std::abs((a * b).embed() - a.embed() * b.embed()) < 1e-7);
        }
    }
}

TEST_CASE("text form round-trips") {
    std::mt19937 rng(99);
    for (unsigned conductor : {1u, 5u, 8u, 12u}) {
        for (int trial = 0; trial < 25; ++trial) {
            CycloScalar a = random_scalar(rng, conductor);
            CHECK(CycloScalar::parse(a.str(), conductor) == a);
        }
    }
    CHECK(CycloScalar::parse("0", 7).is_zero());
    CHECK(CycloScalar::parse("1/2 - 1/2*z", 12) ==
          CycloScalar::from_poly({Rational(1, 2), Rational(-1, 2)}, 12));
    CHECK(CycloScalar::parse("-z^3", 5) == -CycloScalar::root_of_unity(5, 3));
    // Powers reduce mod the conductor.
    CHECK(CycloScalar::parse("z^9", 5) == CycloScalar::root_of_unity(5, 4));

    CHECK_THROWS_AS(CycloScalar::parse("", 5), std::invalid_argument);
    CHECK_THROWS_AS(CycloScalar::parse("z^", 5), std::invalid_argument);
    CHECK_THROWS_AS(CycloScalar::parse("1//2", 5), std::invalid_argument);
    CHECK_THROWS_AS(CycloScalar::parse("q + 1", 5), std::invalid_argument);
    CHECK_THROWS_AS(CycloScalar::parse("1/0", 5), std::invalid_argument);
}

TEST_CASE("lifting between conductors") {
    // zeta_3 -> zeta_12^4.
    CHECK(CycloScalar::root_of_unity(3).lifted(12) == CycloScalar::root_of_unity(12, 4));
    // zeta_2 is already rational.
    CycloScalar m1 = CycloScalar::root_of_unity(2);
    CHECK(m1.is_rational());
    CHECK(m1.rational_value() == Rational(-1));

    Rational q(5, 3);
    CHECK(CycloScalar::from_rational(q, 1).lifted(7).rational_value() == q);

    std::mt19937 rng(4242);
    for (int trial = 0; trial < 15; ++trial) {
        CycloScalar a = random_scalar(rng, 3);
        CycloScalar b = random_scalar(rng, 3);
        CHECK((a + b).lifted(12) == a.lifted(12) + b.lifted(12));
        CHECK((a * b).lifted(12) == a.lifted(12) * b.lifted(12));
    }
    CHECK_THROWS_AS(CycloScalar::root_of_unity(5).lifted(12), std::invalid_argument);
}

TEST_CASE("golden ratio identities in conductor 5") {
    CycloScalar tau = CycloScalar::golden_ratio();
    CycloScalar tau_r = CycloScalar::golden_ratio_reciprocal();
    CycloScalar one = CycloScalar::integer(1, 5);
    CHECK(tau.conductor() == 5);
    CHECK(tau * tau == tau + one);
    CHECK(tau * tau_r == one);
    CHECK(tau - tau_r == one);
    CHECK(tau_r == tau.inverse());
    // 2*tau - 1 is a square root of 5.
    CycloScalar root5 = tau + tau - one;
    CHECK(root5 * root5 == CycloScalar::integer(5, 5));
    CHECK(std::abs(tau.embed() - std::complex<double>(1.6180339887498949, 0)) < 1e-12);
}

TEST_CASE("error cases and the deterministic order") {
    CycloScalar z5 = CycloScalar::root_of_unity(5);
    CHECK_THROWS_AS(z5.inverse() + CycloScalar::root_of_unity(3), std::invalid_argument);
    CHECK_THROWS_AS(z5 / CycloScalar::integer(0, 5), std::domain_error);
    CHECK_THROWS_AS(z5.rational_value(), std::domain_error);

    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        CycloScalar a = random_scalar(rng, 8);
        CycloScalar b = random_scalar(rng, 8);
        CHECK(CycloScalar::compare(a, a) == 0);
        int ab = CycloScalar::compare(a, b);
        int ba = CycloScalar::compare(b, a);
        CHECK((ab == 0 ? ba == 0 : (ab > 0) == (ba < 0)));
        CHECK((ab == 0) == (a == b));
    }
}
