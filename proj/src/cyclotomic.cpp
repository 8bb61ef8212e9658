#include "matfree/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace matfree {

namespace {

// --- dense polynomial helpers over Q, lowest degree first ---

using Poly = std::vector<Rational>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
}

// Division with remainder; divisor need not be monic but must be nonzero.
std::pair<Poly, Poly> divmod(Poly num, const Poly& den) {
    Poly quot;
    if (den.empty()) throw std::domain_error("polynomial division by zero");
    trim(num);
    if (num.size() < den.size()) return {quot, num};
    quot.assign(num.size() - den.size() + 1, Rational(0));
    const Rational& lead = den.back();
    for (int i = degree(num); i >= degree(den); --i) {
        if (num[static_cast<std::size_t>(i)] == 0) continue;
        Rational c = num[static_cast<std::size_t>(i)] / lead;
        quot[static_cast<std::size_t>(i - degree(den))] = c;
        for (std::size_t j = 0; j < den.size(); ++j)
            num[static_cast<std::size_t>(i) - den.size() + 1 + j] -= c * den[j];
    }
    trim(num);
    return {quot, num};
}

// --- per-conductor context: Phi_n and phi(n), cached for the process ---

struct CycloContext {
    unsigned n = 1;
    unsigned phi = 1;
    Poly modulus;  // Phi_n over Q, monic, degree phi
};

const CycloContext& context(unsigned n) {
    static std::mutex mu;
    static std::map<unsigned, std::unique_ptr<CycloContext>> cache;
    if (n == 0) throw std::invalid_argument("conductor must be >= 1");
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        auto ctx = std::make_unique<CycloContext>();
        ctx->n = n;
        auto zpoly = cyclotomic_polynomial(n);
        ctx->modulus.reserve(zpoly.size());
        for (const auto& c : zpoly) ctx->modulus.emplace_back(c);
        ctx->phi = static_cast<unsigned>(ctx->modulus.size() - 1);
        it = cache.emplace(n, std::move(ctx)).first;
    }
    return *it->second;
}

// Canonical representative mod Phi_n, padded to length phi(n).
std::vector<Rational> reduce(Poly p, const CycloContext& ctx) {
    trim(p);
    if (p.size() > ctx.phi) p = divmod(std::move(p), ctx.modulus).second;
    p.resize(ctx.phi, Rational(0));
    return p;
}

}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(unsigned n) {
    static std::mutex mu;
    static std::map<unsigned, std::vector<mpz_class>> cache;
    if (n == 0) throw std::invalid_argument("cyclotomic_polynomial: n must be >= 1");
    std::lock_guard<std::mutex> lock(mu);
    // Iterative over divisors so a single lock suffices.
    auto compute = [](unsigned m, const std::map<unsigned, std::vector<mpz_class>>& known) {
        std::vector<mpz_class> poly(m + 1, 0);  // x^m - 1
        poly[0] = -1;
        poly[m] = 1;
        for (unsigned d = 1; d < m; ++d) {
            if (m % d != 0) continue;
            const auto& div = known.at(d);
            // Synthetic division by the monic divisor; remainder must vanish.
            std::vector<mpz_class> quot(poly.size() - div.size() + 1, 0);
            for (int i = static_cast<int>(poly.size()) - 1;
                 i >= static_cast<int>(div.size()) - 1; --i) {
                mpz_class c = poly[static_cast<std::size_t>(i)];
                if (c == 0) continue;
                quot[static_cast<std::size_t>(i) - div.size() + 1] = c;
                for (std::size_t j = 0; j < div.size(); ++j)
                    poly[static_cast<std::size_t>(i) - div.size() + 1 + j] -= c * div[j];
            }
            for (const auto& r : poly)
                if (r != 0) throw std::logic_error("cyclotomic division left a remainder");
            poly = std::move(quot);
        }
        return poly;
    };
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d != 0 || cache.count(d)) continue;
        cache.emplace(d, compute(d, cache));
    }
    return cache.at(n);
}

unsigned euler_phi(unsigned n) {
    return static_cast<unsigned>(cyclotomic_polynomial(n).size() - 1);
}

CycloScalar::CycloScalar() : conductor_(1), coeffs_(1, Rational(0)) {}

CycloScalar::CycloScalar(unsigned conductor, std::vector<Rational> canonical)
    : conductor_(conductor), coeffs_(std::move(canonical)) {}

CycloScalar CycloScalar::from_poly(std::vector<Rational> coeffs, unsigned conductor) {
    const auto& ctx = context(conductor);
    return CycloScalar(conductor, reduce(std::move(coeffs), ctx));
}

CycloScalar CycloScalar::from_rational(const Rational& q, unsigned conductor) {
    return from_poly({q}, conductor);
}

CycloScalar CycloScalar::integer(long v, unsigned conductor) {
    return from_rational(Rational(v), conductor);
}

CycloScalar CycloScalar::root_of_unity(unsigned n, unsigned k) {
    Poly p(static_cast<std::size_t>(k % n) + 1, Rational(0));
    p.back() = 1;
    return from_poly(std::move(p), n);
}

CycloScalar CycloScalar::golden_ratio() {
    // -z^2 - z^3 at conductor 5: equals (1 + sqrt 5)/2 under z -> exp(2 pi i/5).
    return from_poly({Rational(0), Rational(0), Rational(-1), Rational(-1)}, 5);
}

CycloScalar CycloScalar::golden_ratio_reciprocal() {
    // z + z^4 at conductor 5, i.e. golden_ratio() - 1.
    return from_poly({Rational(0), Rational(1), Rational(0), Rational(0), Rational(1)}, 5);
}

bool CycloScalar::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool CycloScalar::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

Rational CycloScalar::rational_value() const {
    if (!is_rational()) throw std::domain_error("scalar is not rational: " + str());
    return coeffs_[0];
}

CycloScalar CycloScalar::lifted(unsigned n) const {
    if (n == conductor_) return *this;
    if (n == 0 || n % conductor_ != 0)
        throw std::invalid_argument("lift target conductor must be a multiple of the source");
    unsigned step = n / conductor_;
    Poly p;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        std::size_t e = i * step;
        if (p.size() <= e) p.resize(e + 1, Rational(0));
        p[e] = coeffs_[i];
    }
    return from_poly(std::move(p), n);
}

CycloScalar CycloScalar::operator-() const {
    std::vector<Rational> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = -coeffs_[i];
    return CycloScalar(conductor_, std::move(out));
}

namespace {
void require_same_conductor(const CycloScalar& a, const CycloScalar& b) {
    if (a.conductor() != b.conductor())
        throw std::invalid_argument("scalar arithmetic across conductors (" +
                                    std::to_string(a.conductor()) + " vs " +
                                    std::to_string(b.conductor()) + "); lift first");
}
}  // namespace

CycloScalar operator+(const CycloScalar& a, const CycloScalar& b) {
    require_same_conductor(a, b);
    std::vector<Rational> out(a.coeffs_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeffs_[i] + b.coeffs_[i];
    return CycloScalar(a.conductor_, std::move(out));
}

CycloScalar operator-(const CycloScalar& a, const CycloScalar& b) {
    require_same_conductor(a, b);
    std::vector<Rational> out(a.coeffs_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeffs_[i] - b.coeffs_[i];
    return CycloScalar(a.conductor_, std::move(out));
}

CycloScalar operator*(const CycloScalar& a, const CycloScalar& b) {
    require_same_conductor(a, b);
    const auto& ctx = context(a.conductor_);
    return CycloScalar(a.conductor_, reduce(mul(a.coeffs_, b.coeffs_), ctx));
}

CycloScalar CycloScalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero scalar");
    const auto& ctx = context(conductor_);
    // Extended Euclid in Q[x]: since Phi_n is irreducible and 0 < deg-class of
    // *this < deg Phi_n, gcd(this, Phi_n) is a nonzero constant.
    Poly r0 = ctx.modulus, r1 = coeffs_;
    trim(r1);
    Poly s0 = {}, s1 = {Rational(1)};  // coefficients of *this in the Bezout identity
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly next = s0;
        Poly prod = mul(q, s1);
        if (next.size() < prod.size()) next.resize(prod.size(), Rational(0));
        for (std::size_t i = 0; i < prod.size(); ++i) next[i] -= prod[i];
        trim(next);
        s0 = std::move(s1);
        s1 = std::move(next);
    }
    if (degree(r0) != 0)
        throw std::logic_error("cyclotomic modulus not coprime to nonzero element");
    Poly inv = s0;
    for (auto& c : inv) c /= r0[0];
    return CycloScalar(conductor_, reduce(std::move(inv), ctx));
}

CycloScalar operator/(const CycloScalar& a, const CycloScalar& b) {
    require_same_conductor(a, b);
    return a * b.inverse();
}

int CycloScalar::compare(const CycloScalar& a, const CycloScalar& b) {
    if (a.conductor_ != b.conductor_) return a.conductor_ < b.conductor_ ? -1 : 1;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        int c = cmp(a.coeffs_[i], b.coeffs_[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::complex<double> CycloScalar::embed() const {
    std::complex<double> zeta =
        std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(conductor_));
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * zeta + coeffs_[i].get_d();
    return acc;
}

std::string CycloScalar::str() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        Rational mag = abs(coeffs_[i]);
        bool neg = coeffs_[i] < 0;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        std::string coeff = to_string(mag);
        if (i == 0) {
            out += coeff;
        } else {
            if (mag != 1) out += coeff + "*";
            out += "z";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

CycloScalar CycloScalar::parse(const std::string& text, unsigned conductor) {
    const auto& ctx = context(conductor);
    Poly acc(ctx.phi, Rational(0));
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& why) -> void {
        throw std::invalid_argument("bad scalar '" + text + "': " + why);
    };
    auto read_uint = [&]() -> unsigned long {
        std::size_t start = pos;
        unsigned long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + static_cast<unsigned long>(text[pos] - '0');
            if (v > 1000000000UL) fail("numeric literal too large");
            ++pos;
        }
        if (pos == start) fail("expected a number");
        return v;
    };
    skip_ws();
    if (pos == text.size()) fail("empty");
    bool first = true;
    while (pos < text.size()) {
        int sign = 1;
        skip_ws();
        if (!first) {
            if (text[pos] == '+') sign = 1;
            else if (text[pos] == '-') sign = -1;
            else fail("expected '+' or '-' between terms");
            ++pos;
            skip_ws();
        } else if (text[pos] == '-' || text[pos] == '+') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip_ws();
        }
        first = false;
        if (pos == text.size()) fail("dangling sign");
        Rational coeff(1);
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
            unsigned long num = read_uint();
            unsigned long den = 1;
            if (pos < text.size() && text[pos] == '/') {
                ++pos;
                den = read_uint();
                if (den == 0) fail("zero denominator");
            }
            coeff = Rational(static_cast<long>(num), static_cast<long>(den));
            coeff.canonicalize();
            have_coeff = true;
        }
        unsigned long power = 0;
        bool have_z = false;
        skip_ws();
        if (have_coeff && pos < text.size() && text[pos] == '*') {
            ++pos;
            skip_ws();
            if (pos == text.size() || text[pos] != 'z') fail("expected 'z' after '*'");
        }
        if (pos < text.size() && text[pos] == 'z') {
            ++pos;
            have_z = true;
            power = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                power = read_uint();
            }
        }
        if (!have_coeff && !have_z) fail("expected a term");
        std::size_t e = have_z ? static_cast<std::size_t>(power % conductor) : 0;
        Poly term(e + 1, Rational(0));
        term[e] = sign < 0 ? Rational(-coeff) : coeff;
        Poly reduced = reduce(std::move(term), ctx);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += reduced[i];
        skip_ws();
    }
    return CycloScalar(conductor, std::move(acc));
}

std::size_t CycloScalar::hash() const {
    std::size_t h = conductor_;
    for (const auto& c : coeffs_)
        h ^= hash_value(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

}  // namespace matfree
