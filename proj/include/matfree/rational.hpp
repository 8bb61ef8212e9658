#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace matfree {

// Exact rational numbers. mpq_class keeps values canonical (coprime
// numerator/denominator, denominator > 0), which is exactly the invariant the
// rest of the library relies on for equality tests and printing.
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Parses "n" or "n/d" with optional leading '-'. Throws std::invalid_argument
// on malformed input or a zero denominator.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t pos = text[0] == '-' || text[0] == '+' ? 1 : 0;
    if (pos == text.size()) throw std::invalid_argument("malformed rational literal: " + text);
    bool seen_slash = false;
    for (std::size_t i = pos; i < text.size(); ++i) {
        char c = text[i];
        if (c == '/') {
            if (seen_slash || i == pos || i + 1 == text.size())
                throw std::invalid_argument("malformed rational literal: " + text);
            seen_slash = true;
            continue;
        }
        if (c < '0' || c > '9') throw std::invalid_argument("malformed rational literal: " + text);
    }
    Rational q(text);
    if (seen_slash && mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
        throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

inline std::size_t hash_value(const Rational& q) {
    // Cheap limb mix; collisions only cost a compare of exact values.
    auto mix = [](std::size_t h, const mpz_srcptr z) {
        h ^= static_cast<std::size_t>(mpz_sgn(z)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        std::size_t limbs = mpz_size(z);
        for (std::size_t i = 0; i < limbs; ++i)
            h ^= static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i))) +
                 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    };
    std::size_t h = 0;
    h = mix(h, mpq_numref(q.get_mpq_t()));
    h = mix(h, mpq_denref(q.get_mpq_t()));
    return h;
}

}  // namespace matfree
