#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace nilrep {

// Exact rational scalar. mpq_class keeps the canonical form invariant
// (gcd(num, den) = 1, den > 0) across all arithmetic.
using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p" or "p/q" (decimal-free integers). Throws on malformed input
// or zero denominator.
inline Rational rational_from_string(const std::string& s) {
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    for (char c : s)
        if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
            throw std::invalid_argument("malformed rational literal: " + s);
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational literal: " + s);
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

// "p" when the denominator is 1, otherwise "p/q".
inline std::string rational_to_string(const Rational& q) {
    return q.get_str();
}

inline bool is_canonical(const Rational& q) {
    if (q.get_den() <= 0)
        return false;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return g == 1 || q.get_num() == 0;
}

} // namespace nilrep
