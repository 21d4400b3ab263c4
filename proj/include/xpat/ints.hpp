#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "xpat/error.hpp"

namespace xpat {

// All form and coefficient arithmetic is exact and unbounded; only sieve
// indices use machine words.
using Int = mpz_class;

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

struct ExtGcd {
    Int g; // gcd(a, b), nonnegative
    Int u; // u*a + v*b = g
    Int v;
};

inline ExtGcd ext_gcd(const Int& a, const Int& b) {
    ExtGcd r;
    mpz_gcdext(r.g.get_mpz_t(), r.u.get_mpz_t(), r.v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Nonnegative remainder, also for negative a.
inline Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Inverse of a modulo m; requires gcd(a, m) = 1.
inline Int mod_inverse(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        fail(ErrorKind::Precondition, "no inverse of " + a.get_str() + " modulo " + m.get_str());
    return r;
}

inline bool divides(const Int& d, const Int& a) {
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

// Exact quotient a/d; `what` names the quantity in the error message.
inline Int exact_div(const Int& a, const Int& d, const char* what) {
    if (d == 0 || !divides(d, a))
        fail(ErrorKind::Precondition,
             std::string("non-exact division of ") + what + ": " + a.get_str() + " by " + d.get_str());
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return q;
}

inline Int pow_ui(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline bool is_even(const Int& a) { return mpz_even_p(a.get_mpz_t()) != 0; }
inline bool is_odd(const Int& a) { return mpz_odd_p(a.get_mpz_t()) != 0; }

inline bool fits_u64(const Int& a) { return a >= 0 && mpz_sizeinbase(a.get_mpz_t(), 2) <= 64; }

inline std::uint64_t to_u64(const Int& a) {
    if (!fits_u64(a)) fail(ErrorKind::Precondition, a.get_str() + " does not fit in 64 bits");
    std::uint64_t lo = mpz_getlimbn(a.get_mpz_t(), 0);
    return lo;
}

inline std::string to_string(const Int& a) { return a.get_str(); }

inline Int parse_int(const std::string& s) {
    if (s.empty()) fail(ErrorKind::Parse, "empty integer literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) fail(ErrorKind::Parse, "bad integer literal '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') fail(ErrorKind::Parse, "bad integer literal '" + s + "'");
    return Int(s);
}

} // namespace xpat
