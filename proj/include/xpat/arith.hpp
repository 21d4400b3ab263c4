#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "xpat/ints.hpp"

namespace xpat {

// Multiset of positive exponents, kept sorted non-increasing so equality and
// serialization are canonical.
class ExponentPattern {
  public:
    ExponentPattern() = default;
    explicit ExponentPattern(std::vector<std::uint32_t> exps);

    static ExponentPattern parse(const std::string& text); // "2,1,1"; "" is the empty pattern

    const std::vector<std::uint32_t>& exponents() const { return exps_; }
    bool empty() const { return exps_.empty(); }
    std::size_t size() const { return exps_.size(); }

    // Sub-multiset containment: every exponent occurs at least as often here.
    bool contains(const ExponentPattern& sub) const;

    // Multiset sum; the pattern of a product of coprime numbers.
    ExponentPattern msum(const ExponentPattern& other) const;

    // Pointwise multiplicity maximum; the least pattern containing both.
    ExponentPattern join(const ExponentPattern& other) const;

    // Multiset difference; requires contains(sub).
    ExponentPattern minus(const ExponentPattern& sub) const;

    std::string str() const;

    bool operator==(const ExponentPattern&) const = default;

  private:
    std::vector<std::uint32_t> exps_;
};

struct FactorEntry {
    Int prime;
    std::uint32_t exp;
    bool operator==(const FactorEntry&) const = default;
};

// Exact prime factorization, primes strictly increasing, value 1 has no factors.
struct Factorization {
    Int value = 1;
    std::vector<FactorEntry> factors;

    ExponentPattern pattern() const;
    Int recompose() const;
    std::string str() const; // "2^3*3^2*5"; "1" for the empty product
    bool operator==(const Factorization&) const = default;
};

// a even, b odd, -a*q2 + b*q1 = 1.
struct BezoutPair {
    Int a;
    Int b;
    Int q1;
    Int q2;
};

struct CrtSolution {
    Int x;       // unique solution in [0, modulus)
    Int modulus; // product of the input moduli
};

// The d, Omega, omega, mu, lambda profile of an exponent pattern.
struct ArithValues {
    Int d;
    std::uint64_t big_omega = 0;
    std::uint64_t small_omega = 0;
    int mu = 1;
    int lambda = 1;
};

// Deterministic Bezout pair for odd coprime q1, q2: the solution of
// -a*q2 + b*q1 = 1 with the smallest nonnegative even a.
BezoutPair bezout_parity(const Int& q1, const Int& q2);

// Simultaneous congruences x = r_i mod m_i with pairwise coprime moduli.
CrtSolution crt(std::span<const std::pair<Int, Int>> residue_modulus);

// Trial division; exact for any positive input, intended for desk-scale
// values and for larger numbers whose prime factors are all small.
Factorization factorize(const Int& x);

ExponentPattern pattern_of(const Factorization& f);

ArithValues arith_functions(const ExponentPattern& p);

// x as a product of exactly r distinct primes, all strictly above `floor`;
// empty if x is not of that shape.
std::optional<Factorization> is_Er(const Int& x, unsigned r, const Int& floor);

// Smallest-prime-factor table for 2..limit. Built once, then read-only.
class SpfSieve {
  public:
    explicit SpfSieve(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }
    std::uint32_t spf(std::uint64_t x) const;
    bool is_prime(std::uint64_t x) const { return x >= 2 && spf(x) == x; }

    Factorization factorize(std::uint64_t x) const;

    // Exponent pattern without materializing the primes; `scratch` is reused
    // by range scans to stay allocation-free.
    void pattern_of(std::uint64_t x, std::vector<std::uint32_t>& scratch) const;

  private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> table_;
};

// Primes in ascending order via trial division; enough for fresh-prime
// selection and other small scans.
std::uint64_t next_prime_above(std::uint64_t x);
bool is_prime_u64(std::uint64_t x);

} // namespace xpat
