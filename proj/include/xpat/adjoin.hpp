#pragma once

#include <set>

#include "xpat/relations.hpp"

namespace xpat {

// One application of the adjoining transformation: K_i(m) = L_i(modulus*m + x)/r_i
// with L_i(x) = r_i mod r_i^2 and modulus = (prod r_i)^2.
struct AdjoinPlan {
    std::vector<Int> r;
    Int x;
    Int modulus;
};

struct AdjoinResult {
    AdjoinPlan plan;
    RelationSystem system;
};

// Check gcd(r_i, a_i) = gcd(r_i, r_j) = gcd(r_i, det(L_i, L_j)) = 1 for i != j,
// throwing an error that names the offending pair.
void check_adjoin_conditions(std::span<const LinearForm> forms, std::span<const Int> r);

// Multiply r_i into every relation coefficient of form i without changing any
// relation value; the output is admissible again (checked, not assumed).
AdjoinResult adjoin(const RelationSystem& sys, std::span<const Int> r);

// Smallest primes not in `forbidden` and above `floor`, assembled into one
// integer per pattern part: larger exponents go to smaller fresh primes, parts
// in order, every prime used once. Empty part yields 1.
std::vector<Int> select_fresh_primes(std::span<const ExponentPattern> parts,
                                     const std::set<Int>& forbidden, const Int& floor = 0);

// Primes dividing any slope, any pairwise determinant, or any relation
// coefficient of the system; the set fresh primes must avoid.
std::set<Int> completion_forbidden_primes(const RelationSystem& sys);

// Adjoin fresh primes so that every relation coefficient of the output has
// exponent pattern exactly `target`. Requires matching pairs and a target
// containing every coefficient pattern.
AdjoinResult complete_to_pattern(const RelationSystem& sys, const ExponentPattern& target,
                                 const Int& forbidden_floor = 0);

} // namespace xpat
