#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "xpat/arith.hpp"
#include "xpat/ints.hpp"

namespace xpat {

// a*m + b with a > 0, viewed both as a polynomial and as a function of m.
struct LinearForm {
    Int a;
    Int b;

    LinearForm() : a(1), b(0) {}
    LinearForm(Int slope, Int constant);

    Int operator()(const Int& m) const { return a * m + b; }

    bool reduced() const { return gcd(a, b) == 1; }

    std::string str() const;                       // "3*m+1", "4*m-3"
    static LinearForm parse(const std::string& s); // inverse of str()

    bool operator==(const LinearForm&) const = default;
};

Int evaluate(const LinearForm& L, const Int& m);

struct ContentSplit {
    Int content;      // g = gcd(a, |b|), or a when b = 0
    LinearForm reduced;
};

// Factor out the content so the returned form is reduced; L = content * reduced.
ContentSplit content_and_reduce(const LinearForm& L);

// The form K with d*K(m) = L(r*m + x) for all m; errors if a coefficient of
// the substituted form is not divisible by d.
LinearForm substitute_divide(const LinearForm& L, const Int& r, const Int& x, const Int& d);

// |a_L * b_K - b_L * a_K|
Int determinant(const LinearForm& L, const LinearForm& K);

// Witness residues t_p with prod L_i(t_p) != 0 mod p, one per prime p <= k,
// plus the per-form reducedness record.
struct AdmissibilityCertificate {
    std::size_t k = 0;
    std::map<std::uint64_t, Int> witnesses; // prime -> t_p in [0, p)
    std::vector<bool> reduced_flags;
};

// Smallest residue in [0, p) avoiding every root, or empty when the forms
// cover all residues mod p.
std::optional<Int> p_admissible(std::span<const LinearForm> forms, std::uint64_t p);

// Reduced forms are p-admissible for every p > k (at most one root each, so
// pigeonhole leaves a residue); checking p <= k therefore decides
// admissibility outright.
std::optional<AdmissibilityCertificate> admissible(std::span<const LinearForm> forms);

// Re-check a stored certificate against the forms it claims to witness.
bool check_certificate(std::span<const LinearForm> forms, const AdmissibilityCertificate& cert);

std::vector<LinearForm> parse_forms(const std::string& s); // ";"-separated tuple
std::string format_forms(std::span<const LinearForm> forms);

} // namespace xpat
