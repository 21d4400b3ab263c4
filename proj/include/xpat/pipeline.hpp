#pragma once

#include "xpat/adjoin.hpp"

namespace xpat {

// Shift classes. classify_shift returns one of the first six; shift2 traces
// refine to case1/case2 once the E2 pair fixes j.
enum class CaseLabel {
    C1a,         // 4 | n
    C1b,         // n = 2 mod 4
    C2a,         // n odd, 3 not| n, 5 | n
    C2aStrong,   // n odd, 3 not| n, 5 not| n
    C2b,         // n odd, 3 | n, 5 not| n
    Shift2,      // n odd, 15 | n (j not yet known)
    Shift2Case1, // j = 2
    Shift2Case2, // j in {3, 5}
};

const char* case_name(CaseLabel label);
CaseLabel parse_case(const std::string& name);

CaseLabel classify_shift(const Int& n);

// Pair of odd E2 numbers 2j apart, coprime to the shift, with the
// parity-constrained Bezout data the shift2 construction needs.
struct E2Pair {
    Int q1;
    Int q2;
    unsigned j = 2; // q2 = q1 + 2j, j in {2, 3, 5}
    unsigned g = 1; // 1 if j = 2, else j
    Int p11, p12;   // q1 = p11 * p12, p11 < p12
    Int p21, p22;   // q2 = p21 * p22, p21 < p22
    BezoutPair bezout;
};

struct E2SearchParams {
    Int floor = 5;                  // all four primes must exceed this
    std::uint64_t bound = 1000000;  // cap on q1
};

// First valid pair in deterministic order: q1 ascending, then j in 2, 3, 5.
// Throws a search-exhausted error when no pair exists up to the bound.
E2Pair find_e2_pair(const Int& n, const E2SearchParams& params = {});

// One stage of the construction chain: every form maps as
// F_i(m) -> F_i(r*m + x) / divisors[i], coefficients pick up the divisors.
struct TraceStep {
    std::string kind; // "reduce", "restrict" or "adjoin"
    Int r;
    Int x;
    std::vector<Int> divisors;
    std::optional<AdjoinPlan> plan; // adjoin steps only
    RelationSystem system;          // the stage's result
};

struct CaseTrace {
    CaseLabel label = CaseLabel::C1a;
    std::optional<Int> g2, g3, g5, g9;
    std::optional<Int> n2, n3;
    std::optional<E2Pair> pair;
    std::optional<E2SearchParams> e2_params;
    RelationSystem initial;
    std::vector<TraceStep> steps;
};

// Full machine-checkable record of one construction run: the substitution
// chain, the pre-completion triple with matching coefficient pairs, and the
// fresh-prime completion that pins every coefficient to one pattern.
struct ConstructionCertificate {
    Int shift;
    CaseTrace trace;
    RelationSystem system; // pre-completion stage (= last chain stage)
    std::array<std::pair<ExponentPattern, ExponentPattern>, 3> coeff_patterns;
    ExponentPattern minimal_target;
    ExponentPattern completion_target;
    Int completion_floor;
    AdjoinPlan completion_plan;
    RelationSystem completed;
    ExponentPattern final_pattern;       // completion_target + {1,1}
    ExponentPattern sharp_final_pattern; // minimal_target + {1,1}
};

struct ConstructOptions {
    std::optional<ExponentPattern> target; // default: per-case target
    E2SearchParams e2;
    Int completion_floor = 0;
};

// The per-case coefficient pattern the construction completes to by default.
ExponentPattern default_case_target(CaseLabel label, const Int& n);

// Witness pattern the default construction claims for shift n.
ExponentPattern expected_final_pattern(const Int& n);

// Rebuild relations after the substitution m -> r*m + x followed by exact
// division of form i by divisors[i]; relation values never change.
RelationSystem apply_substitution(const RelationSystem& sys, const Int& r, const Int& x,
                                  std::span<const Int> divisors);

// Adjoin the E2 pair's primes so the coefficient pairs match: j = 2 uses
// r = (p21^2 * p22, p11, 1), otherwise r = (p21, 1, 1).
AdjoinResult shift2_adjoin(const E2Pair& pair, const RelationSystem& sys);

// Run the whole case analysis for shift n and emit a verified certificate.
ConstructionCertificate construct_triple(const Int& n, const ConstructOptions& opts = {});

// Re-verify a certificate from scratch: every identity, every residue, every
// pattern, and the deterministic chain reconstruction. Throws on any failure.
void verify_certificate(const ConstructionCertificate& cert);

} // namespace xpat
