#include "xpat/pipeline.hpp"

#include <initializer_list>

namespace xpat {

namespace {

ExponentPattern pat(std::initializer_list<std::uint32_t> exps) {
    return ExponentPattern(std::vector<std::uint32_t>(exps));
}

const ExponentPattern kPairPattern = pat({1, 1});

bool same_system(const RelationSystem& a, const RelationSystem& b) {
    return a.forms == b.forms && a.relations == b.relations;
}

// L1 = 2m+n, L2 = 3m+n, L3 = 5m+2n with 3L1-2L2 = 5L1-2L3 = 3L3-5L2 = n.
RelationSystem shift1_base(const Int& n) {
    RelationSystem sys;
    sys.forms = {LinearForm(2, n), LinearForm(3, n), LinearForm(5, 2 * n)};
    sys.relations = {
        Relation{0, 1, 3, 2, n, +1},
        Relation{0, 2, 5, 2, n, +1},
        Relation{1, 2, 5, 3, n, -1},
    };
    return sys;
}

// L1 = q1*m + a2*n, L2 = 2*q2*m + b*n, L3 = (4j/g)*m + (b-a)*(n/g), carrying
// q1*L2 - 2*q2*L1 = g*q1*L3 - 4j*L1 = g*q2*L3 - 2j*L2 = n.
RelationSystem shift2_base(const E2Pair& pair, const Int& n) {
    Int a2 = exact_div(pair.bezout.a, 2, "even bezout coefficient");
    Int j(pair.j), g(pair.g);
    Int n_over_g = exact_div(n, g, "n/g");
    RelationSystem sys;
    sys.forms = {
        LinearForm(pair.q1, a2 * n),
        LinearForm(2 * pair.q2, pair.bezout.b * n),
        LinearForm(exact_div(4 * j, g, "4j/g"), (pair.bezout.b - pair.bezout.a) * n_over_g),
    };
    sys.relations = {
        Relation{0, 1, 2 * pair.q2, pair.q1, n, -1},
        Relation{0, 2, 4 * j, g * pair.q1, n, -1},
        Relation{1, 2, 2 * j, g * pair.q2, n, -1},
    };
    return sys;
}

struct StepSpec {
    std::string kind;
    Int r;
    Int x;
    std::vector<Int> divisors;
};

// The case's substitution chain after the base triple; adjoin steps carry the
// multipliers in `divisors` and get their (r, x) from the CRT solution.
std::vector<StepSpec> chain_spec(CaseLabel label, const Int& n, const E2Pair* pair) {
    std::vector<StepSpec> steps;
    switch (label) {
        case CaseLabel::C1a:
        case CaseLabel::C1b:
        case CaseLabel::C2a:
        case CaseLabel::C2aStrong:
        case CaseLabel::C2b: {
            steps.push_back({"reduce", 1, 0, {gcd(2, n), gcd(3, n), gcd(5, n)}});
            if (label == CaseLabel::C1b) {
                steps.push_back({"restrict", 4, exact_div(n, 2, "n2"), {2, 1, 1}});
            } else if (label == CaseLabel::C2a || label == CaseLabel::C2aStrong) {
                steps.push_back({"restrict", 2, 0, {1, 1, 2}});
                steps.push_back({"restrict", 3, n, {1, 1, 3}});
            } else if (label == CaseLabel::C2b) {
                Int g9 = gcd(9, n);
                steps.push_back({"restrict", 2, 0, {1, 1, 2}});
                steps.push_back({"restrict", 15, -4 * n, {15, exact_div(g9, 3, "g9/3"), 3}});
            }
            break;
        }
        case CaseLabel::Shift2Case1:
            steps.push_back({"adjoin", 0, 0, {pair->p21 * pair->p21 * pair->p22, pair->p11, 1}});
            break;
        case CaseLabel::Shift2Case2:
            steps.push_back({"adjoin", 0, 0, {pair->p21, 1, 1}});
            break;
        case CaseLabel::Shift2:
            fail(ErrorKind::Precondition, "shift2 chain needs the refined case label");
    }
    return steps;
}

void require(bool ok, const std::string& msg) {
    if (!ok) fail(ErrorKind::Verification, "certificate check failed: " + msg);
}

} // namespace

const char* case_name(CaseLabel label) {
    switch (label) {
        case CaseLabel::C1a: return "1a";
        case CaseLabel::C1b: return "1b";
        case CaseLabel::C2a: return "2a";
        case CaseLabel::C2aStrong: return "2a-strong";
        case CaseLabel::C2b: return "2b";
        case CaseLabel::Shift2: return "shift2";
        case CaseLabel::Shift2Case1: return "shift2-case1";
        case CaseLabel::Shift2Case2: return "shift2-case2";
    }
    return "?";
}

CaseLabel parse_case(const std::string& name) {
    for (CaseLabel label : {CaseLabel::C1a, CaseLabel::C1b, CaseLabel::C2a, CaseLabel::C2aStrong,
                            CaseLabel::C2b, CaseLabel::Shift2, CaseLabel::Shift2Case1,
                            CaseLabel::Shift2Case2})
        if (name == case_name(label)) return label;
    fail(ErrorKind::Parse, "unknown case label '" + name + "'");
}

CaseLabel classify_shift(const Int& n) {
    if (n < 1) fail(ErrorKind::Precondition, "shift must be a positive integer");
    if (divides(4, n)) return CaseLabel::C1a;
    if (is_even(n)) return CaseLabel::C1b;
    if (!divides(3, n)) return divides(5, n) ? CaseLabel::C2a : CaseLabel::C2aStrong;
    if (!divides(5, n)) return CaseLabel::C2b;
    return CaseLabel::Shift2;
}

E2Pair find_e2_pair(const Int& n, const E2SearchParams& params) {
    if (classify_shift(n) != CaseLabel::Shift2)
        fail(ErrorKind::Precondition,
             "E2 pair search needs an odd shift divisible by 15, got " + n.get_str());
    Int two_n = 2 * n;
    auto qualifies = [&](std::uint64_t q, Factorization& out) {
        auto f = is_Er(Int(static_cast<unsigned long>(q)), 2, params.floor);
        if (!f) return false;
        for (const auto& fe : f->factors)
            if (divides(fe.prime, two_n)) return false;
        out = std::move(*f);
        return true;
    };
    for (std::uint64_t q1 = 3; q1 <= params.bound; q1 += 2) {
        Factorization f1;
        if (!qualifies(q1, f1)) continue;
        for (unsigned j : {2u, 3u, 5u}) {
            Factorization f2;
            if (!qualifies(q1 + 2 * j, f2)) continue;
            bool distinct = f1.factors[0].prime != f2.factors[0].prime &&
                            f1.factors[0].prime != f2.factors[1].prime &&
                            f1.factors[1].prime != f2.factors[0].prime &&
                            f1.factors[1].prime != f2.factors[1].prime;
            if (!distinct) continue;
            E2Pair pair;
            pair.q1 = f1.value;
            pair.q2 = f2.value;
            pair.j = j;
            pair.g = (j == 2) ? 1 : j;
            pair.p11 = f1.factors[0].prime;
            pair.p12 = f1.factors[1].prime;
            pair.p21 = f2.factors[0].prime;
            pair.p22 = f2.factors[1].prime;
            pair.bezout = bezout_parity(pair.q1, pair.q2);
            return pair;
        }
    }
    fail(ErrorKind::SearchExhausted, "no E2 pair with q1 <= " + std::to_string(params.bound) +
                                         " for shift " + n.get_str());
}

ExponentPattern default_case_target(CaseLabel label, const Int& n) {
    switch (label) {
        case CaseLabel::C1a: return pat({1, 1});
        case CaseLabel::C1b: return pat({2, 1, 1});
        case CaseLabel::C2aStrong: return pat({2, 1});
        case CaseLabel::C2a: return pat({2, 1, 1});
        case CaseLabel::C2b: return divides(9, n) ? pat({2, 1}) : pat({2, 1, 1});
        case CaseLabel::Shift2:
        case CaseLabel::Shift2Case1:
        case CaseLabel::Shift2Case2: return pat({3, 2, 1, 1, 1});
    }
    fail(ErrorKind::Precondition, "bad case label");
}

ExponentPattern expected_final_pattern(const Int& n) {
    return default_case_target(classify_shift(n), n).msum(kPairPattern);
}

RelationSystem apply_substitution(const RelationSystem& sys, const Int& r, const Int& x,
                                  std::span<const Int> divisors) {
    if (divisors.size() != sys.forms.size())
        fail(ErrorKind::Precondition, "need one divisor per form");
    RelationSystem out;
    out.forms.reserve(sys.forms.size());
    for (std::size_t i = 0; i < sys.forms.size(); ++i)
        out.forms.push_back(substitute_divide(sys.forms[i], r, x, divisors[i]));
    out.relations.reserve(sys.relations.size());
    for (const auto& rel : sys.relations) {
        Relation nr = rel;
        nr.ci = rel.ci * divisors[rel.i];
        nr.cj = rel.cj * divisors[rel.j];
        out.relations.push_back(std::move(nr));
    }
    for (const auto& rel : out.relations)
        if (!verify_relation(out.forms, rel))
            fail(ErrorKind::Verification, "substituted relation failed exact check");
    return out;
}

AdjoinResult shift2_adjoin(const E2Pair& pair, const RelationSystem& sys) {
    std::vector<Int> r;
    if (pair.j == 2)
        r = {pair.p21 * pair.p21 * pair.p22, pair.p11, 1};
    else
        r = {pair.p21, 1, 1};
    return adjoin(sys, r);
}

ConstructionCertificate construct_triple(const Int& n, const ConstructOptions& opts) {
    CaseLabel cls = classify_shift(n);
    ConstructionCertificate cert;
    cert.shift = n;
    CaseTrace& tr = cert.trace;

    const E2Pair* pair_ptr = nullptr;
    if (cls == CaseLabel::Shift2) {
        tr.e2_params = opts.e2;
        tr.pair = find_e2_pair(n, opts.e2);
        pair_ptr = &*tr.pair;
        tr.label = (tr.pair->j == 2) ? CaseLabel::Shift2Case1 : CaseLabel::Shift2Case2;
        tr.initial = shift2_base(*tr.pair, n);
    } else {
        tr.label = cls;
        tr.initial = shift1_base(n);
        tr.g2 = gcd(2, n);
        tr.g3 = gcd(3, n);
        tr.g5 = gcd(5, n);
        if (is_even(n)) tr.n2 = exact_div(n, 2, "n2");
        if (cls == CaseLabel::C2b) {
            tr.g9 = gcd(9, n);
            tr.n3 = exact_div(n, 3, "n3");
        }
    }
    if (!verify_all_relations(tr.initial))
        fail(ErrorKind::Verification, "base relations failed exact check");

    RelationSystem cur = tr.initial;
    for (const StepSpec& spec : chain_spec(tr.label, n, pair_ptr)) {
        TraceStep step;
        step.kind = spec.kind;
        if (spec.kind == "adjoin") {
            AdjoinResult res = adjoin(cur, spec.divisors);
            step.r = res.plan.modulus;
            step.x = res.plan.x;
            step.divisors = res.plan.r;
            step.plan = res.plan;
            step.system = std::move(res.system);
        } else {
            step.r = spec.r;
            step.x = spec.x;
            step.divisors = spec.divisors;
            step.system = apply_substitution(cur, spec.r, spec.x, spec.divisors);
        }
        cur = step.system;
        tr.steps.push_back(std::move(step));
    }

    cur.certificate = admissible(cur.forms);
    if (!cur.certificate)
        fail(ErrorKind::Verification, "construction produced a non-admissible triple");
    if (!pairs_match(cur))
        fail(ErrorKind::Verification, "construction left non-matching coefficient pairs");

    cert.system = cur;
    cert.coeff_patterns = coefficient_pair_patterns(cur);
    cert.minimal_target = minimal_completion_target(cur);
    cert.completion_target = opts.target ? *opts.target : default_case_target(tr.label, n);
    if (!cert.completion_target.contains(cert.minimal_target))
        fail(ErrorKind::Precondition, "target {" + cert.completion_target.str() +
                                          "} does not contain the minimal completion target {" +
                                          cert.minimal_target.str() + "}");
    cert.completion_floor = opts.completion_floor;
    AdjoinResult completion = complete_to_pattern(cur, cert.completion_target, opts.completion_floor);
    cert.completion_plan = completion.plan;
    cert.completed = std::move(completion.system);
    cert.final_pattern = cert.completion_target.msum(kPairPattern);
    cert.sharp_final_pattern = cert.minimal_target.msum(kPairPattern);

    verify_certificate(cert); // a certificate is never emitted unverified
    return cert;
}

void verify_certificate(const ConstructionCertificate& cert) {
    const Int& n = cert.shift;
    require(n >= 1, "shift must be positive");
    CaseLabel cls = classify_shift(n);
    CaseLabel label = cert.trace.label;
    if (cls == CaseLabel::Shift2)
        require(label == CaseLabel::Shift2Case1 || label == CaseLabel::Shift2Case2,
                "shift class does not match the recorded case label");
    else
        require(label == cls, "shift class does not match the recorded case label");

    // Base triple and case data re-derived from the shift.
    RelationSystem initial_expected;
    const E2Pair* pair_ptr = nullptr;
    if (cls == CaseLabel::Shift2) {
        require(cert.trace.pair.has_value() && cert.trace.e2_params.has_value(),
                "shift2 trace must record the E2 pair and its search parameters");
        const E2Pair& pair = *cert.trace.pair;
        pair_ptr = &pair;
        require((pair.j == 2) == (label == CaseLabel::Shift2Case1), "case label disagrees with j");
        require(pair.j == 2 || pair.j == 3 || pair.j == 5, "j must be 2, 3 or 5");
        require(pair.g == (pair.j == 2 ? 1u : pair.j), "g must be 1 for j=2 and j otherwise");
        require(pair.q2 == pair.q1 + 2 * Int(pair.j), "q2 must equal q1 + 2j");
        require(pair.p11 * pair.p12 == pair.q1 && pair.p21 * pair.p22 == pair.q2,
                "recorded primes do not multiply to q1, q2");
        Int two_n = 2 * n;
        for (const Int& p : {pair.p11, pair.p12, pair.p21, pair.p22}) {
            require(fits_u64(p) && is_prime_u64(to_u64(p)), "E2 factor is not prime");
            require(p > cert.trace.e2_params->floor, "E2 factor does not exceed the floor");
            require(!divides(p, two_n), "E2 factor divides 2n");
        }
        require(pair.p11 != pair.p12 && pair.p21 != pair.p22 && pair.p11 != pair.p21 &&
                    pair.p11 != pair.p22 && pair.p12 != pair.p21 && pair.p12 != pair.p22,
                "the four E2 primes are not distinct");
        const BezoutPair& bz = pair.bezout;
        require(bz.q1 == pair.q1 && bz.q2 == pair.q2, "bezout pair belongs to different moduli");
        require(is_even(bz.a) && is_odd(bz.b), "bezout parity violated");
        require(-bz.a * bz.q2 + bz.b * bz.q1 == 1, "bezout identity violated");
        E2Pair fresh = find_e2_pair(n, *cert.trace.e2_params);
        require(fresh.q1 == pair.q1 && fresh.q2 == pair.q2 && fresh.j == pair.j &&
                    fresh.bezout.a == bz.a && fresh.bezout.b == bz.b,
                "recorded E2 pair is not the deterministic first hit");
        initial_expected = shift2_base(pair, n);
    } else {
        initial_expected = shift1_base(n);
        require(cert.trace.g2 == gcd(2, n) && cert.trace.g3 == gcd(3, n) &&
                    cert.trace.g5 == gcd(5, n),
                "recorded gcd values are wrong");
        if (is_even(n)) require(cert.trace.n2 == exact_div(n, 2, "n2"), "recorded n2 is wrong");
        if (cls == CaseLabel::C2b)
            require(cert.trace.g9 == gcd(9, n) && cert.trace.n3 == exact_div(n, 3, "n3"),
                    "recorded g9 or n3 is wrong");
    }
    require(same_system(cert.trace.initial, initial_expected),
            "recorded base triple differs from the construction");
    require(verify_all_relations(cert.trace.initial), "base relations do not verify");
    require(common_value(cert.trace.initial) == std::optional<Int>(n),
            "base relations do not share value n");

    // Walk the substitution chain, recomputing every stage.
    auto specs = chain_spec(label, n, pair_ptr);
    require(cert.trace.steps.size() == specs.size(), "unexpected number of chain steps");
    RelationSystem cur = cert.trace.initial;
    for (std::size_t s = 0; s < specs.size(); ++s) {
        const TraceStep& step = cert.trace.steps[s];
        require(step.kind == specs[s].kind, "step kind mismatch");
        if (specs[s].kind == "adjoin") {
            AdjoinResult res = adjoin(cur, specs[s].divisors);
            require(step.plan.has_value(), "adjoin step lost its plan");
            require(step.plan->r == res.plan.r && step.plan->x == res.plan.x &&
                        step.plan->modulus == res.plan.modulus,
                    "adjoin plan differs from recomputation");
            require(step.r == res.plan.modulus && step.x == res.plan.x &&
                        step.divisors == res.plan.r,
                    "adjoin step parameters are inconsistent");
            require(same_system(step.system, res.system), "adjoin stage differs from recomputation");
            require(step.system.certificate.has_value() &&
                        check_certificate(step.system.forms, *step.system.certificate),
                    "adjoin stage admissibility certificate fails");
        } else {
            require(step.r == specs[s].r && step.x == specs[s].x &&
                        step.divisors == specs[s].divisors,
                    "substitution step parameters differ from the case analysis");
            RelationSystem res = apply_substitution(cur, step.r, step.x, step.divisors);
            require(same_system(step.system, res), "substitution stage differs from recomputation");
        }
        cur = cert.trace.steps[s].system;
    }

    // Pre-completion triple: exact relations, admissibility, matching pairs.
    require(same_system(cert.system, cur), "certificate system is not the final chain stage");
    require(verify_all_relations(cert.system), "relations do not verify exactly");
    require(common_value(cert.system) == std::optional<Int>(n), "relations do not share value n");
    require(cert.system.certificate.has_value() &&
                check_certificate(cert.system.forms, *cert.system.certificate),
            "admissibility certificate fails re-checking");
    require(pairs_match(cert.system), "coefficient pairs do not have matching patterns");
    auto pats = coefficient_pair_patterns(cert.system);
    for (std::size_t f = 0; f < 3; ++f)
        require(pats[f] == cert.coeff_patterns[f], "recorded coefficient patterns are wrong");
    require(minimal_completion_target(cert.system) == cert.minimal_target,
            "recorded minimal completion target is wrong");
    require(cert.completion_target.contains(cert.minimal_target),
            "completion target does not contain the minimal target");

    // Completion: deterministic fresh-prime adjoin, patterns pinned to target.
    AdjoinResult comp = complete_to_pattern(cert.system, cert.completion_target, cert.completion_floor);
    require(comp.plan.r == cert.completion_plan.r && comp.plan.x == cert.completion_plan.x &&
                comp.plan.modulus == cert.completion_plan.modulus,
            "completion plan differs from recomputation");
    require(same_system(comp.system, cert.completed), "completed system differs from recomputation");
    require(verify_all_relations(cert.completed), "completed relations do not verify exactly");
    require(common_value(cert.completed) == std::optional<Int>(n),
            "completed relations do not share value n");
    require(cert.completed.certificate.has_value() &&
                check_certificate(cert.completed.forms, *cert.completed.certificate),
            "completed admissibility certificate fails re-checking");
    for (const auto& p : coefficient_patterns(cert.completed))
        require(p == cert.completion_target, "completed coefficient pattern differs from target");

    require(cert.final_pattern == cert.completion_target.msum(kPairPattern),
            "final pattern claim is not target plus {1,1}");
    require(cert.sharp_final_pattern == cert.minimal_target.msum(kPairPattern),
            "sharp pattern claim is not minimal target plus {1,1}");
}

} // namespace xpat
