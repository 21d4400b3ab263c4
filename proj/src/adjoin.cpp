#include "xpat/adjoin.hpp"

namespace xpat {

void check_adjoin_conditions(std::span<const LinearForm> forms, std::span<const Int> r) {
    if (forms.size() != r.size())
        fail(ErrorKind::Precondition, "adjoin needs one r per form");
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] < 1) fail(ErrorKind::Precondition, "adjoin multipliers must be positive");
        if (gcd(r[i], forms[i].a) != 1)
            fail(ErrorKind::Precondition,
                 "gcd(r_" + std::to_string(i + 1) + ", slope) != 1 for r = " + r[i].get_str());
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (i == j) continue;
            if (gcd(r[i], r[j]) != 1)
                fail(ErrorKind::Precondition, "r_" + std::to_string(i + 1) + " and r_" +
                                                  std::to_string(j + 1) + " are not coprime");
            if (gcd(r[i], determinant(forms[i], forms[j])) != 1)
                fail(ErrorKind::Precondition,
                     "gcd(r_" + std::to_string(i + 1) + ", det(L_" + std::to_string(i + 1) +
                         ", L_" + std::to_string(j + 1) + ")) != 1");
        }
    }
}

AdjoinResult adjoin(const RelationSystem& sys, std::span<const Int> r) {
    if (!admissible(sys.forms))
        fail(ErrorKind::Precondition, "adjoin input system is not admissible");
    check_adjoin_conditions(sys.forms, r);

    // L_i(x) = r_i mod r_i^2, i.e. a_i*x = r_i - b_i mod r_i^2; a_i is
    // invertible there since gcd(a_i, r_i) = 1.
    std::vector<std::pair<Int, Int>> congruences;
    congruences.reserve(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] == 1) {
            congruences.emplace_back(0, 1);
            continue;
        }
        Int mod = r[i] * r[i];
        Int res = mod_floor((r[i] - sys.forms[i].b) * mod_inverse(mod_floor(sys.forms[i].a, mod), mod), mod);
        congruences.emplace_back(res, mod);
    }
    CrtSolution sol = crt(congruences);

    AdjoinResult out;
    out.plan = AdjoinPlan{std::vector<Int>(r.begin(), r.end()), sol.x, sol.modulus};
    out.system.forms.reserve(sys.forms.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        out.system.forms.push_back(substitute_divide(sys.forms[i], sol.modulus, sol.x, r[i]));
    out.system.relations.reserve(sys.relations.size());
    for (const auto& rel : sys.relations) {
        Relation nr = rel;
        nr.ci = rel.ci * r[rel.i];
        nr.cj = rel.cj * r[rel.j];
        out.system.relations.push_back(std::move(nr));
    }

    for (const auto& rel : out.system.relations)
        if (!verify_relation(out.system.forms, rel))
            fail(ErrorKind::Verification, "adjoin output relation failed exact check");
    out.system.certificate = admissible(out.system.forms);
    if (!out.system.certificate)
        fail(ErrorKind::Verification, "adjoin output is not admissible");
    return out;
}

std::vector<Int> select_fresh_primes(std::span<const ExponentPattern> parts,
                                     const std::set<Int>& forbidden, const Int& floor) {
    std::uint64_t candidate = 1;
    auto next_fresh = [&]() {
        for (;;) {
            candidate = next_prime_above(candidate);
            Int p(static_cast<unsigned long>(candidate));
            if (p <= floor) continue;
            if (forbidden.count(p)) continue;
            return p;
        }
    };
    std::vector<Int> out;
    out.reserve(parts.size());
    for (const auto& part : parts) {
        Int r = 1;
        for (std::uint32_t e : part.exponents()) r *= pow_ui(next_fresh(), e);
        out.push_back(r);
    }
    return out;
}

std::set<Int> completion_forbidden_primes(const RelationSystem& sys) {
    std::set<Int> primes;
    auto add = [&](const Int& v) {
        for (const auto& fe : factorize(v).factors) primes.insert(fe.prime);
    };
    for (const auto& L : sys.forms) add(L.a);
    for (std::size_t i = 0; i < sys.forms.size(); ++i)
        for (std::size_t j = i + 1; j < sys.forms.size(); ++j) {
            Int det = determinant(sys.forms[i], sys.forms[j]);
            if (det != 0) add(det);
        }
    for (const auto& rel : sys.relations) {
        add(rel.ci);
        add(rel.cj);
    }
    return primes;
}

AdjoinResult complete_to_pattern(const RelationSystem& sys, const ExponentPattern& target,
                                 const Int& forbidden_floor) {
    auto pair_patterns = coefficient_pair_patterns(sys); // checks triple shape
    if (!pairs_match(sys))
        fail(ErrorKind::Precondition, "completion needs matching coefficient pairs");
    std::vector<ExponentPattern> parts;
    parts.reserve(3);
    for (const auto& [p, q] : pair_patterns) {
        if (!target.contains(p))
            fail(ErrorKind::Precondition, "target pattern {" + target.str() +
                                              "} does not contain coefficient pattern {" + p.str() + "}");
        parts.push_back(target.minus(p));
    }
    auto r = select_fresh_primes(parts, completion_forbidden_primes(sys), forbidden_floor);
    AdjoinResult out = adjoin(sys, r);
    for (const auto& pat : coefficient_patterns(out.system))
        if (!(pat == target))
            fail(ErrorKind::Verification,
                 "completed coefficient has pattern {" + pat.str() + "}, wanted {" + target.str() + "}");
    return out;
}

} // namespace xpat
