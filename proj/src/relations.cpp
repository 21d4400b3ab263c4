#include "xpat/relations.hpp"

#include <algorithm>

namespace xpat {

bool RelationSystem::is_triple() const {
    if (forms.size() != 3 || relations.size() != 3) return false;
    // exactly the pairs (0,1), (0,2), (1,2), in any order
    std::array<bool, 3> seen{false, false, false};
    for (const auto& r : relations) {
        std::size_t lo = std::min(r.i, r.j), hi = std::max(r.i, r.j);
        std::size_t slot;
        if (lo == 0 && hi == 1) slot = 0;
        else if (lo == 0 && hi == 2) slot = 1;
        else if (lo == 1 && hi == 2) slot = 2;
        else return false;
        if (seen[slot]) return false;
        seen[slot] = true;
    }
    return seen[0] && seen[1] && seen[2];
}

bool verify_relation(std::span<const LinearForm> forms, const Relation& rel) {
    if (rel.i >= forms.size() || rel.j >= forms.size() || rel.i == rel.j)
        fail(ErrorKind::Precondition, "relation indexes invalid form");
    if (rel.value < 1) return false;
    if (rel.ci < 1 || rel.cj < 1) return false;
    if (rel.sign != 1 && rel.sign != -1) return false;
    const LinearForm& Li = forms[rel.i];
    const LinearForm& Lj = forms[rel.j];
    if (rel.ci * Li.a != rel.cj * Lj.a) return false;
    return rel.ci * Li.b - rel.cj * Lj.b == rel.sign * rel.value;
}

bool verify_all_relations(const RelationSystem& sys) {
    return std::all_of(sys.relations.begin(), sys.relations.end(),
                       [&](const Relation& r) { return verify_relation(sys.forms, r); });
}

std::optional<Int> common_value(const RelationSystem& sys) {
    if (sys.relations.empty()) return std::nullopt;
    Int n = sys.relations.front().value;
    for (const auto& r : sys.relations)
        if (r.value != n) return std::nullopt;
    return n;
}

std::array<std::pair<Int, Int>, 3> coefficient_pairs(const RelationSystem& sys) {
    if (!sys.is_triple())
        fail(ErrorKind::Precondition, "coefficient pairs need a triple with three relations");
    // pair for form f, ordered by the other form's index
    std::array<std::array<Int, 3>, 3> coef{}; // coef[f][other]
    for (const auto& r : sys.relations) {
        coef[r.i][r.j] = r.ci;
        coef[r.j][r.i] = r.cj;
    }
    std::array<std::pair<Int, Int>, 3> out;
    for (std::size_t f = 0; f < 3; ++f) {
        std::vector<Int> two;
        for (std::size_t other = 0; other < 3; ++other)
            if (other != f) two.push_back(coef[f][other]);
        out[f] = {two[0], two[1]};
    }
    return out;
}

std::array<std::pair<ExponentPattern, ExponentPattern>, 3>
coefficient_pair_patterns(const RelationSystem& sys) {
    auto pairs = coefficient_pairs(sys);
    std::array<std::pair<ExponentPattern, ExponentPattern>, 3> out;
    for (std::size_t f = 0; f < 3; ++f)
        out[f] = {factorize(pairs[f].first).pattern(), factorize(pairs[f].second).pattern()};
    return out;
}

bool pairs_match(const RelationSystem& sys) {
    for (const auto& [p, q] : coefficient_pair_patterns(sys))
        if (!(p == q)) return false;
    return true;
}

ExponentPattern minimal_completion_target(const RelationSystem& sys) {
    if (!pairs_match(sys))
        fail(ErrorKind::Precondition, "completion target needs matching coefficient pairs");
    ExponentPattern target;
    for (const auto& [p, q] : coefficient_pair_patterns(sys)) target = target.join(p).join(q);
    return target;
}

std::vector<ExponentPattern> coefficient_patterns(const RelationSystem& sys) {
    std::vector<ExponentPattern> out;
    out.reserve(sys.relations.size() * 2);
    for (const auto& r : sys.relations) {
        out.push_back(factorize(r.ci).pattern());
        out.push_back(factorize(r.cj).pattern());
    }
    return out;
}

} // namespace xpat
