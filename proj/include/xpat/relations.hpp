#pragma once

#include <array>
#include <optional>

#include "xpat/forms.hpp"

namespace xpat {

// |c_i * L_i - c_j * L_j| = value as an exact polynomial identity; sign
// records which side is larger, so c_i*L_i - c_j*L_j = sign * value.
struct Relation {
    std::size_t i = 0;
    std::size_t j = 1;
    Int ci;
    Int cj;
    Int value;
    int sign = 1;

    bool operator==(const Relation&) const = default;
};

struct RelationSystem {
    std::vector<LinearForm> forms;
    std::vector<Relation> relations;
    std::optional<AdmissibilityCertificate> certificate;

    bool is_triple() const;
};

// Exact check of both identities: c_i*a_i = c_j*a_j and
// c_i*b_i - c_j*b_j = sign*value with value > 0. Never sampled.
bool verify_relation(std::span<const LinearForm> forms, const Relation& rel);

bool verify_all_relations(const RelationSystem& sys);

// The common relation value when all relations share one; empty otherwise.
std::optional<Int> common_value(const RelationSystem& sys);

// For each form of a triple, its two relation coefficients, ordered by the
// other form's index.
std::array<std::pair<Int, Int>, 3> coefficient_pairs(const RelationSystem& sys);

std::array<std::pair<ExponentPattern, ExponentPattern>, 3>
coefficient_pair_patterns(const RelationSystem& sys);

// True iff both coefficients of every pair have equal exponent patterns.
bool pairs_match(const RelationSystem& sys);

// Least pattern containing every coefficient pattern as a sub-multiset
// (pointwise multiplicity maximum). Requires pairs_match.
ExponentPattern minimal_completion_target(const RelationSystem& sys);

// The patterns of all relation coefficients in system order.
std::vector<ExponentPattern> coefficient_patterns(const RelationSystem& sys);

} // namespace xpat
