#pragma once

#include <functional>
#include <map>

#include "xpat/pipeline.hpp"

namespace xpat {

// Concrete x with pattern(x) = pattern(x+n) = pattern, factorizations included.
struct Witness {
    enum class Source { Direct, Certificate };

    Int x;
    Int n;
    ExponentPattern pattern;
    Factorization fx;
    Factorization fxn;
    Source source = Source::Direct;
    Int m = 0;                  // certificate scans: the m that produced it
    std::size_t form_i = 0;     // certificate scans: the relation's form pair
    std::size_t form_j = 0;
};

// Returning false stops the scan after the current item.
using WitnessSink = std::function<bool(const Witness&)>;

// All x <= x_bound with pattern(x) = pattern(x+n) = target, in increasing
// order. Requires x_bound + n within the sieve. Workers scan fixed-size
// chunks whose results are merged in order, so output does not depend on the
// worker count. Every hit is re-verified by trial division before emission.
void search_direct(const Int& n, const ExponentPattern& target, std::uint64_t x_bound,
                   const SpfSieve& sieve, const WitnessSink& emit, unsigned workers = 1);

std::vector<Witness> search_direct_collect(const Int& n, const ExponentPattern& target,
                                           std::uint64_t x_bound, const SpfSieve& sieve,
                                           std::size_t limit = SIZE_MAX, unsigned workers = 1);

// 1 + the largest prime dividing any slope, pairwise determinant or relation
// coefficient; certificate scans refuse smaller floors.
Int min_certificate_floor(const RelationSystem& sys);

// Scan m = 1..m_bound over the system's relations; whenever both forms of a
// relation evaluate to E2 numbers with all prime factors > C, the smaller of
// c_i*F_i(m), c_j*F_j(m) is a witness for the claimed pattern (checked, with
// a hard error on mismatch since that would falsify the construction).
// Workers take fixed-size m-chunks merged in order, so emission is in
// (m, relation) order for any worker count.
void search_via_system(const RelationSystem& sys, const Int& n, const ExponentPattern& claimed,
                       const Int& m_bound, const Int& C, const WitnessSink& emit,
                       unsigned workers = 1);

void search_via_certificate(const ConstructionCertificate& cert, const Int& m_bound,
                            const WitnessSink& emit, std::optional<Int> floor = std::nullopt,
                            unsigned workers = 1);

std::vector<Witness> search_via_certificate_collect(const ConstructionCertificate& cert,
                                                    const Int& m_bound,
                                                    std::size_t limit = SIZE_MAX,
                                                    std::optional<Int> floor = std::nullopt,
                                                    unsigned workers = 1);

struct WitnessReport {
    std::uint64_t count = 0;
    std::optional<Int> first;
    std::map<int, std::uint64_t> per_decade; // floor(log10 x) -> count
    ArithValues values;                      // of the shared pattern
};

WitnessReport witness_report(std::span<const Witness> witnesses, const ExponentPattern& target);

} // namespace xpat
