#include "xpat/witness.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace xpat {

namespace {

// Trial-division re-verification, independent of the sieve that found x.
Witness make_checked_witness(const Int& x, const Int& n, const ExponentPattern& target) {
    Witness w;
    w.x = x;
    w.n = n;
    w.pattern = target;
    w.fx = factorize(x);
    w.fxn = factorize(x + n);
    if (w.fx.recompose() != x || w.fxn.recompose() != x + n)
        fail(ErrorKind::Verification, "witness factorization does not recompose");
    if (!(w.fx.pattern() == target) || !(w.fxn.pattern() == target))
        fail(ErrorKind::Verification, "witness " + x.get_str() + " fails trial-division re-check");
    return w;
}

} // namespace

void search_direct(const Int& n, const ExponentPattern& target, std::uint64_t x_bound,
                   const SpfSieve& sieve, const WitnessSink& emit, unsigned workers) {
    if (n < 1) fail(ErrorKind::Precondition, "shift must be positive");
    if (!fits_u64(n) || to_u64(n) > sieve.limit())
        fail(ErrorKind::Precondition, "shift exceeds sieve capacity");
    std::uint64_t shift = to_u64(n);
    if (x_bound > sieve.limit() || x_bound + shift > sieve.limit())
        fail(ErrorKind::Precondition, "x_bound + n exceeds sieve capacity (" +
                                          std::to_string(sieve.limit()) + ")");
    const auto& want = target.exponents();

    const std::uint64_t chunk = 1 << 16;
    const std::uint64_t first = 2;
    if (x_bound < first) return;
    std::uint64_t total_chunks = (x_bound - first) / chunk + 1;

    std::vector<std::vector<std::uint64_t>> hits(total_chunks);
    std::atomic<std::uint64_t> next{0};
    auto work = [&]() {
        std::vector<std::uint32_t> pat_x, pat_xn;
        for (;;) {
            std::uint64_t c = next.fetch_add(1);
            if (c >= total_chunks) return;
            std::uint64_t lo = first + c * chunk;
            std::uint64_t hi = std::min(x_bound, lo + chunk - 1);
            for (std::uint64_t x = lo; x <= hi; ++x) {
                sieve.pattern_of(x, pat_x);
                if (pat_x != want) continue;
                sieve.pattern_of(x + shift, pat_xn);
                if (pat_xn != want) continue;
                hits[c].push_back(x);
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    for (std::uint64_t c = 0; c < total_chunks; ++c)
        for (std::uint64_t x : hits[c]) {
            Witness w = make_checked_witness(Int(static_cast<unsigned long>(x)), n, target);
            w.source = Witness::Source::Direct;
            if (!emit(w)) return;
        }
}

std::vector<Witness> search_direct_collect(const Int& n, const ExponentPattern& target,
                                           std::uint64_t x_bound, const SpfSieve& sieve,
                                           std::size_t limit, unsigned workers) {
    std::vector<Witness> out;
    search_direct(n, target, x_bound, sieve, [&](const Witness& w) {
        out.push_back(w);
        return out.size() < limit;
    }, workers);
    return out;
}

Int min_certificate_floor(const RelationSystem& sys) {
    Int max_prime = 1;
    auto scan = [&](const Int& v) {
        if (v == 0) return;
        for (const auto& fe : factorize(abs(v)).factors) max_prime = std::max(max_prime, fe.prime);
    };
    for (const auto& L : sys.forms) scan(L.a);
    for (std::size_t i = 0; i < sys.forms.size(); ++i)
        for (std::size_t j = i + 1; j < sys.forms.size(); ++j)
            scan(determinant(sys.forms[i], sys.forms[j]));
    for (const auto& rel : sys.relations) {
        scan(rel.ci);
        scan(rel.cj);
    }
    return max_prime + 1;
}

namespace {

// One m against every relation of the system, in relation order.
void scan_one_m(const RelationSystem& sys, const Int& n, const ExponentPattern& claimed,
                const Int& m, const Int& C, std::vector<Witness>& out) {
    for (const auto& rel : sys.relations) {
        Int vi = sys.forms[rel.i](m);
        Int vj = sys.forms[rel.j](m);
        if (vi < 1 || vj < 1) continue;
        auto fi = is_Er(vi, 2, C);
        if (!fi) continue;
        auto fj = is_Er(vj, 2, C);
        if (!fj) continue;
        Int xi = rel.ci * vi;
        Int xj = rel.cj * vj;
        Int x = std::min(xi, xj);
        if (std::max(xi, xj) != x + rel.value)
            fail(ErrorKind::Verification, "relation identity broke in witness scan");
        // claimed pattern re-checked by independent trial division;
        // a mismatch would falsify the construction.
        Witness w = make_checked_witness(x, n, claimed);
        w.source = Witness::Source::Certificate;
        w.m = m;
        w.form_i = rel.i;
        w.form_j = rel.j;
        out.push_back(std::move(w));
    }
}

} // namespace

void search_via_system(const RelationSystem& sys, const Int& n, const ExponentPattern& claimed,
                       const Int& m_bound, const Int& C, const WitnessSink& emit,
                       unsigned workers) {
    if (!verify_all_relations(sys))
        fail(ErrorKind::Precondition, "system relations do not verify");
    if (common_value(sys) != std::optional<Int>(n))
        fail(ErrorKind::Precondition, "system relations do not share value n");
    Int min_floor = min_certificate_floor(sys) - 1;
    if (C < min_floor)
        fail(ErrorKind::Precondition, "floor " + C.get_str() +
                                          " is below the largest certificate prime " +
                                          min_floor.get_str());
    if (m_bound < 1) return;

    if (workers <= 1) {
        std::vector<Witness> found;
        for (Int m = 1; m <= m_bound; ++m) {
            found.clear();
            scan_one_m(sys, n, claimed, m, C, found);
            for (auto& w : found)
                if (!emit(w)) return;
        }
        return;
    }

    // fixed-size m-chunks, results merged in chunk order
    const std::uint64_t chunk = 64;
    Int total_big = (m_bound - 1) / chunk + 1;
    if (!fits_u64(total_big))
        fail(ErrorKind::Precondition, "m_bound too large for a parallel scan");
    std::uint64_t total_chunks = to_u64(total_big);
    std::vector<std::vector<Witness>> hits(total_chunks);
    std::vector<std::string> errors(total_chunks);
    std::atomic<std::uint64_t> next{0};
    auto work = [&]() {
        for (;;) {
            std::uint64_t c = next.fetch_add(1);
            if (c >= total_chunks) return;
            Int lo = Int(static_cast<unsigned long>(c)) * chunk + 1;
            Int hi = lo + chunk - 1;
            if (hi > m_bound) hi = m_bound;
            try {
                for (Int m = lo; m <= hi; ++m) scan_one_m(sys, n, claimed, m, C, hits[c]);
            } catch (const std::exception& e) {
                errors[c] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();

    for (std::uint64_t c = 0; c < total_chunks; ++c) {
        if (!errors[c].empty()) fail(ErrorKind::Verification, errors[c]);
        for (auto& w : hits[c])
            if (!emit(w)) return;
    }
}

void search_via_certificate(const ConstructionCertificate& cert, const Int& m_bound,
                            const WitnessSink& emit, std::optional<Int> floor, unsigned workers) {
    Int C = floor ? *floor : min_certificate_floor(cert.completed);
    search_via_system(cert.completed, cert.shift, cert.final_pattern, m_bound, C, emit, workers);
}

std::vector<Witness> search_via_certificate_collect(const ConstructionCertificate& cert,
                                                    const Int& m_bound, std::size_t limit,
                                                    std::optional<Int> floor, unsigned workers) {
    std::vector<Witness> out;
    search_via_certificate(cert, m_bound, [&](const Witness& w) {
        out.push_back(w);
        return out.size() < limit;
    }, floor, workers);
    return out;
}

WitnessReport witness_report(std::span<const Witness> witnesses, const ExponentPattern& target) {
    WitnessReport rep;
    rep.values = arith_functions(target);
    for (const auto& w : witnesses) {
        ++rep.count;
        if (!rep.first) rep.first = w.x;
        int decade = 0;
        for (Int v = w.x; v >= 10; v /= 10) ++decade;
        rep.per_decade[decade] += 1;
    }
    return rep;
}

} // namespace xpat
