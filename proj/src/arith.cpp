#include "xpat/arith.hpp"

#include <algorithm>
#include <sstream>

namespace xpat {

ExponentPattern::ExponentPattern(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
    for (auto e : exps_)
        if (e == 0) fail(ErrorKind::Precondition, "exponent pattern entries must be >= 1");
    std::sort(exps_.begin(), exps_.end(), std::greater<>());
}

ExponentPattern ExponentPattern::parse(const std::string& text) {
    std::vector<std::uint32_t> exps;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        Int v = parse_int(tok);
        if (v < 1 || v > 0xffffffffu) fail(ErrorKind::Parse, "bad pattern entry '" + tok + "'");
        exps.push_back(static_cast<std::uint32_t>(to_u64(v)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
        if (pos == text.size()) fail(ErrorKind::Parse, "trailing comma in pattern '" + text + "'");
    }
    return ExponentPattern(std::move(exps));
}

bool ExponentPattern::contains(const ExponentPattern& sub) const {
    // Both sides sorted non-increasing: greedy two-pointer multiset inclusion.
    std::size_t i = 0;
    for (std::uint32_t need : sub.exps_) {
        while (i < exps_.size() && exps_[i] > need) ++i;
        if (i == exps_.size() || exps_[i] != need) return false;
        ++i;
    }
    return true;
}

ExponentPattern ExponentPattern::msum(const ExponentPattern& other) const {
    std::vector<std::uint32_t> merged = exps_;
    merged.insert(merged.end(), other.exps_.begin(), other.exps_.end());
    return ExponentPattern(std::move(merged));
}

ExponentPattern ExponentPattern::join(const ExponentPattern& other) const {
    std::vector<std::uint32_t> out;
    std::size_t i = 0, j = 0;
    while (i < exps_.size() || j < other.exps_.size()) {
        if (j == other.exps_.size() || (i < exps_.size() && exps_[i] > other.exps_[j])) {
            out.push_back(exps_[i++]);
        } else if (i == exps_.size() || other.exps_[j] > exps_[i]) {
            out.push_back(other.exps_[j++]);
        } else {
            out.push_back(exps_[i]);
            ++i, ++j;
        }
    }
    return ExponentPattern(std::move(out));
}

ExponentPattern ExponentPattern::minus(const ExponentPattern& sub) const {
    if (!contains(sub))
        fail(ErrorKind::Precondition, "pattern " + str() + " does not contain " + sub.str());
    std::vector<std::uint32_t> out;
    std::size_t j = 0;
    for (std::uint32_t e : exps_) {
        if (j < sub.exps_.size() && sub.exps_[j] == e) {
            ++j;
        } else {
            out.push_back(e);
        }
    }
    return ExponentPattern(std::move(out));
}

std::string ExponentPattern::str() const {
    std::string s;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(exps_[i]);
    }
    return s;
}

ExponentPattern Factorization::pattern() const {
    std::vector<std::uint32_t> exps;
    exps.reserve(factors.size());
    for (const auto& f : factors) exps.push_back(f.exp);
    return ExponentPattern(std::move(exps));
}

Int Factorization::recompose() const {
    Int v = 1;
    for (const auto& f : factors) v *= pow_ui(f.prime, f.exp);
    return v;
}

std::string Factorization::str() const {
    if (factors.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += '*';
        s += factors[i].prime.get_str();
        if (factors[i].exp > 1) s += "^" + std::to_string(factors[i].exp);
    }
    return s;
}

BezoutPair bezout_parity(const Int& q1, const Int& q2) {
    if (q1 < 1 || q2 < 1 || is_even(q1) || is_even(q2))
        fail(ErrorKind::Precondition, "bezout_parity needs odd positive inputs");
    ExtGcd e = ext_gcd(q1, q2);
    if (e.g != 1) fail(ErrorKind::Precondition, "bezout_parity needs coprime inputs");

    // b*q1 - a*q2 = 1 with b = e.u + t*q2, a = -e.v + t*q1. The even residues
    // of a form one class mod 2*q1 since q1 is odd.
    Int a_mod_q1 = mod_floor(-e.v, q1);
    Int a = is_even(a_mod_q1) ? a_mod_q1 : a_mod_q1 + q1;
    Int b = exact_div(1 + a * q2, q1, "bezout numerator");
    if (is_odd(a) || is_even(b) || -a * q2 + b * q1 != 1)
        fail(ErrorKind::Verification, "bezout_parity identity check failed");
    return BezoutPair{a, b, q1, q2};
}

CrtSolution crt(std::span<const std::pair<Int, Int>> residue_modulus) {
    Int x = 0, modulus = 1;
    for (const auto& [r, m] : residue_modulus) {
        if (m < 1) fail(ErrorKind::Precondition, "crt modulus must be >= 1");
        Int g = gcd(modulus, m);
        if (g != 1)
            fail(ErrorKind::Precondition,
                 "crt moduli not pairwise coprime (share " + g.get_str() + ")");
        // x' = x + modulus * t with t = (r - x)/modulus mod m
        Int t = mod_floor((r - x) * mod_inverse(mod_floor(modulus, m), m), m);
        x += modulus * t;
        modulus *= m;
    }
    return CrtSolution{mod_floor(x, modulus), modulus};
}

namespace {

Factorization factorize_u64(std::uint64_t x) {
    Factorization f;
    f.value = Int(static_cast<unsigned long>(x));
    auto strip = [&](std::uint64_t p) {
        std::uint32_t e = 0;
        while (x % p == 0) {
            x /= p;
            ++e;
        }
        if (e) f.factors.push_back({Int(static_cast<unsigned long>(p)), e});
    };
    strip(2);
    for (std::uint64_t d = 3; d * d <= x; d += 2) strip(d);
    if (x > 1) f.factors.push_back({Int(static_cast<unsigned long>(x)), 1});
    return f;
}

} // namespace

Factorization factorize(const Int& x) {
    if (x < 1) fail(ErrorKind::Precondition, "factorize needs a positive integer");
    if (fits_u64(x)) return factorize_u64(to_u64(x));

    Factorization f;
    f.value = x;
    Int rem = x;
    auto strip = [&](const Int& p) {
        std::uint32_t e = 0;
        while (divides(p, rem)) {
            rem = exact_div(rem, p, "factorize");
            ++e;
        }
        if (e) f.factors.push_back({p, e});
    };
    strip(2);
    for (Int d = 3; d * d <= rem; d += 2) {
        strip(d);
        if (fits_u64(rem)) {
            // Finish on the machine-word path once the cofactor is small.
            Factorization tail = factorize_u64(to_u64(rem));
            for (auto& fe : tail.factors) f.factors.push_back(std::move(fe));
            return f;
        }
    }
    if (rem > 1) f.factors.push_back({rem, 1});
    return f;
}

ExponentPattern pattern_of(const Factorization& f) { return f.pattern(); }

ArithValues arith_functions(const ExponentPattern& p) {
    ArithValues v;
    v.d = 1;
    bool squarefree = true;
    for (std::uint32_t k : p.exponents()) {
        v.d *= Int(k + 1ul);
        v.big_omega += k;
        v.small_omega += 1;
        if (k > 1) squarefree = false;
    }
    v.mu = squarefree ? ((v.small_omega % 2 == 0) ? 1 : -1) : 0;
    v.lambda = (v.big_omega % 2 == 0) ? 1 : -1;
    return v;
}

std::optional<Factorization> is_Er(const Int& x, unsigned r, const Int& floor) {
    if (x < 1) fail(ErrorKind::Precondition, "is_Er needs a positive integer");
    Factorization f = factorize(x);
    if (f.factors.size() != r) return std::nullopt;
    for (const auto& fe : f.factors)
        if (fe.exp != 1 || fe.prime <= floor) return std::nullopt;
    return f;
}

SpfSieve::SpfSieve(std::uint64_t limit) : limit_(limit) {
    if (limit < 2) fail(ErrorKind::Precondition, "sieve limit must be >= 2");
    if (limit > 0xfffffffeull) fail(ErrorKind::Precondition, "sieve limit exceeds 32-bit table");
    table_.assign(limit + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (table_[i] == 0) {
            table_[i] = static_cast<std::uint32_t>(i);
            for (std::uint64_t j = i * i; j <= limit; j += i)
                if (table_[j] == 0) table_[j] = static_cast<std::uint32_t>(i);
        }
    }
}

std::uint32_t SpfSieve::spf(std::uint64_t x) const {
    if (x < 2 || x > limit_) fail(ErrorKind::Precondition, "sieve index out of range");
    return table_[x];
}

Factorization SpfSieve::factorize(std::uint64_t x) const {
    if (x < 1 || x > limit_) fail(ErrorKind::Precondition, "sieve index out of range");
    Factorization f;
    f.value = Int(static_cast<unsigned long>(x));
    while (x > 1) {
        std::uint32_t p = table_[x];
        std::uint32_t e = 0;
        while (x % p == 0) {
            x /= p;
            ++e;
        }
        f.factors.push_back({Int(static_cast<unsigned long>(p)), e});
    }
    return f;
}

void SpfSieve::pattern_of(std::uint64_t x, std::vector<std::uint32_t>& scratch) const {
    scratch.clear();
    while (x > 1) {
        std::uint32_t p = table_[x];
        std::uint32_t e = 0;
        while (x % p == 0) {
            x /= p;
            ++e;
        }
        scratch.push_back(e);
    }
    std::sort(scratch.begin(), scratch.end(), std::greater<>());
}

bool is_prime_u64(std::uint64_t x) {
    if (x < 2) return false;
    if (x % 2 == 0) return x == 2;
    for (std::uint64_t d = 3; d * d <= x; d += 2)
        if (x % d == 0) return false;
    return true;
}

std::uint64_t next_prime_above(std::uint64_t x) {
    std::uint64_t c = x + 1;
    if (c <= 2) return 2;
    if (c % 2 == 0) ++c;
    while (!is_prime_u64(c)) c += 2;
    return c;
}

} // namespace xpat
