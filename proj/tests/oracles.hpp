#pragma once

// Brute-force reference implementations the real code is tested against.
// Everything here is deliberately naive and independent of the library's
// computation paths.

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "xpat/forms.hpp"

namespace oracle {

inline std::uint64_t divisor_count(std::uint64_t x) {
    std::uint64_t count = 0;
    for (std::uint64_t d = 1; d * d <= x; ++d) {
        if (x % d == 0) {
            count += 2;
            if (d * d == x) --count;
        }
    }
    return count;
}

// prime -> exponent, via the dumbest possible factor scan
inline std::map<std::uint64_t, std::uint32_t> factor_map(std::uint64_t x) {
    std::map<std::uint64_t, std::uint32_t> f;
    for (std::uint64_t d = 2; d <= x; ++d) {
        while (x % d == 0) {
            x /= d;
            ++f[d];
        }
    }
    return f;
}

inline std::vector<std::uint32_t> exponents_sorted(std::uint64_t x) {
    std::vector<std::uint32_t> exps;
    for (const auto& [p, e] : factor_map(x)) exps.push_back(e);
    std::sort(exps.begin(), exps.end(), std::greater<>());
    return exps;
}

inline std::uint64_t big_omega(std::uint64_t x) {
    std::uint64_t s = 0;
    for (const auto& [p, e] : factor_map(x)) s += e;
    return s;
}

inline std::uint64_t small_omega(std::uint64_t x) { return factor_map(x).size(); }

inline int mobius(std::uint64_t x) {
    auto f = factor_map(x);
    for (const auto& [p, e] : f)
        if (e > 1) return 0;
    return f.size() % 2 == 0 ? 1 : -1;
}

inline int liouville(std::uint64_t x) { return big_omega(x) % 2 == 0 ? 1 : -1; }

inline const std::vector<std::uint64_t>& primes_to_101() {
    static const std::vector<std::uint64_t> ps = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                                  43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101};
    return ps;
}

// p-admissibility by direct residue scan, for every prime p <= 101.
inline bool admissible_brute(std::span<const xpat::LinearForm> forms) {
    for (std::uint64_t p : primes_to_101()) {
        xpat::Int m(static_cast<unsigned long>(p));
        bool found = false;
        for (xpat::Int t = 0; t < m && !found; ++t) {
            bool hit = false;
            for (const auto& L : forms)
                if (xpat::mod_floor(L(t), m) == 0) {
                    hit = true;
                    break;
                }
            if (!hit) found = true;
        }
        if (!found) return false;
    }
    return true;
}

} // namespace oracle
