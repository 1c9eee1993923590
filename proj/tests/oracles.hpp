#pragma once

// Test-only reference implementations. Nothing here shares code paths with the library.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using u128 = unsigned __int128;

/// f(n) for small integer coefficients, exact in 128 bits (callers keep |f(n)| < 2^126).
inline __int128 eval(const std::vector<long>& coeffs, long n) {
    __int128 acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * n + *it;
    return acc;
}

/// Plain trial division by 2 and odd d while d*d <= rest.
inline std::vector<std::pair<std::uint64_t, unsigned>> trial_division(std::uint64_t value) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    if (value <= 1) return out;
    auto pull = [&](std::uint64_t d) {
        unsigned e = 0;
        while (value % d == 0) {
            value /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    };
    pull(2);
    for (std::uint64_t d = 3; static_cast<u128>(d) * d <= value; d += 2) pull(d);
    if (value > 1) out.emplace_back(value, 1);
    return out;
}

/// Every weakly decreasing tuple with entries in [1, max_value] and length in [1, max_length].
inline std::vector<std::vector<unsigned>> all_decreasing(unsigned max_value, unsigned max_length) {
    std::vector<std::vector<unsigned>> out;
    std::vector<std::vector<unsigned>> frontier;
    for (unsigned v = 1; v <= max_value; ++v) frontier.push_back({v});
    for (unsigned len = 1; len <= max_length && !frontier.empty(); ++len) {
        std::vector<std::vector<unsigned>> next;
        for (const auto& t : frontier) {
            out.push_back(t);
            for (unsigned v = 1; v <= t.back(); ++v) {
                auto u = t;
                u.push_back(v);
                next.push_back(std::move(u));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

/// Streams every weakly decreasing tuple in the box [1, max_value]^(<= max_length) to `visit`, without storing them.
template <class Visit>
void for_each_decreasing(unsigned max_value, unsigned max_length, Visit&& visit) {
    std::vector<unsigned> t;
    t.reserve(max_length);
    auto rec = [&](auto&& self, unsigned top) -> void {
        for (unsigned v = 1; v <= top; ++v) {
            t.push_back(v);
            visit(t);
            if (t.size() < max_length) self(self, v);
            t.pop_back();
        }
    };
    rec(rec, max_value);
}

/// #{r : t_r >= v}
inline unsigned at_least(const std::vector<unsigned>& t, unsigned v) {
    unsigned k = 0;
    for (unsigned x : t) k += x >= v;
    return k;
}

inline bool sah_ok(const std::vector<unsigned>& t, unsigned d) {
    for (unsigned v = 1; v <= t.front(); ++v)
        if (static_cast<long>(at_least(t, v)) > static_cast<long>(d) - static_cast<long>(v)) return false;
    return true;
}

inline bool generic_ok(const std::vector<unsigned>& t, unsigned d, unsigned u) {
    for (unsigned v = 1; v <= t.front(); ++v) {
        const long cap = std::min<long>(static_cast<long>(u) - 1, static_cast<long>(d) - static_cast<long>(v));
        if (static_cast<long>(at_least(t, v)) > cap) return false;
    }
    return true;
}

/// Position r (1-based) is forbidden when r >= floor(2^(eta-1-floor(log2 v))) + 1.
inline bool baier_dey_ok(const std::vector<unsigned>& t, unsigned eta) {
    for (std::size_t r = 1; r <= t.size(); ++r) {
        unsigned k = 0;
        for (unsigned v = t[r - 1]; v > 1; v /= 2) ++k;
        const long e = static_cast<long>(eta) - 1 - static_cast<long>(k);
        const unsigned long positions = e < 0 ? 0 : 1ul << e;
        if (r >= positions + 1) return false;
    }
    return true;
}

}  // namespace oracle
