#pragma once

#include "lcmlab/bigint.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lcmlab {

/// Thrown when a composite resists Pollard-rho within its iteration budget.
class FactoringError : public std::runtime_error {
public:
    FactoringError(BigInt stuck, std::uint64_t budget)
        : std::runtime_error("factoring budget of " + std::to_string(budget) + " rho iterations exceeded on " +
                             stuck.get_str()),
          stuck_(std::move(stuck)) {}
    const BigInt& stuck() const { return stuck_; }

private:
    BigInt stuck_;
};

/// Sieve of Eratosthenes over odd numbers; returns all primes <= limit.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    out.push_back(2);
    const std::uint64_t half = (limit - 1) / 2;  // index i <-> 2i+3
    std::vector<bool> composite(half, false);
    for (std::uint64_t i = 0; i < half; ++i) {
        if (composite[i]) continue;
        const std::uint64_t p = 2 * i + 3;
        out.push_back(p);
        for (std::uint64_t j = (p * p - 3) / 2; j < half; j += p) composite[j] = true;
    }
    return out;
}

inline bool is_probable_prime(const BigInt& n) {
    return sgn(n) > 0 && mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

/// If n = b^k with k >= 2 maximal, returns (b, k).
inline std::optional<std::pair<BigInt, unsigned>> perfect_power(const BigInt& n) {
    if (n < 4 || !mpz_perfect_power_p(n.get_mpz_t())) return std::nullopt;
    const auto bits = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
    for (unsigned k = bits; k >= 2; --k) {
        BigInt root;
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0 && root > 1) return std::pair{root, k};
    }
    return std::nullopt;
}

struct RhoSchedule {
    std::uint64_t budget = std::uint64_t{1} << 24;  ///< iterations per composite, across all increments
    std::uint64_t seed = 0;                         ///< start value is derived from this
};

namespace detail {

/// One Brent run of x -> x^2 + increment mod n. Returns a divisor (possibly n) or nullopt on budget exhaustion.
inline std::optional<BigInt> brent_run(const BigInt& n, unsigned long increment, const BigInt& start,
                                       std::uint64_t& spent, std::uint64_t budget) {
    constexpr std::uint64_t batch = 128;
    BigInt y = start, x, ys, q = 1, g = 1, diff;
    auto step = [&](BigInt& v) {
        v *= v;
        v += increment;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    std::uint64_t r = 1;
    while (g == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) step(y);
        spent += r;
        for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
            ys = y;
            const std::uint64_t m = std::min(batch, r - k);
            for (std::uint64_t i = 0; i < m; ++i) {
                step(y);
                diff = x - y;
                q *= diff;
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            spent += m;
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            if (spent > budget && g == 1) return std::nullopt;
        }
        r *= 2;
    }
    if (g == n) {
        // the batch overshot; replay it one step at a time
        do {
            step(ys);
            diff = x - ys;
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            ++spent;
        } while (g == 1);
    }
    return g;
}

}  // namespace detail

/// Nontrivial divisor of the odd composite n (not a perfect power) by Brent's rho.
/// Increments follow 1, 3, 5, ... until one run splits n.
inline BigInt pollard_brent(const BigInt& n, const RhoSchedule& schedule) {
    std::uint64_t spent = 0;
    const BigInt span = n - 3;
    for (unsigned long increment = 1;; increment += 2) {
        BigInt start = from_u64(schedule.seed + increment);
        start %= span;
        start += 2;
        auto g = detail::brent_run(n, increment, start, spent, schedule.budget);
        if (!g) throw FactoringError(n, schedule.budget);
        if (*g != n) return *g;
        if (spent > schedule.budget) throw FactoringError(n, schedule.budget);
    }
}

using Factorization = std::map<BigInt, unsigned>;

namespace detail {

inline void factor_into(const BigInt& n, unsigned multiplicity, const RhoSchedule& schedule, Factorization& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n] += multiplicity;
        return;
    }
    if (auto pp = perfect_power(n)) {
        factor_into(pp->first, multiplicity * pp->second, schedule, out);
        return;
    }
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            BigInt rest = n;
            unsigned e = 0;
            while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                ++e;
            }
            out[BigInt(p)] += e * multiplicity;
            factor_into(rest, multiplicity, schedule, out);
            return;
        }
    }
    const BigInt d = pollard_brent(n, schedule);
    BigInt rest = n / d;
    // split off common parts so both halves are factored independently
    BigInt g = gcd(d, rest);
    if (g == 1) {
        factor_into(d, multiplicity, schedule, out);
        factor_into(rest, multiplicity, schedule, out);
        return;
    }
    Factorization sub;
    factor_into(g, 1, schedule, sub);
    BigInt left = n;
    for (const auto& [p, _] : sub) {
        unsigned e = 0;
        while (mpz_divisible_p(left.get_mpz_t(), p.get_mpz_t())) {
            mpz_divexact(left.get_mpz_t(), left.get_mpz_t(), p.get_mpz_t());
            ++e;
        }
        out[p] += e * multiplicity;
    }
    factor_into(left, multiplicity, schedule, out);
}

}  // namespace detail

/// Complete factorization of |n| (n != 0). Throws FactoringError on budget exhaustion.
inline Factorization factorize(const BigInt& n, const RhoSchedule& schedule = {}) {
    if (n == 0) throw std::domain_error("factorize: zero has no factorization");
    Factorization out;
    detail::factor_into(abs(n), 1, schedule, out);
    return out;
}

/// All positive divisors of |n|, ascending.
inline std::vector<BigInt> divisors(const BigInt& n, const RhoSchedule& schedule = {}) {
    std::vector<BigInt> out{1};
    for (const auto& [p, e] : factorize(n, schedule)) {
        const std::size_t base = out.size();
        BigInt pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace lcmlab
