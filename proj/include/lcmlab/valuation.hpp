#pragma once

#include "lcmlab/bigint.hpp"
#include "lcmlab/parallel.hpp"
#include "lcmlab/polynomial.hpp"
#include "lcmlab/primes.hpp"
#include "lcmlab/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lcmlab {

struct PrimePower {
    BigInt p;
    unsigned e = 0;
    bool small = false;  ///< p <= floor(c*N)

    friend bool operator==(const PrimePower& a, const PrimePower& b) { return a.p == b.p && a.e == b.e; }
};

/// A residual of |f(n)| that Pollard-rho could not split within budget.
class ResidualFactoringError : public FactoringError {
public:
    ResidualFactoringError(std::int64_t n, const FactoringError& inner)
        : FactoringError(inner.stuck(), 0), n_(n),
          message_("n=" + std::to_string(n) + ": " + inner.what()) {}
    std::int64_t n() const { return n_; }
    const char* what() const noexcept override { return message_.c_str(); }

private:
    std::int64_t n_;
    std::string message_;
};

/// Complete factorizations of |f(1)|, ..., |f(N)| with a small/large split at floor(c*N).
class FactorizationTable {
public:
    FactorizationTable(Polynomial f, std::int64_t n_max, Rational c, std::vector<std::vector<PrimePower>> entries)
        : f_(std::move(f)), n_max_(n_max), entries_(std::move(entries)) {
        if (static_cast<std::int64_t>(entries_.size()) != n_max_)
            throw std::invalid_argument("FactorizationTable: entry count does not match N");
        values_.reserve(entries_.size());
        for (std::int64_t n = 1; n <= n_max_; ++n) {
            values_.push_back(evaluate(f_, BigInt(n)));
            const auto& v = values_.back();
            if (v == 0 || v == 1 || v == -1) {
                skipped_.push_back(n);
                if (v == 0) zeros_.push_back(n);
            }
        }
        set_cutoff(c);
    }

    const Polynomial& f() const { return f_; }
    std::int64_t N() const { return n_max_; }
    Rational cutoff_c() const { return c_; }
    /// floor(c*N); primes up to and including this bound are "small".
    std::int64_t cutoff_bound() const { return bound_; }

    /// Factors of |f(n)| for 1 <= n <= N, primes ascending.
    const std::vector<PrimePower>& factors(std::int64_t n) const { return entries_.at(static_cast<std::size_t>(n - 1)); }
    const BigInt& value(std::int64_t n) const { return values_.at(static_cast<std::size_t>(n - 1)); }
    const std::vector<std::int64_t>& skipped() const { return skipped_; }
    bool is_zero(std::int64_t n) const { return std::binary_search(zeros_.begin(), zeros_.end(), n); }

    /// Same factorizations with the small/large split moved to c.
    FactorizationTable recut(Rational c) const {
        FactorizationTable out = *this;
        out.set_cutoff(c);
        return out;
    }

    /// The table for f(1..m), m <= N, keeping c.
    FactorizationTable prefix(std::int64_t m) const {
        if (m < 1 || m > n_max_) throw std::out_of_range("prefix length out of range");
        return FactorizationTable(f_, m, c_, {entries_.begin(), entries_.begin() + m});
    }

private:
    void set_cutoff(Rational c) {
        if (c < Rational(1)) throw std::invalid_argument("cutoff c must be >= 1");
        c_ = c;
        bound_ = c.floor_times(n_max_);
        for (auto& row : entries_)
            for (auto& pp : row) pp.small = pp.p <= bound_;
    }

    Polynomial f_;
    std::int64_t n_max_;
    Rational c_{1};
    std::int64_t bound_ = 0;
    std::vector<std::vector<PrimePower>> entries_;
    std::vector<BigInt> values_;
    std::vector<std::int64_t> skipped_;
    std::vector<std::int64_t> zeros_;
};

struct BuildOptions {
    std::uint64_t rho_budget = std::uint64_t{1} << 24;
    unsigned jobs = 1;
};

/// FNV-1a over the coefficient list, N and n; a reproducible rho start value.
inline std::uint64_t rho_seed(const Polynomial& f, std::int64_t N, std::int64_t n) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 1099511628211ull;
        }
    };
    mix(f.coeff_list());
    mix("|" + std::to_string(N) + "|" + std::to_string(n));
    return h;
}

/// Roots of f modulo p in [0, min(p-1, limit)], by residue scan.
inline std::vector<std::uint64_t> roots_mod_p(const Polynomial& f, std::uint64_t p, std::uint64_t limit) {
    std::vector<std::uint64_t> coeffs;
    for (const auto& c : f.coeffs()) coeffs.push_back(mod_u64(c, p));
    std::vector<std::uint64_t> roots;
    const std::uint64_t last = std::min(p - 1, limit);
    for (std::uint64_t r = 0; r <= last; ++r) {
        std::uint64_t acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (mulmod(acc, r, p) + *it) % p;
        if (acc == 0) roots.push_back(r);
    }
    return roots;
}

/// Sieves primes p <= floor(c*N) through the values f(1..N), then splits the residuals
/// (whose prime factors all exceed c*N) by primality test, perfect-power check and Brent rho.
inline FactorizationTable build_table(const Polynomial& f, std::int64_t N, Rational c, const BuildOptions& opts = {}) {
    if (N < 2) throw std::invalid_argument("N must be >= 2");
    if (c < Rational(1)) throw std::invalid_argument("cutoff c must be >= 1");
    const std::int64_t bound = c.floor_times(N);
    const auto primes = primes_up_to(static_cast<std::uint64_t>(bound));

    std::vector<std::vector<std::uint64_t>> roots(primes.size());
    parallel_for(primes.size(), opts.jobs, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) roots[i] = roots_mod_p(f, primes[i], static_cast<std::uint64_t>(N));
    });

    std::vector<BigInt> residual(static_cast<std::size_t>(N));
    std::vector<std::vector<PrimePower>> entries(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n) residual[static_cast<std::size_t>(n - 1)] = abs(evaluate(f, BigInt(n)));

    parallel_for(static_cast<std::size_t>(N), opts.jobs, [&](std::size_t lo, std::size_t hi) {
        // block covers n in [lo+1, hi]
        for (std::size_t i = 0; i < primes.size(); ++i) {
            const std::uint64_t p = primes[i];
            for (std::uint64_t r : roots[i]) {
                // smallest n = r (mod p) with n > lo and n >= 1
                const std::uint64_t target = std::max<std::uint64_t>(lo + 1, 1);
                std::uint64_t n = r >= target ? r : r + (target - r + p - 1) / p * p;
                for (; n <= hi; n += p) {
                    BigInt& v = residual[n - 1];
                    if (v == 0) continue;
                    unsigned e = 0;
                    while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
                        mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
                        ++e;
                    }
                    if (e) entries[n - 1].push_back({from_u64(p), e, true});
                }
            }
        }
        for (std::size_t idx = lo; idx < hi; ++idx) {
            const auto n = static_cast<std::int64_t>(idx + 1);
            BigInt& v = residual[idx];
            auto& row = entries[idx];
            if (v == 0) {
                row.clear();  // f(n) = 0: no factorization
                continue;
            }
            if (v > 1) {
                try {
                    for (auto& [p, e] : factorize(v, RhoSchedule{opts.rho_budget, rho_seed(f, N, n)}))
                        row.push_back({p, e, false});
                } catch (const FactoringError& err) {
                    throw ResidualFactoringError(n, err);
                }
            }
            std::sort(row.begin(), row.end(), [](const PrimePower& a, const PrimePower& b) { return a.p < b.p; });
        }
    });
    return FactorizationTable(f, N, c, std::move(entries));
}

/// Verifies that each row multiplies back to |f(n)| and lists only primes.
/// Returns the first offending n, or nullopt.
inline std::optional<std::int64_t> find_conservation_failure(const FactorizationTable& t) {
    for (std::int64_t n = 1; n <= t.N(); ++n) {
        const auto& row = t.factors(n);
        if (t.is_zero(n)) {
            if (!row.empty()) return n;
            continue;
        }
        BigInt prod = 1;
        BigInt last = 0;
        for (const auto& pp : row) {
            if (pp.e == 0 || pp.p <= last || !is_probable_prime(pp.p)) return n;
            BigInt pk;
            mpz_pow_ui(pk.get_mpz_t(), pp.p.get_mpz_t(), pp.e);
            prod *= pk;
            last = pp.p;
        }
        if (prod != abs(t.value(n))) return n;
    }
    return std::nullopt;
}

struct PrimeStats {
    BigInt p;
    unsigned alpha = 0;               ///< nu_p(Q_f(N))
    unsigned beta = 0;                ///< nu_p(L_f(N)), the largest single exponent
    std::vector<unsigned> mu;         ///< mu[v-1] = #{n <= N : p^v | f(n)}
    std::vector<unsigned> exponents;  ///< nonzero nu_p(f(n)), descending: the valuation profile of p

    unsigned mu_at(unsigned v) const { return v >= 1 && v <= mu.size() ? mu[v - 1] : 0; }
};

inline std::map<BigInt, PrimeStats> prime_stats(const FactorizationTable& t) {
    std::map<BigInt, PrimeStats> out;
    for (std::int64_t n = 1; n <= t.N(); ++n)
        for (const auto& pp : t.factors(n)) {
            auto& s = out[pp.p];
            s.p = pp.p;
            s.exponents.push_back(pp.e);
        }
    for (auto& [p, s] : out) {
        std::sort(s.exponents.begin(), s.exponents.end(), std::greater<>());
        s.beta = s.exponents.front();
        s.mu.assign(s.beta, 0);
        for (unsigned e : s.exponents) {
            s.alpha += e;
            for (unsigned v = 1; v <= e; ++v) ++s.mu[v - 1];
        }
    }
    return out;
}

struct MassSplit {
    double log_Q = 0;
    double log_L = 0;
    double log_ell = 0;
    double small_mass = 0;  ///< sum over p <= cN of alpha_p log p
    double large_mass = 0;  ///< sum over p > cN of alpha_p log p
};

inline MassSplit mass_split(const FactorizationTable& t) {
    KahanSum q, l, ell, small, large;
    for (std::int64_t n = 1; n <= t.N(); ++n) {
        const auto& v = t.value(n);
        if (v != 0 && v != 1 && v != -1) q += log_abs(v);
    }
    for (const auto& [p, s] : prime_stats(t)) {
        const double lp = log_abs(p);
        l += s.beta * lp;
        ell += lp;
        (p <= t.cutoff_bound() ? small : large) += s.alpha * lp;
    }
    return {q.value(), l.value(), ell.value(), small.value(), large.value()};
}

struct ExactProducts {
    BigInt Q = 1;    ///< |f(1)...f(N)| over nonzero values
    BigInt L = 1;    ///< lcm
    BigInt ell = 1;  ///< radical
};

inline ExactProducts exact_products(const FactorizationTable& t) {
    ExactProducts out;
    for (std::int64_t n = 1; n <= t.N(); ++n)
        if (!t.is_zero(n)) out.Q *= abs(t.value(n));
    for (const auto& [p, s] : prime_stats(t)) {
        BigInt pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), s.beta);
        out.L *= pk;
        out.ell *= p;
    }
    return out;
}

struct AlgNTViolation {
    BigInt p;
    unsigned mu = 0;
};

struct SahViolation {
    BigInt p;
    unsigned nu = 0;
    unsigned mu = 0;  ///< mu_{p^nu}(N) > d - nu
};

struct SahGridRow {
    Rational c;
    std::vector<SahViolation> violations;
};

struct MuBoundReport {
    unsigned u = 0;
    std::vector<AlgNTViolation> algnt;     ///< p > 2N with mu_p(N) >= u
    unsigned max_mu_above_2n = 0;          ///< max mu_p(N) over primes p > 2N
    std::vector<SahGridRow> sah;           ///< per grid value c'
    std::optional<Rational> minimal_sah_free_c;  ///< least grid c' with no Sah violation above c'N

    bool clean() const { return algnt.empty(); }
};

inline std::vector<Rational> default_sah_grid() {
    return {1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64, 96, 128};
}

inline MuBoundReport verify_mu_bounds(const FactorizationTable& t, unsigned u,
                                      const std::vector<Rational>& grid = default_sah_grid()) {
    if (u < 2) throw std::invalid_argument("u must be >= 2");
    MuBoundReport rep;
    rep.u = u;
    std::vector<Rational> sorted_grid = grid;
    std::sort(sorted_grid.begin(), sorted_grid.end());
    const auto d = static_cast<unsigned>(t.f().degree());
    const auto stats = prime_stats(t);
    const BigInt two_n = BigInt(2) * t.N();
    for (const auto& [p, s] : stats) {
        if (p <= two_n) continue;
        rep.max_mu_above_2n = std::max(rep.max_mu_above_2n, s.mu_at(1));
        if (s.mu_at(1) >= u) rep.algnt.push_back({p, s.mu_at(1)});
    }
    for (Rational c : sorted_grid) {
        SahGridRow row{c, {}};
        const BigInt threshold = BigInt(static_cast<long>(c.floor_times(t.N())));
        for (auto it = stats.upper_bound(threshold); it != stats.end(); ++it) {
            const auto& s = it->second;
            // p > c*N  <=>  p > floor(c*N) for integer p
            for (unsigned v = 1; v <= s.mu.size(); ++v) {
                const long allowed = static_cast<long>(d) - static_cast<long>(v);
                if (static_cast<long>(s.mu_at(v)) > allowed) row.violations.push_back({s.p, v, s.mu_at(v)});
            }
        }
        if (row.violations.empty() && !rep.minimal_sah_free_c) rep.minimal_sah_free_c = c;
        rep.sah.push_back(std::move(row));
    }
    return rep;
}

}  // namespace lcmlab
