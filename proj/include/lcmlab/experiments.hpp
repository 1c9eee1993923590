#pragma once

#include "lcmlab/factor_cache.hpp"
#include "lcmlab/irreducibility.hpp"
#include "lcmlab/tuples.hpp"
#include "lcmlab/valuation.hpp"
#include "lcmlab/zerosum.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcmlab {

/// Which product-inequality is being checked.
enum class BoundKind {
    LcmEven,           ///< L^(d/2) >= prod_{p > 2N} p^alpha_p, f even
    RadicalEven,       ///< ell^((d-u/2)(u-1)) >= prod_{p > cN} p^alpha_p, f even
    RadicalCyclotomic, ///< ell^(eta 2^(eta-1)) >= prod_{p > cN} p^alpha_p, f = X^(2^eta)+1
    Growth,            ///< bookkeeping row of a growth scan
    Masses,            ///< masses only, no exponent
};

inline std::string to_string(BoundKind k) {
    switch (k) {
        case BoundKind::LcmEven: return "lcm-even";
        case BoundKind::RadicalEven: return "radical-even";
        case BoundKind::RadicalCyclotomic: return "radical-cyclotomic";
        case BoundKind::Growth: return "growth";
        case BoundKind::Masses: return "masses";
    }
    return "?";
}

struct BoundReport {
    BoundKind kind = BoundKind::Masses;
    std::string poly;
    std::int64_t N = 0;
    Rational c{1};
    MassSplit masses;
    bool uses_radical = false;              ///< the bounded quantity is ell (else L)
    std::optional<Rational> exponent_h;     ///< absent for mass-only rows
    std::optional<double> margin;           ///< h log(L or ell) - large_mass
    std::optional<double> normalized_gap;   ///< (log(L or ell) - coefficient N log N) / N
    std::optional<Rational> coefficient;    ///< (d-1)/h, the leading coefficient this exponent yields
    std::optional<bool> exact_holds;        ///< big-integer confirmation, when requested
    std::size_t large_primes_outside_filter = 0;  ///< cyclotomic case: p > cN with a Baier-Dey-inadmissible profile

    double tolerance() const { return 1e-6 * std::max(1.0, masses.large_mass); }
    bool holds() const { return !margin || *margin >= -tolerance(); }
};

struct ExperimentOptions {
    BuildOptions build;
    std::optional<std::filesystem::path> cache_dir;
    std::uint64_t irreducibility_prime_budget = 2000;
    bool allow_unknown_irreducibility = false;
    bool exact = false;  ///< also compare the inequality in exact integers
    std::vector<Rational> sah_grid = default_sah_grid();
};

/// f failed a hypothesis of the theorem being checked.
class HypothesisError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void require_irreducible(const Polynomial& f, const ExperimentOptions& opts) {
    const auto verdict = irreducibility_witness(f, opts.irreducibility_prime_budget);
    using Status = IrreducibilityVerdict::Status;
    if (verdict.status == Status::Reducible) throw HypothesisError(verdict.describe());
    if (verdict.status == Status::Unknown && !opts.allow_unknown_irreducibility)
        throw HypothesisError("irreducibility could not be certified (" + verdict.describe() +
                              "); pass the override to proceed");
}

inline void require_even(const Polynomial& f) {
    if (!is_even(f)) throw HypothesisError(f.to_string() + " is not even");
}

namespace detail {

inline BigInt large_part(const FactorizationTable& t) {
    BigInt out = 1;
    for (const auto& [p, s] : prime_stats(t)) {
        if (p <= t.cutoff_bound()) continue;
        BigInt pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), s.alpha);
        out *= pk;
    }
    return out;
}

/// target^h >= large, with h = num/den, compared as target^num >= large^den.
inline bool exact_inequality(const BigInt& target, Rational h, const BigInt& large) {
    BigInt lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), target.get_mpz_t(), static_cast<unsigned long>(h.num()));
    mpz_pow_ui(rhs.get_mpz_t(), large.get_mpz_t(), static_cast<unsigned long>(h.den()));
    return lhs >= rhs;
}

inline double n_log_n(std::int64_t N) { return static_cast<double>(N) * std::log(static_cast<double>(N)); }

}  // namespace detail

/// Fills masses, margin and normalized gap of `table` for exponent h against L or ell.
inline BoundReport bound_report(const FactorizationTable& table, BoundKind kind, Rational h, bool radical, bool exact) {
    if (!(h > Rational(0))) throw std::invalid_argument("exponent h must be positive");
    BoundReport r;
    r.kind = kind;
    r.poly = table.f().to_string();
    r.N = table.N();
    r.c = table.cutoff_c();
    r.masses = mass_split(table);
    r.uses_radical = radical;
    r.exponent_h = h;
    const double log_target = radical ? r.masses.log_ell : r.masses.log_L;
    r.margin = h.to_double() * log_target - r.masses.large_mass;
    r.coefficient = Rational(table.f().degree() - 1) / h;
    r.normalized_gap = (log_target - r.coefficient->to_double() * detail::n_log_n(table.N())) / static_cast<double>(table.N());
    if (exact) {
        const auto prod = exact_products(table);
        r.exact_holds = detail::exact_inequality(radical ? prod.ell : prod.L, h, detail::large_part(table));
    }
    return r;
}

inline BoundReport mass_report(const FactorizationTable& table) {
    BoundReport r;
    r.kind = BoundKind::Masses;
    r.poly = table.f().to_string();
    r.N = table.N();
    r.c = table.cutoff_c();
    r.masses = mass_split(table);
    return r;
}

inline FactorizationTable table_for(const Polynomial& f, std::int64_t N, Rational c, const ExperimentOptions& opts) {
    return load_or_build(opts.cache_dir, f, N, c, opts.build);
}

/// Exponent d/2 on L_f(N) against primes above 2N.
inline BoundReport check_theorem2(const FactorizationTable& table, const ExperimentOptions& opts = {}) {
    require_even(table.f());
    return bound_report(table.recut(Rational(2)), BoundKind::LcmEven, Rational(table.f().degree(), 2), false, opts.exact);
}

inline BoundReport check_theorem2(const Polynomial& f, std::int64_t N, const ExperimentOptions& opts = {}) {
    require_even(f);
    require_irreducible(f, opts);
    if (N < 100) throw std::invalid_argument("check_theorem2 requires N >= 100");
    return check_theorem2(table_for(f, N, Rational(2), opts), opts);
}

/// Smallest cutoff >= 2 with no Sah-bound violation above it on this table.
inline Rational default_radical_cutoff(const FactorizationTable& table, const ExperimentOptions& opts) {
    const auto rep = verify_mu_bounds(table, 2, opts.sah_grid);
    if (!rep.minimal_sah_free_c)
        throw std::runtime_error("no grid cutoff clears all Sah-bound violations for " + table.f().to_string());
    return std::max(Rational(2), *rep.minimal_sah_free_c);
}

/// Exponent (d-u/2)(u-1) on ell_f(N), u from the root pairing.
inline BoundReport check_theorem3(const FactorizationTable& table, std::optional<Rational> c,
                                  const ExperimentOptions& opts = {}) {
    const Polynomial& f = table.f();
    require_even(f);
    const auto mu = minimal_u(find_roots(f));
    const auto d = static_cast<unsigned>(f.degree());
    if (!mu.admissible || mu.u != d / 2 + 1)
        throw std::logic_error("root pairing gave u=" + std::to_string(mu.u) + " for an even polynomial");
    const Rational h = (Rational(d) - Rational(mu.u, 2)) * Rational(mu.u - 1);
    if (Rational(generic_u_exponent(d, mu.u)) != h) throw std::logic_error("exponent disagrees with tuple enumeration");
    const Rational cut = c ? *c : default_radical_cutoff(table, opts);
    return bound_report(table.recut(cut), BoundKind::RadicalEven, h, true, opts.exact);
}

inline BoundReport check_theorem3(const Polynomial& f, std::int64_t N, std::optional<Rational> c,
                                  const ExperimentOptions& opts = {}) {
    require_even(f);
    require_irreducible(f, opts);
    return check_theorem3(table_for(f, N, c.value_or(Rational(2)), opts), c, opts);
}

inline Polynomial cyclotomic_power_of_two(unsigned eta) {
    if (eta < 1 || eta > 6) throw std::invalid_argument("eta must be in 1..6");
    Coeffs c((std::size_t{1} << eta) + 1);
    c.front() = 1;
    c.back() = 1;
    return Polynomial(std::move(c));
}

/// Exponent eta 2^(eta-1) on ell for X^(2^eta)+1.
inline BoundReport check_theorem4(const FactorizationTable& table, unsigned eta, std::optional<Rational> c,
                                  const ExperimentOptions& opts = {}) {
    if (!(table.f() == cyclotomic_power_of_two(eta))) throw HypothesisError("table is not for X^(2^eta)+1");
    const Rational h(static_cast<std::int64_t>(eta) << (eta - 1));
    if (Rational(max_weight(baier_dey(eta))) != h) throw std::logic_error("eta 2^(eta-1) disagrees with tuple enumeration");
    const Rational cut = c ? *c : default_radical_cutoff(table, opts);
    const auto recut = table.recut(cut);
    auto r = bound_report(recut, BoundKind::RadicalCyclotomic, h, true, opts.exact);
    const auto filter = baier_dey(eta);
    for (const auto& [p, s] : prime_stats(recut))
        if (p > recut.cutoff_bound() && !is_admissible(ValuationProfile(s.exponents), filter)) ++r.large_primes_outside_filter;
    return r;
}

inline BoundReport check_theorem4(unsigned eta, std::int64_t N, std::optional<Rational> c,
                                  const ExperimentOptions& opts = {}) {
    const auto f = cyclotomic_power_of_two(eta);  // irreducible: a cyclotomic polynomial
    return check_theorem4(table_for(f, N, c.value_or(Rational(2)), opts), eta, c, opts);
}

struct GrowthPoint {
    BoundReport report;
    double q_gap = 0;        ///< (log Q - d N log N) / N
    double small_gap = 0;    ///< (small_mass - N log N) / N
    double lcm_ratio = 0;    ///< log L / (N log N)
    double radical_ratio = 0;///< log ell / (N log N)
    double b_estimate = 0;   ///< (log L - N log N) / N
    std::optional<double> b_delta;  ///< change of b_estimate since the previous grid point
};

struct OrderingFailure {
    std::int64_t N = 0;
    std::string what;
};

/// Exact checks: ell | L | Q at every grid point, and L, ell divide their successors.
inline std::vector<OrderingFailure> check_ordering(const FactorizationTable& table, const std::vector<std::int64_t>& grid) {
    std::vector<OrderingFailure> out;
    std::optional<ExactProducts> prev;
    for (std::int64_t N : grid) {
        const auto prod = exact_products(table.prefix(N));
        if (!mpz_divisible_p(prod.L.get_mpz_t(), prod.ell.get_mpz_t())) out.push_back({N, "ell does not divide L"});
        if (!mpz_divisible_p(prod.Q.get_mpz_t(), prod.L.get_mpz_t())) out.push_back({N, "L does not divide Q"});
        if (!(prod.ell <= prod.L && prod.L <= prod.Q)) out.push_back({N, "ell <= L <= Q fails"});
        if (prev) {
            if (!mpz_divisible_p(prod.L.get_mpz_t(), prev->L.get_mpz_t())) out.push_back({N, "L decreased"});
            if (!mpz_divisible_p(prod.ell.get_mpz_t(), prev->ell.get_mpz_t())) out.push_back({N, "ell decreased"});
        }
        prev = prod;
    }
    return out;
}

/// Reports along an increasing grid of N from one table built at the largest N.
/// The exponent is d/2 for even f and d-1 otherwise, both against L.
inline std::vector<GrowthPoint> growth_scan(const FactorizationTable& table, std::vector<std::int64_t> grid) {
    if (grid.empty()) return {};
    if (!std::is_sorted(grid.begin(), grid.end()) || std::adjacent_find(grid.begin(), grid.end()) != grid.end())
        throw std::invalid_argument("grid must be strictly increasing");
    if (grid.back() > table.N()) throw std::invalid_argument("grid exceeds table size");
    const Polynomial& f = table.f();
    const double d = f.degree();
    const Rational h = is_even(f) ? Rational(f.degree(), 2) : Rational(f.degree() - 1);
    std::vector<GrowthPoint> out;
    for (std::int64_t N : grid) {
        GrowthPoint g;
        g.report = bound_report(table.prefix(N), BoundKind::Growth, h, false, false);
        const double nln = detail::n_log_n(N), n = static_cast<double>(N);
        const auto& m = g.report.masses;
        g.q_gap = (m.log_Q - d * nln) / n;
        g.small_gap = (m.small_mass - nln) / n;
        g.lcm_ratio = m.log_L / nln;
        g.radical_ratio = m.log_ell / nln;
        g.b_estimate = (m.log_L - nln) / n;
        if (!out.empty()) g.b_delta = g.b_estimate - out.back().b_estimate;
        out.push_back(std::move(g));
    }
    return out;
}

inline std::vector<GrowthPoint> growth_scan(const Polynomial& f, const std::vector<std::int64_t>& grid, Rational c,
                                            const ExperimentOptions& opts = {}) {
    if (grid.empty()) return {};
    if (grid.front() < 100) throw std::invalid_argument("growth grid must start at N >= 100");
    return growth_scan(table_for(f, grid.back(), c, opts), grid);
}

}  // namespace lcmlab
