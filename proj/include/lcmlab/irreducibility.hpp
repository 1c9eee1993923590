#pragma once

#include "lcmlab/bigint.hpp"
#include "lcmlab/polynomial.hpp"
#include "lcmlab/primes.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lcmlab {

namespace modp {

using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t inverse(std::uint64_t a, std::uint64_t p) {
    // p prime: a^(p-2)
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1) result = mulmod(result, base, p);
        base = mulmod(base, base, p);
        e >>= 1;
    }
    return result;
}

inline Poly reduce(std::span<const BigInt> c, std::uint64_t p) {
    Poly out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = mod_u64(c[i], p);
    trim(out);
    return out;
}

/// a mod m, m monic.
inline void rem_monic(Poly& a, const Poly& m, std::uint64_t p) {
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm && !a.empty()) {
        const std::uint64_t lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        if (lead != 0)
            for (std::size_t j = 0; j < dm; ++j) a[shift + j] = (a[shift + j] + p - mulmod(lead, m[j], p)) % p;
        a.pop_back();
    }
    trim(a);
}

inline Poly mulmod_poly(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + mulmod(a[i], b[j], p)) % p;
    rem_monic(out, m, p);
    return out;
}

inline Poly powmod_poly(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
    Poly result{1};
    rem_monic(base, m, p);
    while (e) {
        if (e & 1) result = mulmod_poly(result, base, m, p);
        e >>= 1;
        if (e) base = mulmod_poly(base, base, m, p);
    }
    return result;
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        const std::uint64_t inv = inverse(b.back(), p);
        Poly monic = b;
        for (auto& x : monic) x = mulmod(x, inv, p);
        rem_monic(a, monic, p);
        std::swap(a, b);
    }
    return a;
}

/// Ben-Or test for f monic, squarefree mod p.
inline bool is_irreducible(const Poly& f, std::uint64_t p) {
    const std::size_t d = f.size() - 1;
    Poly h{0, 1};
    for (std::size_t i = 1; i <= d / 2; ++i) {
        h = powmod_poly(h, p, f, p);
        Poly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        if (gcd(f, diff, p).size() > 1) return false;
    }
    return true;
}

}  // namespace modp

struct IrreducibilityVerdict {
    enum class Status { Irreducible, Reducible, Unknown };
    Status status = Status::Unknown;
    std::optional<std::uint64_t> witness_prime;  ///< f mod p irreducible
    std::optional<Coeffs> witness_factor;        ///< monic proper factor of f over Z
    std::string note;

    std::string describe() const {
        switch (status) {
            case Status::Irreducible: return "irreducible: witness p=" + std::to_string(*witness_prime);
            case Status::Reducible: return "reducible: factor " + poly::to_string(*witness_factor);
            case Status::Unknown: break;
        }
        return "unknown" + (note.empty() ? std::string() : ": " + note);
    }
};

struct IrreducibilityOptions {
    std::uint64_t max_candidates = 4'000'000;  ///< cap on factor-pair candidates
};

/// Searches for a certificate either way. Mod-p irreducibility at a prime not dividing the
/// discriminant proves irreducibility over Q; a rational root or a bounded monic factor proves
/// reducibility. Unknown is a legitimate answer.
inline IrreducibilityVerdict irreducibility_witness(const Polynomial& f, std::uint64_t prime_budget,
                                                    IrreducibilityOptions opts = {}) {
    using Status = IrreducibilityVerdict::Status;
    if (prime_budget < 2) throw std::invalid_argument("prime_budget must be >= 2");
    const int d = f.degree();
    const auto c = f.coeffs();
    auto reducible = [](Coeffs factor) {
        IrreducibilityVerdict v;
        v.status = Status::Reducible;
        v.witness_factor = std::move(factor);
        return v;
    };

    // rational roots of a monic integer polynomial are integer divisors of c0
    std::vector<BigInt> const_divisors;
    bool divisors_known = true;
    if (c[0] == 0) return reducible(Coeffs{0, 1});
    try {
        const_divisors = divisors(c[0]);
    } catch (const FactoringError&) {
        divisors_known = false;
    }
    if (divisors_known) {
        for (const auto& r : const_divisors)
            for (int sign : {1, -1}) {
                const BigInt root = sign * r;
                if (evaluate(f, root) == 0) return reducible(Coeffs{-root, 1});
            }
    }

    const Coeffs fprime = poly::derivative(c);
    for (std::uint64_t p : primes_up_to(prime_budget)) {
        const modp::Poly fp = modp::reduce(c, p);
        const modp::Poly dp = modp::reduce(fprime, p);
        if (modp::gcd(fp, dp, p).size() != 1) continue;  // p divides the discriminant
        if (modp::is_irreducible(fp, p)) {
            IrreducibilityVerdict v;
            v.status = Status::Irreducible;
            v.witness_prime = p;
            return v;
        }
    }

    IrreducibilityVerdict unknown;
    if (!divisors_known) {
        unknown.note = "constant term could not be factored";
        return unknown;
    }
    // monic factor g of degree k <= d/2: |coefficients| <= 2^k * ||f||_2 <= 2^d * max|coeff|
    const BigInt bound = (BigInt(1) << d) * f.max_abs_coeff();
    const BigInt f1 = evaluate(f, 1), fm1 = evaluate(f, -1), f2 = evaluate(f, 2);
    std::uint64_t examined = 0;
    for (int k = 2; k <= d / 2; ++k) {
        Coeffs g(static_cast<std::size_t>(k + 1));
        g[static_cast<std::size_t>(k)] = 1;
        // odometer over g[1..k-1] in [-bound, bound], g[0] over signed divisors of c0
        for (const auto& r : const_divisors) {
            if (r > bound) break;
            for (int sign : {1, -1}) {
                g[0] = sign * r;
                for (int j = 1; j < k; ++j) g[static_cast<std::size_t>(j)] = -bound;
                while (true) {
                    if (++examined > opts.max_candidates) {
                        unknown.note = "factor search budget exhausted";
                        return unknown;
                    }
                    const BigInt g1 = poly::evaluate(g, BigInt(1)), gm1 = poly::evaluate(g, BigInt(-1)),
                                 g2 = poly::evaluate(g, BigInt(2));
                    const bool plausible = g1 != 0 && gm1 != 0 && g2 != 0 &&
                                           mpz_divisible_p(f1.get_mpz_t(), g1.get_mpz_t()) &&
                                           mpz_divisible_p(fm1.get_mpz_t(), gm1.get_mpz_t()) &&
                                           mpz_divisible_p(f2.get_mpz_t(), g2.get_mpz_t());
                    if (plausible && poly::divide_monic(c, g).second) return reducible(g);
                    int j = 1;
                    while (j < k && g[static_cast<std::size_t>(j)] == bound) g[static_cast<std::size_t>(j++)] = -bound;
                    if (j >= k) break;
                    ++g[static_cast<std::size_t>(j)];
                }
            }
        }
    }
    unknown.note = "no mod-p witness up to " + std::to_string(prime_budget) + " and no bounded factor";
    return unknown;
}

}  // namespace lcmlab
