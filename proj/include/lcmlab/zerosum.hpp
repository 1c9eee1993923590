#pragma once

#include "lcmlab/polynomial.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lcmlab {

namespace bmp = boost::multiprecision;

/// 128-bit binary mantissa: the working precision for roots.
using Real = bmp::number<bmp::cpp_bin_float<128, bmp::digit_base_2>, bmp::et_off>;
/// Twice the working precision, used for re-verification.
using WideReal = bmp::number<bmp::cpp_bin_float<256, bmp::digit_base_2>, bmp::et_off>;

template <class R>
struct Complex {
    R re{0};
    R im{0};

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        const R den = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
    }
    friend Complex operator*(const R& s, const Complex& a) { return {s * a.re, s * a.im}; }
    Complex operator-() const { return {-re, -im}; }
    R abs() const {
        using std::sqrt;
        return sqrt(re * re + im * im);
    }

    template <class S>
    Complex<S> cast() const {
        return {static_cast<S>(re), static_cast<S>(im)};
    }
};

template <class R>
Complex<R> complex_sqrt(const Complex<R>& z) {
    using std::sqrt;
    const R m = z.abs();
    R a = sqrt((m + z.re) / 2);
    R b = sqrt((m - z.re) / 2);
    if (z.im < 0) b = -b;
    return {a, b};
}

/// Numerical roots could not be certified by coefficient reconstruction.
class RootCertificationError : public std::runtime_error {
public:
    RootCertificationError(const std::string& what, double condition)
        : std::runtime_error(what + " (condition estimate " + std::to_string(condition) + ")"), condition_(condition) {}
    double condition() const { return condition_; }

private:
    double condition_;
};

namespace detail {

/// Aberth-Ehrlich iteration for a monic polynomial with the given real coefficients.
template <class R>
std::vector<Complex<R>> aberth(const std::vector<R>& c) {
    using std::cos;
    using std::sin;
    const std::size_t d = c.size() - 1;
    if (d == 1) return {Complex<R>{-c[0], R(0)}};
    R radius = 0;
    for (std::size_t i = 0; i < d; ++i) radius = std::max<R>(radius, abs(c[i]));
    radius += 1;  // Cauchy bound
    std::vector<Complex<R>> z(d);
    const R two_pi = 2 * boost::math::constants::pi<R>();
    for (std::size_t k = 0; k < d; ++k) {
        const R angle = two_pi * R(k) / R(d) + R(0.4);
        z[k] = {radius / 2 * cos(angle), radius / 2 * sin(angle)};
    }
    const R eps = std::numeric_limits<R>::epsilon();
    auto eval = [&](const Complex<R>& x, Complex<R>& p, Complex<R>& dp) {
        p = {c[d], R(0)};
        dp = {R(0), R(0)};
        for (std::size_t i = d; i-- > 0;) {
            dp = dp * x + p;
            p = p * x + Complex<R>{c[i], R(0)};
        }
    };
    for (int iter = 0; iter < 2000; ++iter) {
        R worst = 0;
        for (std::size_t k = 0; k < d; ++k) {
            Complex<R> p, dp;
            eval(z[k], p, dp);
            if (p.re == 0 && p.im == 0) continue;
            const Complex<R> ratio = p / dp;
            Complex<R> repulse{R(0), R(0)};
            for (std::size_t j = 0; j < d; ++j) {
                if (j == k) continue;
                const Complex<R> diff = z[k] - z[j];
                if (diff.re == 0 && diff.im == 0) continue;
                repulse = repulse + Complex<R>{R(1), R(0)} / diff;
            }
            const Complex<R> denom = Complex<R>{R(1), R(0)} - ratio * repulse;
            const Complex<R> step = (denom.re == 0 && denom.im == 0) ? ratio : ratio / denom;
            z[k] = z[k] - step;
            const R scale = std::max<R>(R(1), z[k].abs());
            worst = std::max<R>(worst, step.abs() / scale);
        }
        if (worst < eps * 16) break;
    }
    return z;
}

template <class R>
std::vector<R> to_real(std::span<const BigInt> c) {
    std::vector<R> out;
    for (const auto& x : c) out.emplace_back(x.get_str());
    return out;
}

/// All roots of f at precision R; for even f they come in exact pairs (2j, 2j+1) = (s, -s).
template <class R>
std::vector<Complex<R>> roots_at(const Polynomial& f, bool use_symmetry) {
    const auto c = f.coeffs();
    if (!use_symmetry) return aberth(to_real<R>(c));
    std::vector<R> half;
    for (std::size_t i = 0; i < c.size(); i += 2) half.emplace_back(c[i].get_str());
    std::vector<Complex<R>> out;
    for (const auto& s : aberth(half)) {
        const auto r = complex_sqrt(s);
        out.push_back(r);
        out.push_back(-r);
    }
    return out;
}

template <class R>
std::vector<R> reconstruct(const std::vector<Complex<R>>& roots, std::vector<R>& imag_out) {
    std::vector<Complex<R>> poly{{R(1), R(0)}};
    for (const auto& r : roots) {
        std::vector<Complex<R>> next(poly.size() + 1);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] = next[i + 1] + poly[i];
            next[i] = next[i] - r * poly[i];
        }
        poly = std::move(next);
    }
    std::vector<R> re;
    imag_out.clear();
    for (const auto& x : poly) {
        re.push_back(x.re);
        imag_out.push_back(x.im);
    }
    return re;
}

inline long double angle_key(const Complex<Real>& z) {
    auto a = std::atan2(static_cast<long double>(z.im), static_cast<long double>(z.re));
    if (a < 0) a += 2 * std::numbers::pi_v<long double>;
    // snap values within rounding of 2*pi back to 0
    if (a > 2 * std::numbers::pi_v<long double> - 1e-15L) a = 0;
    return a;
}

}  // namespace detail

/// Complex roots of f (with multiplicity) and their negation pairing.
struct RootSet {
    Polynomial f;
    std::vector<Complex<Real>> roots;      ///< sorted by argument in [0, 2pi), then modulus
    std::vector<Complex<WideReal>> wide;   ///< the same roots at doubled precision, aligned with `roots`
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  ///< i < j with roots[i] + roots[j] ~ 0
    std::vector<std::size_t> unpaired;
    bool from_symmetry = false;            ///< pairing derived exactly from f(-X) = f(X)
    bool pairing_certified = false;
    double reconstruction_error = 0;
    double tol_rec = 0;                    ///< 2^-40 (1 + max|coeff|)
    double tol = 0;                        ///< 2^-30 max|root|
    double max_abs_root = 0;

    int degree() const { return f.degree(); }
};

/// Finds all roots, certifies them by rebuilding the coefficients, and pairs r with -r.
/// Even f skips the numeric pairing: each root of g(Y) = f(sqrt Y) yields the exact pair (s, -s).
inline RootSet find_roots(const Polynomial& f) {
    const bool even = is_even(f);
    RootSet rs{f, {}, {}, {}, {}, even, false, 0, 0, 0, 0};
    auto narrow = detail::roots_at<Real>(f, even);
    auto wide = detail::roots_at<WideReal>(f, even);
    const std::size_t d = narrow.size();

    // align wide roots to narrow ones (nearest unused)
    std::vector<Complex<WideReal>> aligned(d);
    std::vector<bool> used(d, false);
    for (std::size_t i = 0; i < d; ++i) {
        std::size_t best = d;
        WideReal best_dist = 0;
        for (std::size_t j = 0; j < d; ++j) {
            if (used[j]) continue;
            const WideReal dist = (wide[j] - narrow[i].cast<WideReal>()).abs();
            if (best == d || dist < best_dist) {
                best = j;
                best_dist = dist;
            }
        }
        used[best] = true;
        aligned[i] = wide[best];
    }

    // canonical order; keep symmetric pairs by tracking original indices
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto ka = detail::angle_key(narrow[a]), kb = detail::angle_key(narrow[b]);
        if (std::fabs(ka - kb) > 1e-12L) return ka < kb;
        return narrow[a].abs() < narrow[b].abs();
    });
    std::vector<std::size_t> position(d);
    for (std::size_t k = 0; k < d; ++k) {
        position[order[k]] = k;
        rs.roots.push_back(narrow[order[k]]);
        rs.wide.push_back(aligned[order[k]]);
    }

    // certification
    Real max_coeff = 0;
    for (const auto& c : f.coeffs()) max_coeff = std::max<Real>(max_coeff, abs(Real(c.get_str())));
    const Real tol_rec = ldexp(Real(1), -40) * (1 + max_coeff);
    std::vector<Real> imag;
    const auto rebuilt = detail::reconstruct(rs.roots, imag);
    Real err = 0;
    for (std::size_t i = 0; i <= d; ++i)
        err = std::max<Real>(err, std::max<Real>(abs(rebuilt[i] - Real(f[i].get_str())), abs(imag[i])));
    rs.reconstruction_error = static_cast<double>(err);
    rs.tol_rec = static_cast<double>(tol_rec);
    Real max_root = 0;
    for (const auto& r : rs.roots) max_root = std::max<Real>(max_root, r.abs());
    rs.max_abs_root = static_cast<double>(max_root);
    const Real tol = ldexp(Real(1), -30) * max_root;
    rs.tol = static_cast<double>(tol);
    if (!(err < tol_rec)) {
        // condition estimate: sum |c_i||r|^i / (|r||f'(r)|), worst root
        double cond = 0;
        for (const auto& r : rs.roots) {
            Complex<Real> p{Real(f[d].get_str()), Real(0)}, dp{Real(0), Real(0)};
            Real scale = 0, rabs = r.abs(), pw = 1;
            for (std::size_t i = d; i-- > 0;) {
                dp = dp * r + p;
                p = p * r + Complex<Real>{Real(f[i].get_str()), Real(0)};
            }
            for (std::size_t i = 0; i <= d; ++i, pw *= rabs) scale += abs(Real(f[i].get_str())) * pw;
            const Real den = rabs * dp.abs();
            cond = std::max(cond, den == 0 ? std::numeric_limits<double>::infinity() : static_cast<double>(scale / den));
        }
        throw RootCertificationError("root reconstruction error " + std::to_string(rs.reconstruction_error) +
                                         " exceeds " + std::to_string(rs.tol_rec),
                                     cond);
    }

    std::vector<bool> matched(d, false);
    if (even) {
        for (std::size_t j = 0; j + 1 < d; j += 2) {
            const auto a = position[j], b = position[j + 1];
            rs.pairs.emplace_back(std::min(a, b), std::max(a, b));
            matched[a] = matched[b] = true;
        }
        rs.pairing_certified = true;
    } else {
        std::vector<std::tuple<Real, std::size_t, std::size_t>> sums;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j) sums.emplace_back((rs.roots[i] + rs.roots[j]).abs(), i, j);
        std::sort(sums.begin(), sums.end());
        for (const auto& [s, i, j] : sums) {
            if (!(s < tol)) break;
            if (matched[i] || matched[j]) continue;
            matched[i] = matched[j] = true;
            rs.pairs.emplace_back(i, j);
        }
        rs.pairing_certified = true;
        for (std::size_t i = 0; i < d; ++i) {
            if (matched[i]) continue;
            for (std::size_t j = 0; j < d; ++j)
                if (j != i && (rs.roots[i] + rs.roots[j]).abs() < 10 * tol) rs.pairing_certified = false;
        }
        std::sort(rs.pairs.begin(), rs.pairs.end());
    }
    for (std::size_t i = 0; i < d; ++i)
        if (!matched[i]) rs.unpaired.push_back(i);
    return rs;
}

struct MinimalU {
    unsigned u = 0;          ///< 1 + #pairs + #unpaired; equals d+1 when no u <= d works
    bool admissible = false; ///< u <= d
};

/// Least u such that every u roots (counted with multiplicity) contain a negation pair.
inline MinimalU minimal_u(const RootSet& rs) {
    if (!rs.pairing_certified) throw std::logic_error("minimal_u: root pairing is not certified");
    const auto u = static_cast<unsigned>(1 + rs.pairs.size() + rs.unpaired.size());
    return {u, u <= static_cast<unsigned>(rs.degree())};
}

struct ZeroSum {
    std::vector<int> coefficients;  ///< per root index, in {-1, 0, +1}; first nonzero is +1
    double residual = 0;            ///< |sum b_m alpha_m| at working precision
    double wide_residual = 0;       ///< same at doubled precision

    std::size_t support() const {
        return static_cast<std::size_t>(std::count_if(coefficients.begin(), coefficients.end(), [](int b) { return b != 0; }));
    }
};

struct ZeroSumSearch {
    std::vector<ZeroSum> sums;         ///< residual < tol, re-verified below tol^2 at doubled precision
    std::vector<ZeroSum> near_misses;  ///< residual in [tol, 1000 tol] or failing re-verification
};

/// Exhaustive search over sign vectors in {-1,0,+1}^d with 1 <= support <= max_support,
/// one representative per global sign, ordered lexicographically (-1 < 0 < +1).
inline ZeroSumSearch search_zero_sums(const RootSet& rs, std::size_t max_support) {
    const std::size_t d = rs.roots.size();
    if (max_support > d) throw std::invalid_argument("max_support exceeds degree");
    if (!rs.pairing_certified) throw std::logic_error("search_zero_sums: root pairing is not certified");
    using LC = std::complex<long double>;
    std::vector<LC> z;
    for (const auto& r : rs.roots) z.emplace_back(static_cast<long double>(r.re), static_cast<long double>(r.im));
    std::vector<long double> suffix(d + 1, 0);
    for (std::size_t i = d; i-- > 0;) suffix[i] = suffix[i + 1] + std::abs(z[i]);
    const long double tol = rs.tol;
    const long double screen = 1100 * tol;

    std::vector<std::vector<int>> candidates;
    std::vector<int> coeffs(d, 0);
    auto dfs = [&](auto&& self, std::size_t i, LC partial, std::size_t used, bool started) -> void {
        if (std::abs(partial) > suffix[i] + screen) return;
        if (i == d) {
            if (used > 0 && std::abs(partial) < screen) candidates.push_back(coeffs);
            return;
        }
        // lexicographic order -1 < 0 < +1; the first nonzero entry is fixed to +1
        if (started && used < max_support) {
            coeffs[i] = -1;
            self(self, i + 1, partial - z[i], used + 1, true);
        }
        coeffs[i] = 0;
        self(self, i + 1, partial, used, started);
        if (used < max_support) {
            coeffs[i] = 1;
            self(self, i + 1, partial + z[i], used + 1, true);
        }
        coeffs[i] = 0;
    };
    dfs(dfs, 0, LC(0, 0), 0, false);

    ZeroSumSearch out;
    const Real tol_r = ldexp(Real(1), -30) * Real(rs.max_abs_root);
    for (auto& b : candidates) {
        Complex<Real> s;
        Complex<WideReal> w;
        for (std::size_t i = 0; i < d; ++i) {
            if (b[i] == 0) continue;
            s = b[i] > 0 ? s + rs.roots[i] : s - rs.roots[i];
            w = b[i] > 0 ? w + rs.wide[i] : w - rs.wide[i];
        }
        ZeroSum zs{std::move(b), static_cast<double>(s.abs()), static_cast<double>(w.abs())};
        const WideReal tol_w = WideReal(tol_r) * WideReal(tol_r);
        if (s.abs() < tol_r && w.abs() < tol_w)
            out.sums.push_back(std::move(zs));
        else if (s.abs() < 1000 * tol_r)
            out.near_misses.push_back(std::move(zs));
    }
    return out;
}

}  // namespace lcmlab
