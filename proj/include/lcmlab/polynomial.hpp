#pragma once

#include "lcmlab/bigint.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lcmlab {

/// Raw integer coefficient vector, index i holds the coefficient of X^i.
using Coeffs = std::vector<BigInt>;

/// Input that cannot serve as the polynomial f (malformed, non-monic, degree < 2).
class PolynomialError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace poly {

inline void trim(Coeffs& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

inline int degree(std::span<const BigInt> c) {
    for (auto i = static_cast<int>(c.size()) - 1; i >= 0; --i)
        if (c[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
}

inline Coeffs add(std::span<const BigInt> a, std::span<const BigInt> b) {
    Coeffs out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    trim(out);
    return out;
}

inline Coeffs mul(std::span<const BigInt> a, std::span<const BigInt> b) {
    if (a.empty() || b.empty()) return {};
    Coeffs out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    trim(out);
    return out;
}

inline Coeffs derivative(std::span<const BigInt> c) {
    Coeffs out;
    for (std::size_t i = 1; i < c.size(); ++i) out.push_back(c[i] * static_cast<unsigned long>(i));
    trim(out);
    return out;
}

/// Horner evaluation.
inline BigInt evaluate(std::span<const BigInt> c, const BigInt& x) {
    BigInt acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

/// Exact division by a monic divisor; returns nullopt-like empty quotient flag via the bool.
inline std::pair<Coeffs, bool> divide_monic(std::span<const BigInt> num, std::span<const BigInt> monic_div) {
    const int dn = degree(num), dd = degree(monic_div);
    if (dd < 0) throw std::domain_error("division by zero polynomial");
    if (dn < dd) return {{}, dn < 0};
    Coeffs rem(num.begin(), num.begin() + dn + 1);
    Coeffs quot(static_cast<std::size_t>(dn - dd + 1));
    for (int k = dn - dd; k >= 0; --k) {
        const BigInt q = rem[static_cast<std::size_t>(k + dd)];
        quot[static_cast<std::size_t>(k)] = q;
        if (q == 0) continue;
        for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= q * monic_div[static_cast<std::size_t>(j)];
    }
    trim(rem);
    return {quot, rem.empty()};
}

/// Degree of gcd(a, b) over the rationals.
inline int gcd_degree_over_q(std::span<const BigInt> a, std::span<const BigInt> b) {
    using QPoly = std::vector<mpq_class>;
    auto to_q = [](std::span<const BigInt> c) {
        QPoly q(c.begin(), c.end());
        while (!q.empty() && q.back() == 0) q.pop_back();
        return q;
    };
    QPoly x = to_q(a), y = to_q(b);
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
        // x <- x mod y
        while (x.size() >= y.size() && !x.empty()) {
            const mpq_class factor = x.back() / y.back();
            const std::size_t shift = x.size() - y.size();
            for (std::size_t j = 0; j < y.size(); ++j) x[shift + j] -= factor * y[j];
            x.pop_back();
            while (!x.empty() && x.back() == 0) x.pop_back();
        }
        std::swap(x, y);
    }
    return static_cast<int>(x.size()) - 1;
}

inline std::string to_string(std::span<const BigInt> c) {
    std::string out;
    const int d = degree(c);
    if (d < 0) return "0";
    for (int i = d; i >= 0; --i) {
        const BigInt& a = c[static_cast<std::size_t>(i)];
        if (a == 0) continue;
        const bool neg = a < 0;
        const BigInt mag = abs(a);
        if (!out.empty()) out += neg ? "-" : "+";
        else if (neg) out += "-";
        if (i == 0 || mag != 1) out += mag.get_str();
        if (i >= 1) out += "X";
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
}

}  // namespace poly

/// Monic integer polynomial of degree >= 2.
class Polynomial {
public:
    explicit Polynomial(Coeffs coeffs) : coeffs_(std::move(coeffs)) {
        poly::trim(coeffs_);
        if (coeffs_.size() < 3) throw PolynomialError("polynomial must have degree >= 2");
        if (coeffs_.back() != 1)
            throw PolynomialError("polynomial must be monic (leading coefficient " + coeffs_.back().get_str() + ")");
    }

    /// Accepts a coefficient list "c0,c1,...,cd" or a symbolic form such as "X^4-2".
    static Polynomial parse(std::string_view text);

    std::span<const BigInt> coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const BigInt& operator[](std::size_t i) const { return coeffs_[i]; }

    BigInt max_abs_coeff() const {
        BigInt m = 0;
        for (const auto& c : coeffs_) m = std::max<BigInt>(m, abs(c));
        return m;
    }

    std::string to_string() const { return poly::to_string(coeffs_); }
    /// "c0,c1,...,cd"
    std::string coeff_list() const {
        std::string out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) out += (i ? "," : "") + coeffs_[i].get_str();
        return out;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

private:
    Coeffs coeffs_;
};

inline BigInt evaluate(const Polynomial& f, const BigInt& n) { return poly::evaluate(f.coeffs(), n); }
inline BigInt evaluate(const Polynomial& f, long n) { return poly::evaluate(f.coeffs(), BigInt(n)); }

/// f(-X) = f(X): every odd-index coefficient vanishes.
inline bool is_even(const Polynomial& f) {
    for (std::size_t i = 1; i < f.coeffs().size(); i += 2)
        if (f[i] != 0) return false;
    return true;
}

inline bool is_squarefree(const Polynomial& f) {
    return poly::gcd_degree_over_q(f.coeffs(), poly::derivative(f.coeffs())) == 0;
}

namespace detail {

inline BigInt parse_bigint(std::string_view s, std::string_view whole) {
    if (s.empty()) throw PolynomialError("empty coefficient in '" + std::string(whole) + "'");
    std::size_t start = (s.front() == '+' || s.front() == '-') ? 1 : 0;
    if (start == s.size() || s.find_first_not_of("0123456789", start) != std::string_view::npos)
        throw PolynomialError("bad integer '" + std::string(s) + "' in '" + std::string(whole) + "'");
    BigInt v;
    v.set_str(std::string(s.front() == '+' ? s.substr(1) : s), 10);
    return v;
}

inline Polynomial parse_symbolic(std::string_view text) {
    std::map<unsigned, BigInt> terms;
    std::size_t i = 0;
    if (text.empty()) throw PolynomialError("empty polynomial");
    while (i < text.size()) {
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw PolynomialError("expected '+' or '-' at position " + std::to_string(i) + " in '" + std::string(text) + "'");
        }
        const std::size_t term_start = i;
        while (i < text.size() && text[i] != '+' && text[i] != '-') ++i;
        std::string_view term = text.substr(term_start, i - term_start);
        if (term.empty()) throw PolynomialError("empty term in '" + std::string(text) + "'");
        const auto xpos = term.find_first_of("Xx");
        BigInt coef = 1;
        unsigned power = 0;
        if (xpos == std::string_view::npos) {
            coef = parse_bigint(term, text);
        } else {
            auto head = term.substr(0, xpos);
            if (!head.empty() && head.back() == '*') head.remove_suffix(1);
            if (!head.empty()) coef = parse_bigint(head, text);
            auto tail = term.substr(xpos + 1);
            power = 1;
            if (!tail.empty()) {
                if (tail.front() != '^') throw PolynomialError("bad term '" + std::string(term) + "'");
                tail.remove_prefix(1);
                if (tail.empty() || tail.size() > 6 || tail.find_first_not_of("0123456789") != std::string_view::npos)
                    throw PolynomialError("bad exponent in '" + std::string(term) + "'");
                power = static_cast<unsigned>(std::stoul(std::string(tail)));
            }
        }
        terms[power] += sign * coef;
    }
    Coeffs c(terms.rbegin()->first + 1);
    for (const auto& [k, v] : terms) c[k] = v;
    return Polynomial(std::move(c));
}

}  // namespace detail

inline Polynomial Polynomial::parse(std::string_view text) {
    std::string clean;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) clean += ch;
    if (clean.find_first_of("Xx") != std::string::npos) return detail::parse_symbolic(clean);
    Coeffs c;
    std::size_t start = 0;
    while (true) {
        const auto comma = clean.find(',', start);
        c.push_back(detail::parse_bigint(std::string_view(clean).substr(start, comma - start), clean));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return Polynomial(std::move(c));
}

}  // namespace lcmlab
