#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lcmlab {

/// Exact rational with 64-bit parts, always reduced with a positive denominator.
/// Used for cutoff constants and the small exact quantities of the tuple search.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t num) : num_(num), den_(1) {}  // NOLINT(implicit)
    constexpr Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const auto g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    constexpr std::int64_t num() const { return num_; }
    constexpr std::int64_t den() const { return den_; }
    constexpr bool is_integer() const { return den_ == 1; }
    constexpr double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// floor(value * n) for non-negative n.
    constexpr std::int64_t floor_times(std::int64_t n) const {
        const __int128 prod = static_cast<__int128>(num_) * n;
        __int128 q = prod / den_;
        if (prod % den_ != 0 && prod < 0) --q;
        return static_cast<std::int64_t>(q);
    }

    friend constexpr Rational operator+(Rational a, Rational b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend constexpr Rational operator-(Rational a, Rational b) {
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend constexpr Rational operator*(Rational a, Rational b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend constexpr Rational operator/(Rational a, Rational b) {
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    friend constexpr bool operator==(Rational a, Rational b) = default;
    friend constexpr std::strong_ordering operator<=>(Rational a, Rational b) {
        return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
    }

    std::string to_string() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Accepts "3", "-3/2" and finite decimals such as "1.25".
    static Rational parse(std::string_view text) {
        auto bad = [&] { return std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };
        auto parse_int = [&](std::string_view s) -> std::int64_t {
            if (s.empty()) throw bad();
            std::size_t pos = 0;
            std::int64_t v = 0;
            try {
                v = std::stoll(std::string(s), &pos);
            } catch (const std::exception&) {
                throw bad();
            }
            if (pos != s.size()) throw bad();
            return v;
        };
        if (auto slash = text.find('/'); slash != std::string_view::npos)
            return {parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1))};
        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            const auto frac = text.substr(dot + 1);
            if (frac.size() > 12 || frac.find_first_not_of("0123456789") != std::string_view::npos) throw bad();
            std::int64_t scale = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
            const auto whole = text.substr(0, dot);
            const bool neg = !whole.empty() && whole.front() == '-';
            const std::int64_t w = (whole.empty() || whole == "-" || whole == "+") ? 0 : parse_int(whole);
            const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
            return {(neg ? -1 : 1) * (std::abs(w) * scale + f), scale};
        }
        return {parse_int(text)};
    }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, Rational r) { return os << r.to_string(); }

}  // namespace lcmlab
