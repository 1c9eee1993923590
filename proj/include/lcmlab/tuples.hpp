#pragma once

#include "lcmlab/rational.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lcmlab {

/// Weakly decreasing tuple (v_1 >= ... >= v_s >= 1): the exponents of one prime across distinct arguments.
class ValuationProfile {
public:
    ValuationProfile() = default;
    explicit ValuationProfile(std::vector<unsigned> values) : values_(std::move(values)) {
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (values_[i] == 0) throw std::invalid_argument("valuation profile entries must be >= 1");
            if (i && values_[i] > values_[i - 1]) throw std::invalid_argument("valuation profile must be weakly decreasing");
        }
    }

    const std::vector<unsigned>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    unsigned operator[](std::size_t i) const { return values_[i]; }
    unsigned height() const { return values_.empty() ? 0 : values_.front(); }
    unsigned weight() const { return std::accumulate(values_.begin(), values_.end(), 0u); }
    /// #{r : v_r >= v}; the multiplicity count mu_{p^v} this profile encodes.
    unsigned count_at_least(unsigned v) const {
        return static_cast<unsigned>(std::count_if(values_.begin(), values_.end(), [v](unsigned x) { return x >= v; }));
    }

    ValuationProfile appended(unsigned v) const {
        auto next = values_;
        next.push_back(v);
        return ValuationProfile(std::move(next));
    }

    std::string to_string() const {
        std::string out = "(";
        for (std::size_t i = 0; i < values_.size(); ++i) out += (i ? "," : "") + std::to_string(values_[i]);
        return out + ")";
    }

    friend auto operator<=>(const ValuationProfile&, const ValuationProfile&) = default;

private:
    std::vector<unsigned> values_;
};

struct AdmissibilityFilter;

/// mu_{p^v} <= d - v for every v.
struct SahFilter {
    unsigned d;
};
/// No index r with r >= floor(2^(eta-1-floor(log2 v_r))) + 1.
struct BaierDeyFilter {
    unsigned eta;
};
/// mu_{p^v} <= min(u-1, d-v) for every v.
struct GenericUFilter {
    unsigned d;
    unsigned u;
};
struct ConjunctionFilter {
    std::vector<AdmissibilityFilter> members;
};

struct AdmissibilityFilter {
    std::variant<SahFilter, BaierDeyFilter, GenericUFilter, ConjunctionFilter> kind;

    std::string describe() const;
};

inline AdmissibilityFilter sah(unsigned d) { return {SahFilter{d}}; }
inline AdmissibilityFilter baier_dey(unsigned eta) { return {BaierDeyFilter{eta}}; }
inline AdmissibilityFilter generic_u(unsigned d, unsigned u) { return {GenericUFilter{d, u}}; }
inline AdmissibilityFilter conjunction(std::vector<AdmissibilityFilter> members) {
    return {ConjunctionFilter{std::move(members)}};
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline std::string AdmissibilityFilter::describe() const {
    return std::visit(overloaded{
                          [](const SahFilter& s) { return "Sah(d=" + std::to_string(s.d) + ")"; },
                          [](const BaierDeyFilter& b) { return "BaierDey(eta=" + std::to_string(b.eta) + ")"; },
                          [](const GenericUFilter& g) {
                              return "GenericU(d=" + std::to_string(g.d) + ",u=" + std::to_string(g.u) + ")";
                          },
                          [](const ConjunctionFilter& c) {
                              std::string out = "And(";
                              for (std::size_t i = 0; i < c.members.size(); ++i)
                                  out += (i ? "," : "") + c.members[i].describe();
                              return out + ")";
                          },
                      },
                      kind);
}

/// floor(log2 v) for v >= 1, from the bit length.
constexpr unsigned floor_log2(unsigned v) { return static_cast<unsigned>(std::bit_width(v)) - 1; }

/// floor(2^(eta-1-floor(log2 v))): the number of positions value v may occupy; 0 if the exponent is negative.
constexpr std::uint64_t baier_dey_positions(unsigned eta, unsigned v) {
    const long exponent = static_cast<long>(eta) - 1 - static_cast<long>(floor_log2(v));
    if (exponent < 0) return 0;
    return std::uint64_t{1} << exponent;
}

inline bool is_admissible(const ValuationProfile& profile, const AdmissibilityFilter& filter) {
    return std::visit(
        overloaded{
            [&](const SahFilter& s) {
                for (unsigned v = 1; v <= profile.height(); ++v)
                    if (static_cast<long>(profile.count_at_least(v)) > static_cast<long>(s.d) - static_cast<long>(v))
                        return false;
                return true;
            },
            [&](const BaierDeyFilter& b) {
                for (std::size_t r = 1; r <= profile.size(); ++r)
                    if (r >= baier_dey_positions(b.eta, profile[r - 1]) + 1) return false;
                return true;
            },
            [&](const GenericUFilter& g) {
                for (unsigned v = 1; v <= profile.height(); ++v) {
                    const long cap = std::min(static_cast<long>(g.u) - 1, static_cast<long>(g.d) - static_cast<long>(v));
                    if (static_cast<long>(profile.count_at_least(v)) > cap) return false;
                }
                return true;
            },
            [&](const ConjunctionFilter& c) {
                return std::all_of(c.members.begin(), c.members.end(),
                                   [&](const AdmissibilityFilter& m) { return is_admissible(profile, m); });
            },
        },
        filter.kind);
}

/// A-priori bounds on entry size and length of any admissible profile.
struct EnumerationCaps {
    unsigned max_value = 0;
    std::size_t max_length = 0;
};

inline std::optional<EnumerationCaps> enumeration_caps(const AdmissibilityFilter& filter) {
    return std::visit(
        overloaded{
            [](const SahFilter& s) -> std::optional<EnumerationCaps> {
                if (s.d < 1) return EnumerationCaps{0, 0};
                return EnumerationCaps{s.d - 1, s.d - 1};
            },
            [](const BaierDeyFilter& b) -> std::optional<EnumerationCaps> {
                if (b.eta < 1 || b.eta > 30) return std::nullopt;
                return EnumerationCaps{(1u << b.eta) - 1, std::size_t{1} << (b.eta - 1)};
            },
            [](const GenericUFilter& g) -> std::optional<EnumerationCaps> {
                if (g.d < 1 || g.u < 1) return EnumerationCaps{0, 0};
                return EnumerationCaps{g.d - 1, std::min<std::size_t>(g.d - 1, g.u - 1)};
            },
            [](const ConjunctionFilter& c) -> std::optional<EnumerationCaps> {
                std::optional<EnumerationCaps> best;
                for (const auto& m : c.members)
                    if (auto caps = enumeration_caps(m)) {
                        if (!best)
                            best = caps;
                        else
                            best = EnumerationCaps{std::min(best->max_value, caps->max_value),
                                                   std::min(best->max_length, caps->max_length)};
                    }
                return best;
            },
        },
        filter.kind);
}

/// All nonempty admissible profiles, in lexicographic order. Depth-first: a child appends an
/// entry no larger than the current last one; inadmissible nodes are pruned with their subtrees,
/// which is complete because every prefix of an admissible profile is admissible.
inline std::vector<ValuationProfile> enumerate(const AdmissibilityFilter& filter) {
    const auto caps = enumeration_caps(filter);
    if (!caps) throw std::invalid_argument("no finiteness cap derivable for filter " + filter.describe());
    std::vector<ValuationProfile> out;
    auto dfs = [&](auto&& self, const ValuationProfile& node) -> void {
        if (node.size() >= caps->max_length) return;
        const unsigned top = node.empty() ? caps->max_value : std::min(caps->max_value, node.values().back());
        for (unsigned v = 1; v <= top; ++v) {
            auto child = node.appended(v);
            if (!is_admissible(child, filter)) continue;
            out.push_back(child);
            self(self, child);
        }
    };
    dfs(dfs, ValuationProfile{});
    std::sort(out.begin(), out.end());
    return out;
}

inline unsigned max_weight(const AdmissibilityFilter& filter) {
    unsigned best = 0;
    for (const auto& p : enumerate(filter)) best = std::max(best, p.weight());
    return best;
}

/// Profiles attaining max_weight.
inline std::vector<ValuationProfile> max_weight_profiles(const AdmissibilityFilter& filter) {
    const auto all = enumerate(filter);
    unsigned best = 0;
    for (const auto& p : all) best = std::max(best, p.weight());
    std::vector<ValuationProfile> out;
    for (const auto& p : all)
        if (p.weight() == best) out.push_back(p);
    return out;
}

/// max over admissible profiles of (sum v_r) / v_1.
inline Rational max_weight_over_height(const AdmissibilityFilter& filter) {
    const auto all = enumerate(filter);
    if (all.empty()) throw std::invalid_argument("filter admits no nonempty profile");
    Rational best(0);
    for (const auto& p : all) best = std::max(best, Rational(p.weight(), p.height()));
    return best;
}

/// max_weight(GenericU(d, u)), checked against the closed form (d - u/2)(u - 1).
inline unsigned generic_u_exponent(unsigned d, unsigned u) {
    if (u < 2 || u > d) throw std::invalid_argument("generic_u_exponent requires 2 <= u <= d");
    const unsigned enumerated = max_weight(generic_u(d, u));
    const Rational closed = (Rational(d) - Rational(u, 2)) * Rational(u - 1);
    if (closed != Rational(enumerated))
        throw std::logic_error("GenericU max weight " + std::to_string(enumerated) + " disagrees with (d-u/2)(u-1) = " +
                               closed.to_string());
    return enumerated;
}

// Tree rendering. The displayed trees grow a profile by either raising its last entry by one
// (when it stays <= the previous entry) or appending a 1. Every profile then has exactly one
// parent and the depth of a node equals its weight, so the tree height is max_weight.

inline std::optional<ValuationProfile> tree_parent(const ValuationProfile& p) {
    if (p.empty() || p.values() == std::vector<unsigned>{1}) return std::nullopt;
    auto v = p.values();
    if (v.back() == 1)
        v.pop_back();
    else
        --v.back();
    return ValuationProfile(std::move(v));
}

inline std::vector<ValuationProfile> tree_children(const ValuationProfile& p, const std::set<ValuationProfile>& members) {
    std::vector<ValuationProfile> out;
    auto v = p.values();
    if (v.size() == 1 || (v.size() > 1 && v.back() < v[v.size() - 2])) {
        auto raised = v;
        ++raised.back();
        ValuationProfile c(std::move(raised));
        if (members.count(c)) out.push_back(c);
    }
    ValuationProfile appended = p.appended(1);
    if (members.count(appended)) out.push_back(appended);
    return out;
}

inline std::string render_tree_text(const std::vector<ValuationProfile>& profiles) {
    const std::set<ValuationProfile> members(profiles.begin(), profiles.end());
    std::ostringstream os;
    auto walk = [&](auto&& self, const ValuationProfile& node, const std::string& prefix, bool last, bool root) -> void {
        os << prefix << (root ? "" : (last ? "└── " : "├── ")) << node.to_string() << '\n';
        const auto kids = tree_children(node, members);
        for (std::size_t i = 0; i < kids.size(); ++i)
            self(self, kids[i], root ? prefix : prefix + (last ? "    " : "│   "), i + 1 == kids.size(), false);
    };
    for (const auto& p : profiles) {
        const auto parent = tree_parent(p);
        if (!parent || !members.count(*parent)) walk(walk, p, "", true, true);
    }
    return os.str();
}

inline std::string render_tree_dot(const std::vector<ValuationProfile>& profiles, const std::string& name = "profiles") {
    const std::set<ValuationProfile> members(profiles.begin(), profiles.end());
    std::ostringstream os;
    os << "digraph " << name << " {\n  node [shape=plaintext];\n";
    for (const auto& p : members) os << "  \"" << p.to_string() << "\";\n";
    for (const auto& p : members)
        for (const auto& c : tree_children(p, members))
            os << "  \"" << p.to_string() << "\" -> \"" << c.to_string() << "\";\n";
    os << "}\n";
    return os.str();
}

/// Depth (in nodes) of the deepest profile in the rendering tree.
inline unsigned tree_height(const std::vector<ValuationProfile>& profiles) {
    unsigned best = 0;
    for (const auto& p : profiles) {
        unsigned depth = 1;
        for (auto q = tree_parent(p); q; q = tree_parent(*q)) ++depth;
        best = std::max(best, depth);
    }
    return best;
}

}  // namespace lcmlab
