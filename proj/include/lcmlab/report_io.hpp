#pragma once

#include "lcmlab/experiments.hpp"

#include <nlohmann/json.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace lcmlab {

inline const std::vector<std::string>& report_columns() {
    static const std::vector<std::string> cols{"poly", "N", "c", "logQ", "logL", "logell", "small_mass",
                                               "large_mass", "h", "margin", "normalized_gap"};
    return cols;
}

namespace detail {

inline std::string fmt_real(double x) {
    std::ostringstream os;
    os << std::setprecision(15) << x;
    return os.str();
}

}  // namespace detail

/// One CSV row per report; mass-only rows leave h, margin and normalized_gap empty.
inline void write_reports_csv(std::ostream& os, const std::vector<BoundReport>& reports) {
    const auto& cols = report_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    for (const auto& r : reports) {
        using detail::fmt_real;
        os << '"' << r.poly << '"' << ',' << r.N << ',' << r.c.to_string() << ',' << fmt_real(r.masses.log_Q) << ','
           << fmt_real(r.masses.log_L) << ',' << fmt_real(r.masses.log_ell) << ',' << fmt_real(r.masses.small_mass)
           << ',' << fmt_real(r.masses.large_mass) << ',' << (r.exponent_h ? r.exponent_h->to_string() : "") << ','
           << (r.margin ? fmt_real(*r.margin) : "") << ',' << (r.normalized_gap ? fmt_real(*r.normalized_gap) : "")
           << '\n';
    }
}

inline nlohmann::json report_to_json(const BoundReport& r) {
    nlohmann::json j;
    j["poly"] = r.poly;
    j["N"] = r.N;
    j["c"] = r.c.to_string();
    j["logQ"] = r.masses.log_Q;
    j["logL"] = r.masses.log_L;
    j["logell"] = r.masses.log_ell;
    j["small_mass"] = r.masses.small_mass;
    j["large_mass"] = r.masses.large_mass;
    j["h"] = r.exponent_h ? nlohmann::json(r.exponent_h->to_string()) : nlohmann::json(nullptr);
    j["margin"] = r.margin ? nlohmann::json(*r.margin) : nlohmann::json(nullptr);
    j["normalized_gap"] = r.normalized_gap ? nlohmann::json(*r.normalized_gap) : nlohmann::json(nullptr);
    return j;
}

inline void write_reports_json(std::ostream& os, const std::vector<BoundReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    os << arr.dump(2) << '\n';
}

}  // namespace lcmlab
