#pragma once

#include "lcmlab/valuation.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unistd.h>

namespace lcmlab {

// One JSON object per line. Line 1 is the header
//   {"format":"lcmlab-factors","version":1,"coeffs":[...],"N":...,"c":"..."}
// followed by {"n":k,"factors":[[p,e],...]} for k = 1..N, primes ascending.
// Integers wider than 64 bits are written as decimal strings; integers that fit are plain numbers.
inline constexpr int kFactorCacheVersion = 1;

namespace detail {

inline nlohmann::json bigint_to_json(const BigInt& x) {
    if (x.fits_slong_p()) return static_cast<std::int64_t>(x.get_si());
    if (fits_u64(x)) return to_u64(x);
    return x.get_str();
}

inline BigInt bigint_from_json(const nlohmann::json& j) {
    if (j.is_number_unsigned()) return from_u64(j.get<std::uint64_t>());
    if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        BigInt x;
        if (x.set_str(j.get<std::string>(), 10) != 0) throw std::runtime_error("bad integer string in cache");
        return x;
    }
    throw std::runtime_error("expected an integer in cache record");
}

}  // namespace detail

inline void write_table(std::ostream& os, const FactorizationTable& t) {
    nlohmann::json header;
    header["format"] = "lcmlab-factors";
    header["version"] = kFactorCacheVersion;
    header["coeffs"] = nlohmann::json::array();
    for (const auto& c : t.f().coeffs()) header["coeffs"].push_back(detail::bigint_to_json(c));
    header["N"] = t.N();
    header["c"] = t.cutoff_c().to_string();
    os << header.dump() << '\n';
    for (std::int64_t n = 1; n <= t.N(); ++n) {
        nlohmann::json rec;
        rec["n"] = n;
        rec["factors"] = nlohmann::json::array();
        for (const auto& pp : t.factors(n)) rec["factors"].push_back({detail::bigint_to_json(pp.p), pp.e});
        os << rec.dump() << '\n';
    }
}

/// Reads a table written by write_table. The small/large split is recomputed at `c`;
/// every row is checked against |f(n)| so a corrupt file is rejected rather than trusted.
inline FactorizationTable read_table(std::istream& is, Rational c) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("factor cache: empty file");
    const auto header = nlohmann::json::parse(line);
    if (header.value("format", "") != "lcmlab-factors" || header.value("version", 0) != kFactorCacheVersion)
        throw std::runtime_error("factor cache: unknown format");
    Coeffs coeffs;
    for (const auto& j : header.at("coeffs")) coeffs.push_back(detail::bigint_from_json(j));
    Polynomial f(std::move(coeffs));
    const auto N = header.at("N").get<std::int64_t>();
    std::vector<std::vector<PrimePower>> entries(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n) {
        if (!std::getline(is, line)) throw std::runtime_error("factor cache: truncated at n=" + std::to_string(n));
        const auto rec = nlohmann::json::parse(line);
        if (rec.at("n").get<std::int64_t>() != n) throw std::runtime_error("factor cache: records out of order");
        for (const auto& pe : rec.at("factors"))
            entries[static_cast<std::size_t>(n - 1)].push_back({detail::bigint_from_json(pe.at(0)), pe.at(1).get<unsigned>(), false});
    }
    FactorizationTable t(std::move(f), N, c, std::move(entries));
    if (auto bad = find_conservation_failure(t))
        throw std::runtime_error("factor cache: row n=" + std::to_string(*bad) + " does not reproduce |f(n)|");
    return t;
}

/// Cache key is (coefficients, N).
inline std::filesystem::path cache_path(const std::filesystem::path& dir, const Polynomial& f, std::int64_t N) {
    std::string key = "f";
    for (const auto& c : f.coeffs()) key += "_" + (c < 0 ? "m" + BigInt(-c).get_str() : c.get_str());
    return dir / (key + "_N" + std::to_string(N) + ".jsonl");
}

/// Loads the cached table when present, otherwise builds and stores it.
/// Writes go through a temporary file and an atomic rename.
inline FactorizationTable load_or_build(const std::optional<std::filesystem::path>& dir, const Polynomial& f,
                                        std::int64_t N, Rational c, const BuildOptions& opts = {}) {
    if (!dir) return build_table(f, N, c, opts);
    const auto path = cache_path(*dir, f, N);
    if (std::filesystem::exists(path)) {
        std::ifstream in(path);
        try {
            auto t = read_table(in, c);
            if (t.f() == f && t.N() == N) return t;
        } catch (const std::exception&) {
            // unreadable entry is rebuilt below
        }
    }
    auto t = build_table(f, N, c, opts);
    std::filesystem::create_directories(*dir);
    auto tmp = path;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        write_table(out, t);
        if (!out) throw std::runtime_error("factor cache: cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
    return t;
}

}  // namespace lcmlab
