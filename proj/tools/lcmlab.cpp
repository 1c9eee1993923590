// lcmlab: command-line front end for the valuation engine, the root-pairing analysis,
// the profile enumerator and the product-inequality checks.
//
// Exit codes: 0 success, 2 violation found, 3 input rejected, 4 factoring budget exceeded.

#include "lcmlab/lcmlab.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace lcmlab;

constexpr int kOk = 0;
constexpr int kViolation = 2;
constexpr int kRejected = 3;
constexpr int kBudget = 4;

struct RunConfig {
    std::string poly;
    std::int64_t N = 0;
    std::vector<std::int64_t> grid;
    std::string cutoff;
    unsigned u = 0;
    unsigned eta = 0;
    unsigned d = 0;
    std::string cache_dir;
    std::string format = "csv";
    std::string out;
    std::uint64_t rho_budget = std::uint64_t{1} << 24;
    std::uint64_t prime_budget = 2000;
    bool allow_unknown = false;
    bool no_timestamp = false;
    bool exact = false;
    unsigned jobs = 1;
    std::string theorem;
    std::string lemma;
    std::string filter;
    unsigned support = 0;
};

class Rejected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

ExperimentOptions experiment_options(const RunConfig& cfg) {
    ExperimentOptions opts;
    opts.build.rho_budget = cfg.rho_budget;
    opts.build.jobs = cfg.jobs;
    opts.irreducibility_prime_budget = cfg.prime_budget;
    opts.allow_unknown_irreducibility = cfg.allow_unknown;
    opts.exact = cfg.exact;
    if (!cfg.cache_dir.empty())
        opts.cache_dir = cfg.cache_dir;
    else if (const char* env = std::getenv("LCMLAB_CACHE"); env && *env)
        opts.cache_dir = std::filesystem::path(env);
    return opts;
}

std::vector<std::int64_t> n_values(const RunConfig& cfg) {
    std::vector<std::int64_t> grid = cfg.grid;
    if (grid.empty() && cfg.N > 0) grid.push_back(cfg.N);
    if (grid.empty()) throw Rejected("give --N or --grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) throw Rejected("--grid must be strictly increasing");
    if (grid.front() < 2) throw Rejected("N must be >= 2");
    return grid;
}

Polynomial parse_poly(const RunConfig& cfg) {
    if (cfg.poly.empty()) throw Rejected("--poly is required");
    try {
        return Polynomial::parse(cfg.poly);
    } catch (const PolynomialError& e) {
        throw Rejected(e.what());
    }
}

std::optional<Rational> parse_cutoff(const RunConfig& cfg) {
    if (cfg.cutoff.empty()) return std::nullopt;
    try {
        const auto c = Rational::parse(cfg.cutoff);
        if (c < Rational(1)) throw Rejected("--c must be >= 1");
        return c;
    } catch (const std::invalid_argument& e) {
        throw Rejected(e.what());
    }
}

/// Rejects reducible input; Unknown needs the override flag.
void gate_irreducibility(const Polynomial& f, const RunConfig& cfg) {
    const auto v = irreducibility_witness(f, cfg.prime_budget);
    using Status = IrreducibilityVerdict::Status;
    if (v.status == Status::Reducible) throw Rejected(v.describe());
    if (v.status == Status::Unknown && !cfg.allow_unknown)
        throw Rejected(v.describe() + " (use --allow-unknown to proceed)");
}

void emit_reports(const RunConfig& cfg, const std::vector<BoundReport>& reports, std::ostream& fallback) {
    std::ofstream file;
    std::ostream* os = &fallback;
    if (!cfg.out.empty()) {
        file.open(cfg.out);
        if (!file) throw std::runtime_error("cannot open " + cfg.out);
        os = &file;
    }
    if (cfg.format == "json") {
        nlohmann::json doc;
        if (!cfg.no_timestamp) doc["generated"] = timestamp();
        doc["reports"] = nlohmann::json::array();
        for (const auto& r : reports) doc["reports"].push_back(report_to_json(r));
        *os << doc.dump(2) << '\n';
    } else {
        if (!cfg.no_timestamp) *os << "# lcmlab report generated " << timestamp() << '\n';
        write_reports_csv(*os, reports);
    }
}

int cmd_analyze(const RunConfig& cfg) {
    const auto f = parse_poly(cfg);
    gate_irreducibility(f, cfg);
    const auto grid = n_values(cfg);
    const Rational c = parse_cutoff(cfg).value_or(Rational(1));
    const auto opts = experiment_options(cfg);
    const auto table = table_for(f, grid.back(), c, opts);
    std::vector<BoundReport> reports;
    for (auto N : grid) reports.push_back(mass_report(table.prefix(N)));
    emit_reports(cfg, reports, std::cout);
    return kOk;
}

std::string fmt(double x, int precision = 6) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision) << x;
    return os.str();
}

void print_bound(const BoundReport& r, std::ostream& os) {
    os << to_string(r.kind) << ": f=" << r.poly << " N=" << r.N << " c=" << r.c << " h=" << *r.exponent_h
       << " log" << (r.uses_radical ? "ell" : "L") << "=" << fmt(r.uses_radical ? r.masses.log_ell : r.masses.log_L)
       << " large_mass=" << fmt(r.masses.large_mass) << " margin=" << fmt(*r.margin)
       << " normalized_gap=" << fmt(*r.normalized_gap);
    if (r.exact_holds) os << " exact=" << (*r.exact_holds ? "holds" : "FAILS");
    if (r.kind == BoundKind::RadicalCyclotomic) os << " outside_filter=" << r.large_primes_outside_filter;
    os << (r.holds() && r.exact_holds.value_or(true) ? "  [ok]" : "  [VIOLATION]") << '\n';
}

int verify_theorem(const RunConfig& cfg) {
    const auto opts = experiment_options(cfg);
    const auto grid = n_values(cfg);
    const auto c = parse_cutoff(cfg);
    std::vector<BoundReport> reports;
    if (cfg.theorem == "4") {
        if (cfg.eta < 1 || cfg.eta > 6) throw Rejected("--eta must be in 1..6");
        const auto table = table_for(cyclotomic_power_of_two(cfg.eta), grid.back(), c.value_or(Rational(2)), opts);
        for (auto N : grid) reports.push_back(check_theorem4(table.prefix(N), cfg.eta, c, opts));
    } else {
        const auto f = parse_poly(cfg);
        if (!is_even(f)) throw Rejected(f.to_string() + " is not even");
        gate_irreducibility(f, cfg);
        const auto table = table_for(f, grid.back(), Rational(2), opts);
        for (auto N : grid) {
            if (cfg.theorem == "2") {
                if (N < 100) throw Rejected("theorem 2 check requires N >= 100");
                reports.push_back(check_theorem2(table.prefix(N), opts));
            } else if (cfg.theorem == "3") {
                reports.push_back(check_theorem3(table.prefix(N), c, opts));
            } else {
                throw Rejected("--theorem must be 2, 3 or 4");
            }
        }
    }
    bool ok = true;
    for (const auto& r : reports) {
        print_bound(r, std::cout);
        ok = ok && r.holds() && r.exact_holds.value_or(true);
    }
    if (!cfg.out.empty()) emit_reports(cfg, reports, std::cout);
    return ok ? kOk : kViolation;
}

int verify_lemma(const RunConfig& cfg) {
    const auto f = parse_poly(cfg);
    const auto opts = experiment_options(cfg);
    if (cfg.lemma == "zerosum") {
        const auto rs = find_roots(f);
        const auto mu = minimal_u(rs);
        std::cout << "roots of " << f.to_string() << ": " << rs.roots.size() << ", pairs " << rs.pairs.size()
                  << ", unpaired " << rs.unpaired.size() << (rs.from_symmetry ? " (exact symmetry)" : "") << '\n';
        std::cout << "minimal u via pairing: " << (mu.admissible ? std::to_string(mu.u) : "none") << '\n';
        return kOk;
    }
    const auto grid = n_values(cfg);
    const auto table = table_for(f, grid.back(), Rational(1), opts);
    unsigned u = cfg.u;
    if (u == 0) {
        const auto mu = minimal_u(find_roots(f));
        if (!mu.admissible) throw Rejected("no admissible u via root pairing for " + f.to_string() + "; pass --u");
        u = mu.u;
    }
    bool ok = true;
    for (auto N : grid) {
        const auto rep = verify_mu_bounds(table.prefix(N), u);
        if (cfg.lemma == "algnt") {
            std::cout << "N=" << N << ": u=" << u << ", max mu_p over p>2N: " << rep.max_mu_above_2n << " (bound "
                      << u - 1 << "), violations " << rep.algnt.size() << '\n';
            for (const auto& v : rep.algnt) std::cout << "  p=" << v.p.get_str() << " mu_p=" << v.mu << '\n';
            ok = ok && rep.algnt.empty();
        } else if (cfg.lemma == "sah") {
            std::cout << "N=" << N << ": minimal violation-free c' = "
                      << (rep.minimal_sah_free_c ? rep.minimal_sah_free_c->to_string() : "none in grid") << '\n';
            for (const auto& row : rep.sah) {
                std::cout << "  c'=" << row.c << ": " << row.violations.size() << " violations";
                for (std::size_t i = 0; i < row.violations.size() && i < 5; ++i)
                    std::cout << (i ? ", " : " [") << "p=" << row.violations[i].p.get_str() << " nu=" << row.violations[i].nu
                              << " mu=" << row.violations[i].mu;
                std::cout << (row.violations.empty() ? "" : "]") << '\n';
                if (row.violations.empty()) break;
            }
            ok = ok && rep.minimal_sah_free_c.has_value();
        } else {
            throw Rejected("--lemma must be algnt, sah or zerosum");
        }
    }
    return ok ? kOk : kViolation;
}

int cmd_verify(const RunConfig& cfg) {
    if (cfg.theorem.empty() == cfg.lemma.empty()) throw Rejected("give exactly one of --theorem or --lemma");
    return cfg.theorem.empty() ? verify_lemma(cfg) : verify_theorem(cfg);
}

int cmd_tuples(const RunConfig& cfg) {
    AdmissibilityFilter filter;
    if (cfg.filter == "sah") {
        if (cfg.d < 2) throw Rejected("--d >= 2 required");
        filter = sah(cfg.d);
    } else if (cfg.filter == "baierdey") {
        if (cfg.eta < 1 || cfg.eta > 6) throw Rejected("--eta must be in 1..6");
        filter = baier_dey(cfg.eta);
    } else if (cfg.filter == "generic") {
        if (cfg.d < 2 || cfg.u < 2 || cfg.u > cfg.d) throw Rejected("need 2 <= --u <= --d");
        filter = generic_u(cfg.d, cfg.u);
    } else {
        throw Rejected("--filter must be sah, baierdey or generic");
    }
    const auto profiles = enumerate(filter);
    if (cfg.format == "dot") {
        std::cout << render_tree_dot(profiles);
        return kOk;
    }
    if (cfg.format == "json") {
        nlohmann::json j;
        j["filter"] = filter.describe();
        j["profiles"] = nlohmann::json::array();
        for (const auto& p : profiles) j["profiles"].push_back(p.values());
        j["count"] = profiles.size();
        j["max_weight"] = max_weight(filter);
        j["max_ratio"] = max_weight_over_height(filter).to_string();
        std::cout << j.dump(2) << '\n';
        return kOk;
    }
    std::cout << filter.describe() << '\n';
    if (cfg.format == "list") {
        for (const auto& p : profiles) std::cout << p.to_string() << '\n';
    } else {
        std::cout << render_tree_text(profiles);
    }
    std::cout << "profiles: " << profiles.size() << '\n';
    std::cout << "max-weight: " << max_weight(filter) << '\n';
    std::cout << "max-ratio: " << max_weight_over_height(filter) << '\n';
    std::cout << "maximizers:";
    for (const auto& p : max_weight_profiles(filter)) std::cout << ' ' << p.to_string();
    std::cout << '\n';
    if (cfg.filter == "generic") std::cout << "exponent (d-u/2)(u-1): " << generic_u_exponent(cfg.d, cfg.u) << '\n';
    return kOk;
}

int cmd_roots(const RunConfig& cfg) {
    const auto f = parse_poly(cfg);
    const auto rs = find_roots(f);
    std::cout << "f = " << f.to_string() << (rs.from_symmetry ? "  (even: exact pairing)" : "") << '\n';
    std::cout << "reconstruction error " << std::scientific << std::setprecision(3) << rs.reconstruction_error
              << " (tol " << rs.tol_rec << "), pairing tol " << rs.tol << std::defaultfloat << '\n';
    for (std::size_t i = 0; i < rs.roots.size(); ++i)
        std::cout << "  [" << i << "] " << std::setprecision(18) << static_cast<long double>(rs.roots[i].re) << " "
                  << std::showpos << static_cast<long double>(rs.roots[i].im) << std::noshowpos << "i\n";
    std::cout << "pairs:";
    for (auto [i, j] : rs.pairs) std::cout << " (" << i << "," << j << ")";
    std::cout << "\nunpaired:";
    for (auto i : rs.unpaired) std::cout << ' ' << i;
    const auto mu = minimal_u(rs);
    std::cout << "\nminimal u: " << (mu.admissible ? std::to_string(mu.u) : "none (no pairing)") << '\n';
    const std::size_t support = cfg.support ? cfg.support : std::min<std::size_t>(rs.roots.size(), 3);
    if (support > rs.roots.size()) throw Rejected("--support exceeds degree");
    const auto search = search_zero_sums(rs, support);
    std::cout << "zero sums with support <= " << support << ": " << search.sums.size() << '\n';
    auto show = [&](const ZeroSum& z) {
        std::cout << "  [";
        for (std::size_t i = 0; i < z.coefficients.size(); ++i) std::cout << (i ? "," : "") << std::showpos << z.coefficients[i];
        std::cout << std::noshowpos << "] residual " << std::scientific << std::setprecision(2) << z.residual
                  << std::defaultfloat << '\n';
    };
    for (const auto& z : search.sums) show(z);
    if (!search.near_misses.empty()) {
        std::cout << "near misses: " << search.near_misses.size() << '\n';
        for (const auto& z : search.near_misses) show(z);
    }
    return kOk;
}

int cmd_growth(const RunConfig& cfg) {
    const auto f = parse_poly(cfg);
    gate_irreducibility(f, cfg);
    const auto grid = n_values(cfg);
    if (grid.front() < 100) throw Rejected("growth grid must start at N >= 100");
    const auto points = growth_scan(f, grid, parse_cutoff(cfg).value_or(Rational(2)), experiment_options(cfg));
    std::cout << "N,q_gap,small_gap,logL_over_NlogN,logell_over_NlogN,b_estimate,b_delta\n";
    for (const auto& g : points)
        std::cout << g.report.N << ',' << fmt(g.q_gap) << ',' << fmt(g.small_gap) << ',' << fmt(g.lcm_ratio) << ','
                  << fmt(g.radical_ratio) << ',' << fmt(g.b_estimate) << ',' << (g.b_delta ? fmt(*g.b_delta) : "") << '\n';
    if (!cfg.out.empty()) {
        std::vector<BoundReport> reports;
        for (const auto& g : points) reports.push_back(g.report);
        emit_reports(cfg, reports, std::cout);
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lcmlab: prime-valuation anatomy of lcm{f(1),...,f(N)}"};
    app.require_subcommand(1, 1);
    RunConfig cfg;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--poly", cfg.poly, "polynomial, e.g. \"X^4-2\" or \"-2,0,0,0,1\"");
        sub->add_option("--N", cfg.N, "number of values f(1..N)");
        sub->add_option("--grid", cfg.grid, "strictly increasing list of N")->delimiter(',');
        sub->add_option("--c", cfg.cutoff, "cutoff constant c >= 1 (integer, a/b or decimal)");
        sub->add_option("--cache", cfg.cache_dir, "factor-table cache directory (default $LCMLAB_CACHE)");
        sub->add_option("--rho-budget", cfg.rho_budget, "Pollard-rho iterations per composite");
        sub->add_option("--prime-budget", cfg.prime_budget, "largest prime tried as irreducibility witness");
        sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1u, 256u));
        sub->add_flag("--allow-unknown", cfg.allow_unknown, "proceed when irreducibility cannot be certified");
        sub->add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.out, "write the report to this file");
        sub->add_flag("--no-timestamp", cfg.no_timestamp, "omit the timestamp header");
    };

    auto* analyze = app.add_subcommand("analyze", "factor f(1..N) and report log Q, log L, log ell and masses");
    common(analyze);
    auto* verify = app.add_subcommand("verify", "check a product inequality or a multiplicity lemma");
    common(verify);
    verify->add_option("--theorem", cfg.theorem, "2 (L, h=d/2) | 3 (ell, h=(d-u/2)(u-1)) | 4 (ell, X^(2^eta)+1)");
    verify->add_option("--lemma", cfg.lemma, "algnt | sah | zerosum");
    verify->add_option("--u", cfg.u, "override u (default: from the root pairing)");
    verify->add_option("--eta", cfg.eta, "eta for theorem 4");
    verify->add_flag("--exact", cfg.exact, "confirm inequalities in exact integer arithmetic");
    auto* tuples = app.add_subcommand("tuples", "enumerate admissible valuation profiles");
    tuples->add_option("--filter", cfg.filter, "sah | baierdey | generic")->required();
    tuples->add_option("--d", cfg.d, "degree");
    tuples->add_option("--u", cfg.u, "u for the generic filter");
    tuples->add_option("--eta", cfg.eta, "eta for the Baier-Dey filter");
    tuples->add_option("--format", cfg.format, "tree | list | dot | json")
        ->check(CLI::IsMember({"tree", "list", "dot", "json"}));
    auto* roots = app.add_subcommand("roots", "complex roots, negation pairing and small zero sums");
    roots->add_option("--poly", cfg.poly, "polynomial")->required();
    roots->add_option("--support", cfg.support, "largest zero-sum support to search (default min(d,3))");
    auto* growth = app.add_subcommand("growth", "normalized growth sequences along a grid of N");
    common(growth);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kRejected;
    }
    if (tuples->parsed() && cfg.format == "csv") cfg.format = "tree";

    try {
        if (analyze->parsed()) return cmd_analyze(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
        if (tuples->parsed()) return cmd_tuples(cfg);
        if (roots->parsed()) return cmd_roots(cfg);
        if (growth->parsed()) return cmd_growth(cfg);
    } catch (const Rejected& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRejected;
    } catch (const HypothesisError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRejected;
    } catch (const PolynomialError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRejected;
    } catch (const FactoringError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kOk;
}
