#pragma once

// Batch command line: `compute`, `verify`, `sweep`.
//
// Exit codes: 0 success, 1 invalid flags, 2 route disagreement (compute/sweep
// with --route all) or failed identity (verify), 3 quadrature non-convergence.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <exception>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "koff2d/identities.hpp"
#include "koff2d/model.hpp"
#include "koff2d/offrate.hpp"

namespace koff2d::cli {

enum ExitCode : int { kOk = 0, kInvalidFlags = 1, kDisagreement = 2, kNonConvergence = 3 };

inline constexpr double kDefaultRelTol = 1e-10;
inline constexpr const char* kTolEnv = "KOFF2D_DEFAULT_TOL";

enum class Format { csv, json, table };

struct OutputRecord {
    std::string param_name = "none";
    double param_value = std::numeric_limits<double>::quiet_NaN();
    std::optional<PhysicalParams> physical;
    DimensionlessParams dimensionless;
    std::string route;
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
    double wall_time = 0.0;  ///< seconds
};

// --- number formatting ------------------------------------------------------

/// Locale-independent %.{digits}g.
inline std::string format_number(double v, int digits = 17) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
    return {buf, res.ptr};
}

inline double parse_number(std::string_view s) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    return v;
}

// --- CSV ------------------------------------------------------------------

inline constexpr std::string_view kCsvHeader =
    "param_name,param_value,h_tilde,kappa_tilde,route,value,error_estimate,converged";

inline std::string to_csv(const OutputRecord& r) {
    std::string s = r.param_name;
    for (double v : {r.param_value, r.dimensionless.h_tilde, r.dimensionless.kappa_tilde}) {
        s += ',';
        s += format_number(v);
    }
    s += ',' + r.route;
    s += ',' + format_number(r.value);
    s += ',' + format_number(r.error_estimate);
    s += r.converged ? ",true" : ",false";
    return s;
}

/// Reads one data row of the CSV schema back into a record (physical echo and
/// wall time are not part of the CSV schema).
inline OutputRecord parse_csv_row(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (cells.size() != 8) throw std::invalid_argument("csv row: expected 8 fields");
    OutputRecord r;
    r.param_name = std::string(cells[0]);
    r.param_value = parse_number(cells[1]);
    r.dimensionless = {parse_number(cells[2]), parse_number(cells[3])};
    r.route = std::string(cells[4]);
    r.value = parse_number(cells[5]);
    r.error_estimate = parse_number(cells[6]);
    if (cells[7] != "true" && cells[7] != "false") throw std::invalid_argument("csv row: bad converged flag");
    r.converged = cells[7] == "true";
    return r;
}

// --- JSON -----------------------------------------------------------------

inline nlohmann::json to_json(const OutputRecord& r) {
    nlohmann::json j;
    j["param_name"] = r.param_name;
    j["param_value"] = std::isfinite(r.param_value) ? nlohmann::json(r.param_value) : nlohmann::json(nullptr);
    j["h_tilde"] = r.dimensionless.h_tilde;
    j["kappa_tilde"] = r.dimensionless.kappa_tilde;
    if (r.physical) {
        j["ka"] = r.physical->kappa_a;
        j["kd"] = r.physical->kappa_d;
        j["D"] = r.physical->diffusion;
        j["a"] = r.physical->radius;
    }
    j["route"] = r.route;
    j["value"] = r.value;
    j["error_estimate"] = r.error_estimate;
    j["converged"] = r.converged;
    j["wall_time"] = r.wall_time;
    return j;
}

inline OutputRecord from_json(const nlohmann::json& j) {
    OutputRecord r;
    r.param_name = j.at("param_name").get<std::string>();
    r.param_value = j.at("param_value").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                                  : j.at("param_value").get<double>();
    r.dimensionless = {j.at("h_tilde").get<double>(), j.at("kappa_tilde").get<double>()};
    if (j.contains("ka"))
        r.physical = PhysicalParams{j.at("ka").get<double>(), j.at("kd").get<double>(), j.at("D").get<double>(),
                                    j.at("a").get<double>()};
    r.route = j.at("route").get<std::string>();
    r.value = j.at("value").get<double>();
    r.error_estimate = j.at("error_estimate").get<double>();
    r.converged = j.at("converged").get<bool>();
    r.wall_time = j.at("wall_time").get<double>();
    return r;
}

// --- table ----------------------------------------------------------------

inline std::string to_table_row(const OutputRecord& r) {
    std::ostringstream os;
    os << std::left << std::setw(24) << r.route << ' ' << std::setw(18) << format_number(r.value, 10) << ' '
       << std::setw(18) << format_number(r.error_estimate, 10) << ' ' << std::setw(9)
       << (r.converged ? "yes" : "no") << " h~=" << format_number(r.dimensionless.h_tilde, 10)
       << " kappa~=" << format_number(r.dimensionless.kappa_tilde, 10);
    if (r.param_name != "none") os << ' ' << r.param_name << '=' << format_number(r.param_value, 10);
    return os.str();
}

inline void emit(std::ostream& out, const std::vector<OutputRecord>& records, Format fmt) {
    switch (fmt) {
        case Format::csv:
            out << kCsvHeader << '\n';
            for (const auto& r : records) out << to_csv(r) << '\n';
            break;
        case Format::json: {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& r : records) arr.push_back(to_json(r));
            out << arr.dump(2) << '\n';
            break;
        }
        case Format::table:
            out << std::left << std::setw(24) << "route" << ' ' << std::setw(18) << "value" << ' '
                << std::setw(18) << "error_estimate" << ' ' << "converged\n";
            for (const auto& r : records) out << to_table_row(r) << '\n';
            break;
    }
}

// --- shared flag handling -----------------------------------------------------

namespace detail {

inline std::string flag_for_field(const std::string& field);

// "--flag: reason" from a ParameterError, whose what() is "field: reason".
inline std::string flag_message(const ParameterError& e) {
    std::string what = e.what();
    const std::string prefix = e.field() + ": ";
    if (what.rfind(prefix, 0) == 0) what.erase(0, prefix.size());
    return flag_for_field(e.field()) + ": " + what;
}

inline std::string flag_for_field(const std::string& field) {
    static const std::map<std::string, std::string> names{
        {"kappa_a", "--ka"},       {"kappa_d", "--kd"},         {"D", "--D"},          {"a", "--a"},
        {"h_tilde", "--h-tilde"}, {"kappa_tilde", "--kappa-tilde"}, {"rel_tol", "--tol"}};
    const auto it = names.find(field);
    return it == names.end() ? field : it->second;
}

struct InvalidFlag : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParamFlags {
    std::optional<double> ka, kd, diffusion, radius, h_tilde, kappa_tilde;

    void attach(CLI::App& app) {
        app.add_option("--ka", ka, "intrinsic association constant kappa_a (area/time)");
        app.add_option("--kd", kd, "intrinsic dissociation constant kappa_d (1/time)");
        app.add_option("--D", diffusion, "diffusion constant D (area/time)");
        app.add_option("--a", radius, "encounter radius a (length)");
        app.add_option("--h-tilde", h_tilde, "dimensionless association strength");
        app.add_option("--kappa-tilde", kappa_tilde, "dimensionless dissociation constant");
    }

    [[nodiscard]] bool any_physical() const { return ka || kd || diffusion || radius; }
    [[nodiscard]] bool any_dimensionless() const { return h_tilde || kappa_tilde; }
};

// Either a complete physical set or a complete dimensionless set.
struct ResolvedParams {
    std::optional<PhysicalParams> physical;
    DimensionlessParams dimensionless;
};

inline ResolvedParams resolve(const ParamFlags& f) {
    if (f.any_physical() && f.any_dimensionless())
        throw InvalidFlag("physical (--ka --kd --D --a) and dimensionless (--h-tilde --kappa-tilde) flags cannot be mixed");
    ResolvedParams r;
    try {
        if (f.any_physical()) {
            for (auto [opt, name] : {std::pair{&f.ka, "--ka"}, std::pair{&f.kd, "--kd"},
                                     std::pair{&f.diffusion, "--D"}, std::pair{&f.radius, "--a"}})
                if (!*opt) throw InvalidFlag(std::string(name) + ": required with physical parameters");
            r.physical = PhysicalParams{*f.ka, *f.kd, *f.diffusion, *f.radius};
            r.dimensionless = nondimensionalize(*r.physical);
        } else if (f.any_dimensionless()) {
            if (!f.h_tilde) throw InvalidFlag("--h-tilde: required with dimensionless parameters");
            if (!f.kappa_tilde) throw InvalidFlag("--kappa-tilde: required with dimensionless parameters");
            r.dimensionless = {*f.h_tilde, *f.kappa_tilde};
            validate(r.dimensionless);
        } else {
            throw InvalidFlag("supply either --ka --kd --D --a or --h-tilde --kappa-tilde");
        }
    } catch (const ParameterError& e) {
        throw InvalidFlag(flag_message(e));
    }
    return r;
}

/// --tol wins over KOFF2D_DEFAULT_TOL, which wins over the built-in default.
inline quadrature::QuadratureConfig quadrature_config(const std::optional<double>& tol) {
    quadrature::QuadratureConfig cfg;
    cfg.rel_tol = kDefaultRelTol;
    if (const char* env = std::getenv(kTolEnv); env != nullptr && *env != '\0') {
        try {
            cfg.rel_tol = parse_number(env);
        } catch (const std::invalid_argument&) {
            throw InvalidFlag(std::string(kTolEnv) + ": not a number");
        }
    }
    if (tol) cfg.rel_tol = *tol;
    try {
        quadrature::validate(cfg);
    } catch (const ParameterError& e) {
        const std::string msg = flag_message(e);
        throw InvalidFlag((tol ? std::string("--tol") : std::string(kTolEnv)) + msg.substr(msg.find(':')));
    }
    return cfg;
}

inline Format parse_format(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    return Format::table;
}

inline std::vector<offrate::Route> routes_for(const std::string& flag) {
    if (flag == "all")
        return {offrate::Route::closed_form, offrate::Route::quadrature, offrate::Route::stieltjes_extrapolation};
    return {*offrate::parse_route(flag)};
}

struct PointOutcome {
    std::vector<OutputRecord> records;
    bool quadrature_failed = false;
    bool disagreement = false;
};

inline OutputRecord make_record(const ResolvedParams& p, const offrate::RouteResult& r, double seconds) {
    OutputRecord rec;
    rec.physical = p.physical;
    rec.dimensionless = p.dimensionless;
    rec.route = std::string(offrate::to_string(r.route));
    rec.value = r.value;
    rec.error_estimate = r.error_estimate;
    rec.converged = r.converged;
    rec.wall_time = seconds;
    return rec;
}

inline PointOutcome evaluate_point(const ResolvedParams& p, const std::string& route_flag,
                                   const quadrature::QuadratureConfig& cfg) {
    using clock = std::chrono::steady_clock;
    PointOutcome out;
    if (route_flag == "all") {
        const auto t0 = clock::now();
        const offrate::Reconciliation rec =
            p.physical ? offrate::reconcile(*p.physical, cfg) : offrate::reconcile(p.dimensionless, cfg);
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        for (const auto& r : rec.results) out.records.push_back(make_record(p, r, secs));
        out.quadrature_failed = !rec.results[1].converged;
        out.disagreement = !rec.agree;
        return out;
    }
    for (offrate::Route route : routes_for(route_flag)) {
        const auto t0 = clock::now();
        const offrate::RouteResult r =
            p.physical ? offrate::koff_inverse(*p.physical, route, cfg) : offrate::finite_part(p.dimensionless, route, cfg);
        out.records.push_back(make_record(p, r, std::chrono::duration<double>(clock::now() - t0).count()));
        if (route == offrate::Route::quadrature && !r.converged) out.quadrature_failed = true;
    }
    return out;
}

inline int outcome_code(bool quadrature_failed, bool disagreement) {
    if (quadrature_failed) return kNonConvergence;
    if (disagreement) return kDisagreement;
    return kOk;
}

inline std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t comma = s.find(',', start);
        const std::string cell = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        out.push_back(parse_number(cell));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace detail

// --- verify output ------------------------------------------------------------

inline nlohmann::json to_json(const identities::IdentityReport& r) {
    return {{"identity", r.identity_name},   {"probe_points", r.probe_points},
            {"lhs", r.lhs_values},           {"rhs", r.rhs_values},
            {"max_rel_residual", r.max_rel_residual}, {"tolerance", r.tolerance},
            {"quadrature_converged", r.quadrature_converged}, {"passed", r.passed}};
}

inline void emit(std::ostream& out, const std::vector<identities::IdentityReport>& reports, Format fmt) {
    switch (fmt) {
        case Format::csv:
            out << "identity,probe,lhs,rhs,max_rel_residual,tolerance,passed\n";
            for (const auto& r : reports)
                for (std::size_t i = 0; i < r.probe_points.size(); ++i)
                    out << r.identity_name << ',' << format_number(r.probe_points[i]) << ','
                        << format_number(r.lhs_values[i]) << ',' << format_number(r.rhs_values[i]) << ','
                        << format_number(r.max_rel_residual) << ',' << format_number(r.tolerance) << ','
                        << (r.passed ? "true" : "false") << '\n';
            break;
        case Format::json: {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& r : reports) arr.push_back(to_json(r));
            out << arr.dump(2) << '\n';
            break;
        }
        case Format::table:
            for (const auto& r : reports)
                out << std::left << std::setw(16) << r.identity_name << " max_rel_residual="
                    << format_number(r.max_rel_residual, 10) << " tolerance=" << format_number(r.tolerance, 10)
                    << ' ' << (r.passed ? "PASSED" : "FAILED") << '\n';
            break;
    }
}

// --- commands ---------------------------------------------------------------

struct ComputeOptions {
    detail::ParamFlags params;
    std::string route = "closed";
    std::optional<double> tol;
    std::string format = "table";
};

inline int cmd_compute(const ComputeOptions& o, std::ostream& out) {
    const detail::ResolvedParams p = detail::resolve(o.params);
    const auto cfg = detail::quadrature_config(o.tol);
    const detail::PointOutcome r = detail::evaluate_point(p, o.route, cfg);
    emit(out, r.records, detail::parse_format(o.format));
    return detail::outcome_code(r.quadrature_failed, r.disagreement);
}

struct VerifyOptions {
    std::string identity = "all";
    std::optional<std::string> probes;
    std::optional<double> tol;
    std::optional<double> h_tilde;
    std::optional<double> kappa_tilde;
    std::string format = "table";
};

inline int cmd_verify(const VerifyOptions& o, std::ostream& out) {
    std::optional<std::vector<double>> probes;
    if (o.probes) {
        try {
            probes = detail::parse_list(*o.probes);
        } catch (const std::invalid_argument&) {
            throw detail::InvalidFlag("--probes: expected a comma-separated list of numbers");
        }
        for (double x : *probes)
            if (!(x > 0.0) || !std::isfinite(x)) throw detail::InvalidFlag("--probes: values must be > 0");
    }
    if (o.tol && (!(*o.tol > 0.0) || !std::isfinite(*o.tol))) throw detail::InvalidFlag("--tol: must be > 0");
    const DimensionlessParams params{o.h_tilde.value_or(1.0), o.kappa_tilde.value_or(1.0)};
    try {
        validate(params);
    } catch (const ParameterError& e) {
        throw detail::InvalidFlag(detail::flag_message(e));
    }

    const auto cfg = identities::identity_quadrature_config();
    auto tol_or = [&](double d) { return o.tol.value_or(d); };
    std::vector<identities::IdentityReport> reports;
    const bool all = o.identity == "all";
    if (all || o.identity == "double-laplace")
        reports.push_back(identities::verify_double_laplace(probes.value_or(identities::default_double_laplace_probes()),
                                                            cfg, tol_or(identities::kDoubleLaplaceTolerance)));
    if (all || o.identity == "ismail")
        for (int nu : {-1, 0})
            reports.push_back(identities::verify_ismail(nu, probes.value_or(identities::default_ismail_probes()), cfg,
                                                        tol_or(identities::kDefaultTolerance)));
    if (all || o.identity == "master")
        reports.push_back(identities::verify_master(params, probes.value_or(identities::default_master_probes()), cfg,
                                                    tol_or(identities::kDefaultTolerance)));
    emit(out, reports, detail::parse_format(o.format));
    const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
    return ok ? kOk : kDisagreement;
}

struct SweepOptions {
    detail::ParamFlags params;
    std::string param;
    std::optional<double> from;
    std::optional<double> to;
    int points = 25;
    bool log_spacing = false;
    std::string route = "closed";
    std::optional<double> tol;
    std::string format = "csv";
    unsigned threads = 0;  ///< 0: hardware concurrency
};

inline std::vector<double> sweep_grid(double from, double to, int points, bool log_spacing) {
    if (!std::isfinite(from) || !std::isfinite(to)) throw detail::InvalidFlag("--from/--to: must be finite");
    if (points < 1) throw detail::InvalidFlag("--points: must be >= 1");
    if (from > to) throw detail::InvalidFlag("--from/--to: empty range (from > to)");
    if (points == 1 && from != to) throw detail::InvalidFlag("--points: a single point needs --from == --to");
    if (log_spacing && !(from > 0.0)) throw detail::InvalidFlag("--log: range must be positive");
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        grid[static_cast<std::size_t>(i)] =
            log_spacing ? std::pow(10.0, std::log10(from) + t * (std::log10(to) - std::log10(from))) : from + t * (to - from);
    }
    grid.front() = from;
    grid.back() = to;
    return grid;
}

inline int cmd_sweep(const SweepOptions& o, std::ostream& out) {
    if (!o.from || !o.to) throw detail::InvalidFlag("--from/--to: both are required");
    const std::vector<double> grid = sweep_grid(*o.from, *o.to, o.points, o.log_spacing);
    const auto cfg = detail::quadrature_config(o.tol);

    const bool dimensionless = o.param == "h-tilde" || o.param == "kappa-tilde";
    auto flags_at = [&](double v) {
        detail::ParamFlags f = o.params;
        if (o.param == "h-tilde") f.h_tilde = v;
        else if (o.param == "kappa-tilde") f.kappa_tilde = v;
        else if (o.param == "ka") f.ka = v;
        else if (o.param == "kd") f.kd = v;
        else if (o.param == "D") f.diffusion = v;
        else if (o.param == "a") f.radius = v;
        return f;
    };
    if (dimensionless && o.params.any_physical())
        throw detail::InvalidFlag("--param " + o.param + ": sweeps over dimensionless parameters take --h-tilde/--kappa-tilde");
    if (!dimensionless && o.params.any_dimensionless())
        throw detail::InvalidFlag("--param " + o.param + ": sweeps over physical parameters take --ka --kd --D --a");

    std::vector<detail::ResolvedParams> resolved;
    for (double v : grid) resolved.push_back(detail::resolve(flags_at(v)));

    // Grid points run concurrently; rows are emitted in grid order.
    std::vector<detail::PointOutcome> outcomes(grid.size());
    std::atomic<std::size_t> next{0};
    const unsigned hw = o.threads != 0 ? o.threads : std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(grid.size()));
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < grid.size(); i = next++) {
                try {
                    outcomes[i] = detail::evaluate_point(resolved[i], o.route, cfg);
                } catch (...) {
                    const std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::vector<OutputRecord> rows;
    bool quadrature_failed = false;
    bool disagreement = false;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (OutputRecord rec : outcomes[i].records) {
            rec.param_name = o.param;
            rec.param_value = grid[i];
            rows.push_back(std::move(rec));
        }
        quadrature_failed = quadrature_failed || outcomes[i].quadrature_failed;
        disagreement = disagreement || outcomes[i].disagreement;
    }
    emit(out, rows, detail::parse_format(o.format));
    return detail::outcome_code(quadrature_failed, disagreement);
}

/// Parses argv-style arguments (without the program name) and runs the command.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Average lifetime of the bound state of a reversibly binding 2D pair", "koff2d"};
    app.require_subcommand(1);

    const std::vector<std::string> route_choices{"closed", "quadrature", "stieltjes", "all"};
    const std::vector<std::string> format_choices{"csv", "json", "table"};

    ComputeOptions compute;
    CLI::App* c = app.add_subcommand("compute", "compute 1/k_off (or the dimensionless finite part F)");
    compute.params.attach(*c);
    c->add_option("--route", compute.route, "closed|quadrature|stieltjes|all")->check(CLI::IsMember(route_choices));
    c->add_option("--tol", compute.tol, "quadrature relative tolerance (default 1e-10 or $KOFF2D_DEFAULT_TOL)");
    c->add_option("--format", compute.format, "csv|json|table")->check(CLI::IsMember(format_choices));

    VerifyOptions verify;
    CLI::App* v = app.add_subcommand("verify", "check the transform identities numerically");
    v->add_option("--identity", verify.identity, "double-laplace|ismail|master|all")
        ->check(CLI::IsMember({"double-laplace", "ismail", "master", "all"}));
    v->add_option("--probes", verify.probes, "comma-separated probe points x > 0");
    v->add_option("--tol", verify.tol, "pass tolerance on the max relative residual");
    v->add_option("--h-tilde", verify.h_tilde, "h~ for the master identity (default 1)");
    v->add_option("--kappa-tilde", verify.kappa_tilde, "kappa~_D for the master identity (default 1)");
    v->add_option("--format", verify.format, "csv|json|table")->check(CLI::IsMember(format_choices));

    SweepOptions sweep;
    CLI::App* s = app.add_subcommand("sweep", "tabulate routes over a parameter grid");
    sweep.params.attach(*s);
    s->add_option("--param", sweep.param, "h-tilde|kappa-tilde|D|ka|kd|a")
        ->required()
        ->check(CLI::IsMember({"h-tilde", "kappa-tilde", "D", "ka", "kd", "a"}));
    s->add_option("--from", sweep.from, "first grid value");
    s->add_option("--to", sweep.to, "last grid value");
    s->add_option("--points", sweep.points, "number of grid points");
    auto* log_flag = s->add_flag("--log", sweep.log_spacing, "logarithmic spacing");
    s->add_flag("--linear", [&sweep](std::int64_t) { sweep.log_spacing = false; }, "linear spacing (default)")
        ->excludes(log_flag);
    s->add_option("--route", sweep.route, "closed|quadrature|stieltjes|all")->check(CLI::IsMember(route_choices));
    s->add_option("--tol", sweep.tol, "quadrature relative tolerance");
    s->add_option("--format", sweep.format, "csv|json|table")->check(CLI::IsMember(format_choices));
    s->add_option("--threads", sweep.threads, "worker threads (default: hardware concurrency)");

    std::vector<std::string> argv_store{"koff2d"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidFlags;
    }

    try {
        if (c->parsed()) return cmd_compute(compute, out);
        if (v->parsed()) return cmd_verify(verify, out);
        return cmd_sweep(sweep, out);
    } catch (const detail::InvalidFlag& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidFlags;
    } catch (const ParameterError& e) {
        err << "error: " << detail::flag_message(e) << '\n';
        return kInvalidFlags;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidFlags;
    } catch (const std::exception& e) {
        // Overflow or underflow inside the numerics at extreme parameters.
        err << "error: evaluation failed: " << e.what() << '\n';
        return kNonConvergence;
    }
}

}  // namespace koff2d::cli
