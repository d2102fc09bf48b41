#pragma once

// Average lifetime of the bound state, 1/k_off, by three routes:
//   closed_form  : F = (h^2/k^2)(ln 2 - gamma) + h/k^2
//   quadrature   : the split finite-part integral of f(x)/x
//   stieltjes    : x -> 0 limit of master_lhs(x) + f(0) ln sqrt(x)
// with h = h~, k = kappa~_D. Physical values are c * F, c = physical_scale_factor.

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "koff2d/identities.hpp"
#include "koff2d/integrand.hpp"
#include "koff2d/model.hpp"
#include "koff2d/quadrature.hpp"
#include "koff2d/specfun.hpp"

namespace koff2d::offrate {

using quadrature::QuadratureConfig;

inline constexpr double kLn2MinusGamma = std::numbers::ln2 - specfun::kEulerGamma;

/// Route agreement thresholds, relative to the closed form.
inline constexpr double kQuadratureAgreement = 1e-8;
inline constexpr double kStieltjesAgreement = 1e-6;

/// Smallest x the Stieltjes route accepts.
inline constexpr double kStieltjesFloor = 1e-12;

enum class Route { closed_form, quadrature, stieltjes_extrapolation };

inline std::string_view to_string(Route r) {
    switch (r) {
        case Route::closed_form: return "closed_form";
        case Route::quadrature: return "quadrature";
        case Route::stieltjes_extrapolation: return "stieltjes_extrapolation";
    }
    return "unknown";
}

inline std::optional<Route> parse_route(std::string_view s) {
    if (s == "closed" || s == "closed_form") return Route::closed_form;
    if (s == "quadrature") return Route::quadrature;
    if (s == "stieltjes" || s == "stieltjes_extrapolation") return Route::stieltjes_extrapolation;
    return std::nullopt;
}

struct ExtrapolationTable {
    std::vector<double> x_values;            ///< strictly decreasing
    std::vector<double> compensated_values;  ///< master_lhs(x) + f(0) ln sqrt(x)
    double extrapolated = 0.0;
    double last_difference = 0.0;
    bool monotone = true;  ///< |differences| shrink over the fitted window
};

struct RouteResult {
    Route route = Route::closed_form;
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
    std::map<std::string, double> diagnostics;
    std::optional<ExtrapolationTable> table;
};

inline double finite_part_closed(const DimensionlessParams& p) {
    validate(p);
    const double r = p.h_tilde / (p.kappa_tilde * p.kappa_tilde);
    return p.h_tilde * r * kLn2MinusGamma + r;
}

/// 1/k_off = 1/kappa_d + (ln 2 - gamma) / (2 pi D) * kappa_a / kappa_d.
inline RouteResult koff_inverse_closed(const PhysicalParams& p) {
    validate(p);
    RouteResult r;
    r.route = Route::closed_form;
    r.value = 1.0 / p.kappa_d + kLn2MinusGamma / (2.0 * std::numbers::pi * p.diffusion) * p.kappa_a / p.kappa_d;
    return r;
}

inline RouteResult finite_part_quadrature(const DimensionlessParams& p, const QuadratureConfig& cfg = {}) {
    const integrand::IntegrandContext ctx = integrand::make_context(p);
    RouteResult r;
    r.route = Route::quadrature;
    if (p.h_tilde == 0.0) return r;

    // Integrate f / (h/k^2), the leading order of F, so that abs_tol is
    // measured on the natural scale of the result for any h~.
    const double scale = p.h_tilde / (p.kappa_tilde * p.kappa_tilde);
    quadrature::FinitePartProblem fp;
    fp.f = [&ctx, scale](double x) { return integrand::f(ctx, x) / scale; };
    fp.f0 = integrand::f_zero(p) / scale;
    fp.split = cfg.split_point;
    fp.subtracted = [&ctx, scale](double x) { return integrand::subtracted(ctx, x) / scale; };
    fp.subtracted_below = ctx.x_switch_low;
    quadrature::OffsetWindow w;
    w.center = integrand::resonance_point(p);
    w.half_width = integrand::resonance_half_width(p);
    w.f_offset = [&ctx, scale](double d) { return integrand::f_offset(ctx, d) / scale; };
    w.subtracted_offset = [&ctx, scale](double d) { return integrand::subtracted_offset(ctx, d) / scale; };
    w.offsets = integrand::resonance_offsets(p);
    fp.window = std::move(w);

    const quadrature::IntegralEstimate est = quadrature::finite_part(fp, cfg);
    r.value = est.value * scale;
    r.error_estimate = est.error_estimate * scale;
    r.converged = est.converged;
    r.diagnostics["subdivisions"] = est.subdivisions_used;
    r.diagnostics["split"] = fp.split;
    return r;
}

/// Compensated Stieltjes value lhs(x) + f(0) ln sqrt(x); tends to F as x -> 0.
inline double compensated_value(const DimensionlessParams& p, double x) {
    return identities::master_lhs(p, x) + integrand::f_zero(p) * 0.5 * std::log(x);
}

inline const std::vector<double>& default_stieltjes_sequence() {
    static const std::vector<double> xs{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
    return xs;
}

namespace detail {

// Solves the square system a * c = b in place (partial pivoting), after
// scaling columns to unit max-norm. Returns c[0].
inline double solve_intercept(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    std::vector<double> col_scale(n, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i][j]));
        if (m > 0.0) {
            col_scale[j] = m;
            for (std::size_t i = 0; i < n; ++i) a[i][j] /= m;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(a[i][k]) > std::fabs(a[piv][k])) piv = i;
        std::swap(a[k], a[piv]);
        std::swap(b[k], b[piv]);
        if (a[k][k] == 0.0) throw std::runtime_error("extrapolation: singular fit");
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= m * a[k][j];
            b[i] -= m * b[k];
        }
    }
    std::vector<double> c(n);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= a[k][j] * c[j];
        c[k] = s / a[k][k];
    }
    return c[0] / col_scale[0];
}

// Fits c(x) = F + x (a2 L^2 + a1 L + a0) [+ x^2 (b3 L^3 + b2 L^2 + b1 L)],
// L = ln x, through the last `terms` table entries and returns F.
inline double fit_limit(const std::vector<double>& xs, const std::vector<double>& cs, std::size_t terms) {
    const std::size_t n = xs.size();
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (std::size_t i = n - terms; i < n; ++i) {
        const double x = xs[i];
        const double l = std::log(x);
        std::vector<double> row{1.0, x * l * l, x * l, x};
        if (terms == 7) {
            const double x2 = x * x;
            row.insert(row.end(), {x2 * l * l * l, x2 * l * l, x2 * l});
        }
        a.push_back(std::move(row));
        b.push_back(cs[i]);
    }
    return solve_intercept(std::move(a), std::move(b));
}

}  // namespace detail

/// x -> 0 limit of the compensated Stieltjes sequence. The limit is taken by
/// fitting the known correction structure x (a2 ln^2 x + a1 ln x + a0) (plus
/// the x^2 terms when seven or more entries exist) through the smallest-x
/// entries; error_estimate is the change between the two fit orders.
inline RouteResult finite_part_stieltjes(const DimensionlessParams& p,
                                         const std::vector<double>& x_sequence = default_stieltjes_sequence()) {
    validate(p);
    if (x_sequence.empty()) throw std::invalid_argument("finite_part_stieltjes: empty x sequence");
    for (std::size_t i = 0; i < x_sequence.size(); ++i) {
        const double x = x_sequence[i];
        if (!(x >= kStieltjesFloor) || !std::isfinite(x))
            throw std::invalid_argument("finite_part_stieltjes: x values must lie in [1e-12, inf)");
        if (i > 0 && !(x < x_sequence[i - 1]))
            throw std::invalid_argument("finite_part_stieltjes: x sequence must be strictly decreasing");
    }

    ExtrapolationTable table;
    table.x_values = x_sequence;
    for (double x : x_sequence) table.compensated_values.push_back(compensated_value(p, x));
    const auto& cs = table.compensated_values;
    const std::size_t n = cs.size();

    RouteResult r;
    r.route = Route::stieltjes_extrapolation;
    if (n >= 2) table.last_difference = cs[n - 1] - cs[n - 2];

    const std::size_t window = n >= 7 ? 7 : (n >= 4 ? 4 : n);
    if (n >= 4) {
        const double low = detail::fit_limit(table.x_values, cs, 4);
        table.extrapolated = n >= 7 ? detail::fit_limit(table.x_values, cs, 7) : low;
        r.error_estimate = n >= 7 ? std::fabs(table.extrapolated - low) : std::fabs(table.last_difference);
    } else {
        table.extrapolated = cs.back();
        r.error_estimate = std::fabs(table.last_difference);
    }
    for (std::size_t i = n - window + 2; i < n; ++i) {
        if (std::fabs(cs[i] - cs[i - 1]) >= std::fabs(cs[i - 1] - cs[i - 2]) && cs[i] != cs[i - 1])
            table.monotone = false;
    }

    r.value = table.extrapolated;
    // The correction changes sign once in x, so shrinking differences are only
    // a fallback test; with both fit orders available their spread decides.
    r.converged = n >= 7 ? r.error_estimate <= kStieltjesAgreement * std::fabs(r.value) : table.monotone;
    r.diagnostics["last_difference"] = table.last_difference;
    r.diagnostics["smallest_x"] = x_sequence.back();
    r.diagnostics["fit_terms"] = static_cast<double>(n >= 7 ? 7 : (n >= 4 ? 4 : 1));
    r.table = std::move(table);
    return r;
}

inline RouteResult finite_part(const DimensionlessParams& p, Route route, const QuadratureConfig& cfg = {}) {
    switch (route) {
        case Route::closed_form: {
            RouteResult r;
            r.route = Route::closed_form;
            r.value = finite_part_closed(p);
            return r;
        }
        case Route::quadrature: return finite_part_quadrature(p, cfg);
        case Route::stieltjes_extrapolation: return finite_part_stieltjes(p);
    }
    throw std::invalid_argument("finite_part: unknown route");
}

/// Physical 1/k_off by the chosen route. kappa_a = 0 short-circuits to 1/kappa_d.
inline RouteResult koff_inverse(const PhysicalParams& p, Route route, const QuadratureConfig& cfg = {}) {
    validate(p);
    if (route == Route::closed_form) return koff_inverse_closed(p);
    if (p.kappa_a == 0.0) {
        RouteResult r;
        r.route = route;
        r.value = 1.0 / p.kappa_d;
        return r;
    }
    RouteResult r = finite_part(nondimensionalize(p), route, cfg);
    const double c = physical_scale_factor(p);
    r.value *= c;
    r.error_estimate *= c;
    r.diagnostics["scale_factor"] = c;
    return r;
}

struct Reconciliation {
    std::array<RouteResult, 3> results;  ///< closed, quadrature, stieltjes
    double quadrature_rel_diff = 0.0;
    double stieltjes_rel_diff = 0.0;
    double quadrature_threshold = kQuadratureAgreement;
    double stieltjes_threshold = kStieltjesAgreement;
    bool agree = false;
    bool converged = false;
};

namespace detail {

inline double rel_diff(double v, double ref) {
    if (v == ref) return 0.0;
    return std::fabs(v - ref) / std::fabs(ref);
}

inline void assess(Reconciliation& rec) {
    const double ref = rec.results[0].value;
    rec.quadrature_rel_diff = rel_diff(rec.results[1].value, ref);
    rec.stieltjes_rel_diff = rel_diff(rec.results[2].value, ref);
    rec.agree = rec.quadrature_rel_diff <= rec.quadrature_threshold && rec.stieltjes_rel_diff <= rec.stieltjes_threshold;
    rec.converged = rec.results[1].converged && rec.results[2].converged;
}

// The quadrature agreement threshold loosens with a looser requested tolerance.
inline double quadrature_threshold(const QuadratureConfig& cfg) {
    return std::max(kQuadratureAgreement, 10.0 * cfg.rel_tol);
}

}  // namespace detail

/// Runs all three routes concurrently and compares them with the closed form.
template <class Params>
Reconciliation reconcile(const Params& p, const QuadratureConfig& cfg = {}) {
    auto run = [&](Route route) {
        if constexpr (std::is_same_v<Params, PhysicalParams>)
            return koff_inverse(p, route, cfg);
        else
            return finite_part(p, route, cfg);
    };
    auto quad = std::async(std::launch::async, run, Route::quadrature);
    auto stj = std::async(std::launch::async, run, Route::stieltjes_extrapolation);
    Reconciliation rec;
    rec.results[0] = run(Route::closed_form);
    rec.results[1] = quad.get();
    rec.results[2] = stj.get();
    rec.quadrature_threshold = detail::quadrature_threshold(cfg);
    detail::assess(rec);
    return rec;
}

}  // namespace koff2d::offrate
