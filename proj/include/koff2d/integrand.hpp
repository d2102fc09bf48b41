#pragma once

// The off-rate integrand family on the unit encounter radius:
//   alpha(x) = (x^2 - k) J1(x) + h x J0(x)
//   beta(x)  = (x^2 - k) Y1(x) + h x Y0(x)
//   P(x,1)^2 = (2h/pi)^2 / (alpha^2 + beta^2)
//   f(x)     = P(x,1)^2 / x^2,        f(0) = h^2 / k^2
// with h = h~ and k = kappa~_D.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "koff2d/model.hpp"
#include "koff2d/quadrature.hpp"
#include "koff2d/specfun.hpp"

namespace koff2d::integrand {

struct IntegrandContext {
    DimensionlessParams params;
    double x_switch_low = 1e-3;   ///< below: small-x series form of f
    double x_switch_high = 50.0;  ///< above: f is bounded by tail_envelope()
};

inline void validate(const IntegrandContext& ctx) {
    koff2d::validate(ctx.params);
    if (!(ctx.x_switch_low > 0.0 && ctx.x_switch_low < 1.0))
        throw ParameterError("x_switch_low", "must lie in (0, 1)");
    if (!(ctx.x_switch_high > 1.0) || !std::isfinite(ctx.x_switch_high))
        throw ParameterError("x_switch_high", "must be finite and > 1");
}

inline IntegrandContext make_context(const DimensionlessParams& p) {
    IntegrandContext ctx{p};
    validate(ctx);
    return ctx;
}

struct AlphaBeta {
    double alpha;
    double beta;
};

namespace detail {

inline void require_positive(double x, const char* fn) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error(std::string(fn) + ": x must be finite and > 0");
}

// Beyond this the leading tail term is exact to double precision and the
// direct form would overflow x^2.
inline constexpr double kFarField = 1e30;

}  // namespace detail

namespace detail {

// x^2 - k as (x - x0)(x + x0), x0 = sqrt(k): near the resonance x - x0 is
// exact, where x^2 - k would lose all digits below the spike width ~h.
inline double detuning(const DimensionlessParams& p, double x) {
    const double x0 = std::sqrt(p.kappa_tilde);
    return (x - x0) * (x + x0);
}

// alpha, beta with the detuning a = x^2 - k supplied by the caller.
inline AlphaBeta alpha_beta_detuned(const DimensionlessParams& p, double x, double a) {
    const auto b = specfun::bessel_jy01(x);
    const double hx = p.h_tilde * x;
    return {a * b.j1 + hx * b.j0, a * b.y1 + hx * b.y0};
}

}  // namespace detail

inline AlphaBeta alpha_beta(const IntegrandContext& ctx, double x) {
    detail::require_positive(x, "alpha_beta");
    return detail::alpha_beta_detuned(ctx.params, x, detail::detuning(ctx.params, x));
}

inline double f_zero(const DimensionlessParams& p) {
    const double r = p.h_tilde / p.kappa_tilde;
    return r * r;
}

/// The point x = sqrt(kappa~_D) where the (x^2 - kappa~_D) factor vanishes;
/// for small h~ f has a narrow peak there, so quadratures split at it.
inline double resonance_point(const DimensionlessParams& p) { return std::sqrt(p.kappa_tilde); }

/// Half-width of the window around the resonance point that quadratures
/// integrate in the offset d = x - x0 (see f_offset).
inline double resonance_half_width(const DimensionlessParams& p) { return 0.5 * resonance_point(p); }

/// Offsets d from x0 = sqrt(k) that resolve the resonance peak at any h~.
/// Near x0, x^2 - k ~ 2 x0 d and alpha, beta vanish together only to O(h), so
/// f has a Lorentzian-like spike of half-width
///   w ~ (h/2) sqrt((J0^2 + Y0^2) / (J1^2 + Y1^2)) at x0,
/// carrying an O(h) share of every integral of f. Offsets are 0 and
/// -/+ w 2^m below the window half-width.
inline std::vector<double> resonance_offsets(const DimensionlessParams& p) {
    std::vector<double> ds{0.0};
    if (p.h_tilde == 0.0) return ds;
    const double x0 = resonance_point(p);
    const auto b = specfun::bessel_jy01(x0);
    const double w = 0.5 * p.h_tilde * std::sqrt((b.j0 * b.j0 + b.y0 * b.y0) / (b.j1 * b.j1 + b.y1 * b.y1));
    for (double d = 0.25 * w; d < resonance_half_width(p) && ds.size() < 400; d *= 2.0) {
        ds.push_back(-d);
        ds.push_back(d);
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

/// resonance_offsets as points on the x axis (distinct after rounding).
inline std::vector<double> resonance_breakpoints(const DimensionlessParams& p) {
    const double x0 = resonance_point(p);
    std::vector<double> pts;
    for (double d : resonance_offsets(p)) pts.push_back(x0 + d);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

namespace detail {

// G(x) - k^2 where G = (pi x / 2)^2 (alpha^2 + beta^2), assembled from
// pieces that are each O(x^2 ln x) so nothing cancels as x -> 0.
struct SmallX {
    double g_minus_k2;
    double g;
};

inline SmallX small_x_parts(const DimensionlessParams& p, double x, double a) {
    const auto b = specfun::bessel_jy01(x);
    const double y1r = specfun::y1_regular_part(x);
    const double x2 = x * x;
    // (pi x / 2) beta - k
    const double e = -x2 + a * y1r + p.h_tilde * x2 * (std::numbers::pi / 2.0) * b.y0;
    // (pi x / 2) alpha
    const double s = std::numbers::pi * x / 2.0 * (a * b.j1 + p.h_tilde * x * b.j0);
    const double d = e * (2.0 * p.kappa_tilde + e) + s * s;
    return {d, p.kappa_tilde * p.kappa_tilde + d};
}

inline SmallX small_x_parts(const DimensionlessParams& p, double x) { return small_x_parts(p, x, detuning(p, x)); }

}  // namespace detail

inline double f_small_x(const IntegrandContext& ctx, double x) {
    detail::require_positive(x, "f_small_x");
    if (!(x < ctx.x_switch_low)) throw std::domain_error("f_small_x: x must lie below x_switch_low");
    const double h = ctx.params.h_tilde;
    if (h == 0.0) return 0.0;
    return h * h / detail::small_x_parts(ctx.params, x).g;
}

inline double p_squared(const IntegrandContext& ctx, double x) {
    detail::require_positive(x, "p_squared");
    const double h = ctx.params.h_tilde;
    if (h == 0.0) return 0.0;
    if (x > detail::kFarField) return 2.0 / std::numbers::pi * h * h / (x * x * x);
    const AlphaBeta ab = alpha_beta(ctx, x);
    // hypot keeps tiny h from underflowing both numerator and denominator
    const double ratio = 2.0 * h / std::numbers::pi / std::hypot(ab.alpha, ab.beta);
    return ratio * ratio;
}

inline double f(const IntegrandContext& ctx, double x) {
    detail::require_positive(x, "f");
    if (x < ctx.x_switch_low) return f_small_x(ctx, x);
    if (x > detail::kFarField) {
        const double h = ctx.params.h_tilde;
        return 2.0 / std::numbers::pi * h * h / std::pow(x, 5);
    }
    return p_squared(ctx, x) / (x * x);
}

/// (f(x) - f(0)) / x, cancellation-free below x_switch_low.
inline double subtracted(const IntegrandContext& ctx, double x) {
    detail::require_positive(x, "subtracted");
    const DimensionlessParams& p = ctx.params;
    if (p.h_tilde == 0.0) return 0.0;
    if (x >= ctx.x_switch_low) return (f(ctx, x) - f_zero(p)) / x;
    const auto parts = detail::small_x_parts(p, x);
    const double h2 = p.h_tilde * p.h_tilde;
    return -h2 * parts.g_minus_k2 / (x * parts.g * p.kappa_tilde * p.kappa_tilde);
}

/// f(x0 + d) for x0 = sqrt(k), with x^2 - k formed as d (2 x0 + d). Lets a
/// quadrature place nodes at offsets far below ulp(x0) inside the spike.
inline double f_offset(const IntegrandContext& ctx, double d) {
    const DimensionlessParams& p = ctx.params;
    const double x0 = resonance_point(p);
    const double x = x0 + d;
    detail::require_positive(x, "f_offset");
    const double h = p.h_tilde;
    if (h == 0.0) return 0.0;
    if (x > detail::kFarField) return f(ctx, x);
    const double a = d * (2.0 * x0 + d);
    if (x < ctx.x_switch_low) return h * h / detail::small_x_parts(p, x, a).g;
    const AlphaBeta ab = detail::alpha_beta_detuned(p, x, a);
    const double ratio = 2.0 * h / std::numbers::pi / std::hypot(ab.alpha, ab.beta);
    return ratio * ratio / (x * x);
}

/// (f(x) - f(0)) / x at x = x0 + d, the offset form of subtracted().
inline double subtracted_offset(const IntegrandContext& ctx, double d) {
    const DimensionlessParams& p = ctx.params;
    const double x0 = resonance_point(p);
    const double x = x0 + d;
    detail::require_positive(x, "subtracted_offset");
    if (p.h_tilde == 0.0) return 0.0;
    if (x >= ctx.x_switch_low) return (f_offset(ctx, d) - f_zero(p)) / x;
    const auto parts = detail::small_x_parts(p, x, d * (2.0 * x0 + d));
    const double h2 = p.h_tilde * p.h_tilde;
    return -h2 * parts.g_minus_k2 / (x * parts.g * p.kappa_tilde * p.kappa_tilde);
}

/// Leading large-x behaviour x^5 f(x) -> (2/pi) h~^2.
inline double f_asymptotic(const IntegrandContext& ctx, double x) {
    detail::require_positive(x, "f_asymptotic");
    const double h = ctx.params.h_tilde;
    return 2.0 / std::numbers::pi * h * h / std::pow(x, 5);
}

/// Envelope C x^-6 bounding f(x)/x for x >= x_switch_high.
inline quadrature::DecayEnvelope tail_envelope(const IntegrandContext& ctx) {
    const double h = ctx.params.h_tilde;
    return {1.05 * 2.0 / std::numbers::pi * h * h, 6.0};
}

}  // namespace koff2d::integrand
