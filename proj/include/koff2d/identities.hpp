#pragma once

// Numerical checks of three transform identities at finite x:
//   double Laplace:  int_0^inf e^{-xu} int_0^inf e^{-u xi} g(xi) dxi du
//                      = int_0^inf g(xi) / (x + xi) dxi             (g = e^{-xi})
//   Ismail:          K_nu(sqrt x) / (sqrt x K_{nu+1}(sqrt x))
//                      = (2/pi^2) int_0^inf dxi / (xi (x+xi) [J_{nu+1}^2 + Y_{nu+1}^2](sqrt xi))
//   master:          (h/k)/x - h K1 / (x [(x+k) K1 + h sqrt(x) K0])
//                      = (2/pi^2) h^2 int_0^inf dxi / (xi (xi+x) [alpha^2 + beta^2](sqrt xi))
// Every xi-integral is taken in phi = sqrt(xi).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "koff2d/integrand.hpp"
#include "koff2d/model.hpp"
#include "koff2d/quadrature.hpp"
#include "koff2d/specfun.hpp"

namespace koff2d::identities {

using quadrature::IntegralEstimate;
using quadrature::QuadratureConfig;

struct IdentityReport {
    std::string identity_name;
    std::vector<double> probe_points;
    std::vector<double> lhs_values;
    std::vector<double> rhs_values;
    double max_rel_residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    bool quadrature_converged = true;
};

inline const std::vector<double>& default_master_probes() {
    static const std::vector<double> probes{0.5, 1.0, 2.0, 5.0};
    return probes;
}
inline const std::vector<double>& default_ismail_probes() {
    static const std::vector<double> probes{0.5, 1.0, 4.0, 10.0};
    return probes;
}
inline const std::vector<double>& default_double_laplace_probes() {
    static const std::vector<double> probes{0.5, 1.0, 10.0};
    return probes;
}

inline constexpr double kDefaultTolerance = 1e-8;
inline constexpr double kDoubleLaplaceTolerance = 1e-9;

/// Identity checks run their quadratures two decades tighter than the
/// tolerance they are judged against.
inline QuadratureConfig identity_quadrature_config() {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-18;
    return cfg;
}

namespace detail {

inline void require_probes(const std::vector<double>& probes) {
    if (probes.empty()) throw std::invalid_argument("identity check: no probe points");
    for (double x : probes)
        if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("identity check: probes must be > 0");
}

// |l - r| relative to the larger side; differences within abs_tol count as
// exact agreement, which covers the case of both sides vanishing.
inline double residual(double lhs, double rhs, double abs_tol) {
    const double diff = std::fabs(lhs - rhs);
    if (diff <= abs_tol) return 0.0;
    return diff / std::max(std::fabs(lhs), std::fabs(rhs));
}

inline void finish(IdentityReport& r, const QuadratureConfig& cfg) {
    r.max_rel_residual = 0.0;
    for (std::size_t i = 0; i < r.probe_points.size(); ++i)
        r.max_rel_residual = std::max(r.max_rel_residual, residual(r.lhs_values[i], r.rhs_values[i], cfg.abs_tol));
    r.passed = r.quadrature_converged && r.max_rel_residual <= r.tolerance;
}

}  // namespace detail

// --- double Laplace -------------------------------------------------------

inline IntegralEstimate double_laplace_lhs(double x, const QuadratureConfig& cfg) {
    bool inner_ok = true;
    auto outer = [&](double u) {
        const double weight = std::exp(-x * u);
        if (weight == 0.0) return 0.0;
        const IntegralEstimate inner =
            quadrature::integrate_half_line([u](double xi) { return std::exp(-u * xi) * std::exp(-xi); }, cfg);
        inner_ok = inner_ok && inner.converged;
        return weight * inner.value;
    };
    IntegralEstimate est = quadrature::integrate_half_line(outer, cfg);
    est.converged = est.converged && inner_ok;
    return est;
}

inline IntegralEstimate double_laplace_rhs(double x, const QuadratureConfig& cfg) {
    return quadrature::integrate_half_line([x](double xi) { return std::exp(-xi) / (x + xi); }, cfg);
}

inline IdentityReport verify_double_laplace(const std::vector<double>& x_probes,
                                            const QuadratureConfig& cfg = identity_quadrature_config(),
                                            double tolerance = kDoubleLaplaceTolerance) {
    detail::require_probes(x_probes);
    IdentityReport r{"double-laplace", x_probes, {}, {}, 0.0, tolerance, false, true};
    for (double x : x_probes) {
        const IntegralEstimate l = double_laplace_lhs(x, cfg);
        const IntegralEstimate rr = double_laplace_rhs(x, cfg);
        r.lhs_values.push_back(l.value);
        r.rhs_values.push_back(rr.value);
        r.quadrature_converged = r.quadrature_converged && l.converged && rr.converged;
    }
    detail::finish(r, cfg);
    return r;
}

// --- Ismail ---------------------------------------------------------------

inline double ismail_lhs(int nu, double x) {
    const double s = std::sqrt(x);
    const auto m = specfun::bessel_ik01(s);
    // K_{-1} = K_1
    return nu == 0 ? m.k0 / (s * m.k1) : m.k1 / (s * m.k0);
}

namespace detail {

// [J_n^2 + Y_n^2](phi) for phi = e^{-u}; below the double range the
// leading log form of Y_n is exact.
inline double modulus_squared(int n, double u) {
    if (u < 700.0) {
        const auto b = specfun::bessel_jy01(std::exp(-u));
        return n == 0 ? b.j0 * b.j0 + b.y0 * b.y0 : b.j1 * b.j1 + b.y1 * b.y1;
    }
    if (n == 0) {
        const double y = 2.0 / std::numbers::pi * (-u - std::numbers::ln2 + specfun::kEulerGamma);
        return 1.0 + y * y;
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// (2/pi^2) int_0^inf dxi / (xi (x+xi) M^2(sqrt xi)) with M^2 = J_{nu+1}^2 + Y_{nu+1}^2.
/// Taken as (4/pi^2) int du / ((x + e^{-2u}) M^2(e^{-u})) with phi = e^{-u}: for
/// nu = -1 the integrand only decays like 1/(phi ln^2 phi) at phi -> 0.
inline IntegralEstimate ismail_rhs(int nu, double x, const QuadratureConfig& cfg) {
    const int n = nu + 1;
    auto in_u = [&](double u) {
        const double phi2 = u < 700.0 ? std::exp(-2.0 * u) : 0.0;
        return 1.0 / ((x + phi2) * detail::modulus_squared(n, u));
    };
    auto in_phi = [&](double phi) { return in_u(-std::log(phi)) / phi; };
    IntegralEstimate est = quadrature::integrate_tail(in_u, 1.0, cfg);                  // phi in (0, 1/e]
    est += quadrature::integrate_adaptive(in_phi, std::exp(-1.0), 1.0, cfg);           // phi in [1/e, 1]
    est += quadrature::integrate_tail(in_phi, 1.0, cfg);                                 // phi in [1, inf)
    const double scale = 4.0 / (std::numbers::pi * std::numbers::pi);
    est.value *= scale;
    est.error_estimate *= scale;
    return est;
}

inline IdentityReport verify_ismail(int nu, const std::vector<double>& x_probes,
                                    const QuadratureConfig& cfg = identity_quadrature_config(),
                                    double tolerance = kDefaultTolerance) {
    if (nu != 0 && nu != -1) throw std::invalid_argument("verify_ismail: nu must be -1 or 0");
    detail::require_probes(x_probes);
    IdentityReport r{"ismail(nu=" + std::to_string(nu) + ")", x_probes, {}, {}, 0.0, tolerance, false, true};
    for (double x : x_probes) {
        const IntegralEstimate rhs = ismail_rhs(nu, x, cfg);
        r.lhs_values.push_back(ismail_lhs(nu, x));
        r.rhs_values.push_back(rhs.value);
        r.quadrature_converged = r.quadrature_converged && rhs.converged;
    }
    detail::finish(r, cfg);
    return r;
}

// --- master identity --------------------------------------------------------

/// Left side of the master identity, rearranged to
///   h (K1 + h K0 / s) / (k [(x + k) K1 + h s K0]),  s = sqrt x,
/// which removes the 1/x cancellation between its two terms.
inline double master_lhs(const DimensionlessParams& p, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("master_lhs: x must be finite and > 0");
    if (p.h_tilde == 0.0) return 0.0;
    const double s = std::sqrt(x);
    const auto m = specfun::bessel_ik01(s);
    const double h = p.h_tilde;
    const double k = p.kappa_tilde;
    return h * (m.k1 + h * m.k0 / s) / (k * ((x + k) * m.k1 + h * s * m.k0));
}

/// The master identity's left side exactly as written, with both 1/x terms.
inline double master_lhs_direct(const DimensionlessParams& p, double x) {
    const double s = std::sqrt(x);
    const auto m = specfun::bessel_ik01(s);
    const double h = p.h_tilde;
    const double k = p.kappa_tilde;
    return h / k / x - h * m.k1 / (x * ((x + k) * m.k1 + h * s * m.k0));
}

/// Right side as int_0^inf f(phi) phi / (phi^2 + x) dphi, which equals
/// (4/pi^2) h^2 int dphi / (phi (phi^2 + x) [alpha^2 + beta^2](phi)).
/// The resonance window around sqrt(k) is integrated in the offset from it.
inline IntegralEstimate master_rhs(const DimensionlessParams& p, double x, const QuadratureConfig& cfg) {
    if (p.h_tilde == 0.0) return {};
    const integrand::IntegrandContext ctx = integrand::make_context(p);
    // scaled by h/k^2 so abs_tol does not swamp the O(h) result at small h
    const double scale = p.h_tilde / (p.kappa_tilde * p.kappa_tilde);
    auto weight = [x](double phi) { return phi / (phi * phi + x); };
    auto g = [&](double phi) { return integrand::f(ctx, phi) / scale * weight(phi); };

    const double center = integrand::resonance_point(p);
    const double half = integrand::resonance_half_width(p);
    auto g_offset = [&](double d) { return integrand::f_offset(ctx, d) / scale * weight(center + d); };

    const std::vector<double> marks{1.0, std::sqrt(x)};
    IntegralEstimate est = quadrature::integrate_piecewise(
        g_offset, quadrature::detail::edges_within(-half, half, integrand::resonance_offsets(p)), cfg);
    est += quadrature::integrate_piecewise(g, quadrature::detail::edges_within(0.0, center - half, marks), cfg);
    est += quadrature::integrate_tail(g, center + half, cfg, marks);
    est.value *= scale;
    est.error_estimate *= scale;
    return est;
}

inline IdentityReport verify_master(const DimensionlessParams& p, const std::vector<double>& x_probes,
                                    const QuadratureConfig& cfg = identity_quadrature_config(),
                                    double tolerance = kDefaultTolerance) {
    koff2d::validate(p);
    detail::require_probes(x_probes);
    IdentityReport r{"master", x_probes, {}, {}, 0.0, tolerance, false, true};
    for (double x : x_probes) {
        const IntegralEstimate rhs = master_rhs(p, x, cfg);
        r.lhs_values.push_back(master_lhs(p, x));
        r.rhs_values.push_back(rhs.value);
        r.quadrature_converged = r.quadrature_converged && rhs.converged;
    }
    detail::finish(r, cfg);
    return r;
}

}  // namespace koff2d::identities
