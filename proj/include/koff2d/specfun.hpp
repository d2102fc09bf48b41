#pragma once

// Bessel functions J, Y, I, K of orders 0 and 1 for real arguments.
//
// Each family has two evaluation branches:
//   x <= kSeriesSeam : ascending power series (logarithmic forms for Y and K),
//                      summed in double-double so that the alternating terms
//                      cancel without loss;
//   x >  kSeriesSeam : Hankel asymptotic expansion, truncated at its smallest
//                      term.
// At the seam both branches agree to ~1e-15 relative.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "koff2d/detail/double_double.hpp"

namespace koff2d::specfun {

inline constexpr double kSeriesSeam = 18.0;
inline constexpr double kEulerGamma = 0.57721566490153286;

enum class BesselOrder : int { zero = 0, one = 1 };

enum class BesselFamily { first_kind, second_kind, modified_first, modified_second };

struct BesselKind {
    BesselFamily family;
    BesselOrder order;
};

/// J0, J1, Y0, Y1 at one argument.
struct CylindricalValues {
    double j0, j1, y0, y1;
};

/// I0, I1, K0, K1 at one argument.
struct ModifiedValues {
    double i0, i1, k0, k1;
};

namespace detail {

using koff2d::detail::DoubleDouble;

inline void require_finite(double x, const char* fn) {
    if (!std::isfinite(x)) throw std::domain_error(std::string(fn) + ": non-finite argument");
}

inline void require_nonnegative(double x, const char* fn) {
    require_finite(x, fn);
    if (x < 0.0) throw std::domain_error(std::string(fn) + ": argument must be >= 0");
}

inline void require_positive(double x, const char* fn) {
    require_finite(x, fn);
    if (!(x > 0.0)) throw std::domain_error(std::string(fn) + ": argument must be > 0");
}

inline double checked(double v, const char* fn) {
    if (!std::isfinite(v)) throw std::out_of_range(std::string(fn) + ": result overflows");
    return v;
}

// Series for J and Y (sign = -1) or I and K (sign = +1). With q = x^2/4,
//   t_k = (sign q)^k / (k!)^2,            u_k = (x/2) (sign q)^k / (k! (k+1)!),
//   J0|I0 = sum t_k,                      J1|I1 = sum u_k,
//   A = sum_{k>=1} H_k t_k,               B = sum_{k>=0} (H_k + H_{k+1}) u_k.
struct SeriesSums {
    DoubleDouble first0, first1, log_sum0, log_sum1;
};

inline SeriesSums power_series(double x, double sign) {
    const DoubleDouble q = koff2d::detail::two_prod(x, x) / 4.0;
    const DoubleDouble sq = q * sign;

    DoubleDouble t{1.0};
    DoubleDouble u{x / 2.0};
    DoubleDouble h{0.0};       // H_k
    DoubleDouble h_next{1.0};  // H_{k+1}

    SeriesSums s;
    s.first0 = t;
    s.first1 = u;
    s.log_sum1 = u;  // (H_0 + H_1) u_0
    const double peak = std::sqrt(q.hi);
    for (int k = 1; k < 400; ++k) {
        const auto kd = static_cast<double>(k);
        t = t * sq / (kd * kd);
        u = u * sq / (kd * (kd + 1.0));
        h = h_next;
        h_next = h_next + DoubleDouble(1.0) / (kd + 1.0);

        s.first0 += t;
        s.first1 += u;
        s.log_sum0 += h * t;
        s.log_sum1 += (h + h_next) * u;

        if (kd > peak && koff2d::detail::abs_hi(t) * h_next.hi < 1e-34 &&
            koff2d::detail::abs_hi(u) * h_next.hi < 1e-34) {
            break;
        }
    }
    return s;
}

// ln(x/2) + gamma to double-double accuracy.
inline DoubleDouble log_half_plus_gamma(double x) {
    return koff2d::detail::log_dd(x) - koff2d::detail::kLn2 + koff2d::detail::kEulerGamma;
}

inline CylindricalValues cylindrical_series(double x) {
    const SeriesSums s = power_series(x, -1.0);
    const DoubleDouble ell = log_half_plus_gamma(x);
    constexpr double two_over_pi = 2.0 / std::numbers::pi;
    CylindricalValues v{};
    v.j0 = s.first0.value();
    v.j1 = s.first1.value();
    v.y0 = two_over_pi * (ell * s.first0 - s.log_sum0).value();
    const DoubleDouble inv_x = DoubleDouble(1.0) / DoubleDouble(x);
    v.y1 = two_over_pi * (ell * s.first1 - s.log_sum1 * 0.5 - inv_x).value();
    return v;
}

inline ModifiedValues modified_series(double x) {
    const SeriesSums s = power_series(x, 1.0);
    const DoubleDouble ell = log_half_plus_gamma(x);
    ModifiedValues v{};
    v.i0 = s.first0.value();
    v.i1 = s.first1.value();
    v.k0 = (s.log_sum0 - ell * s.first0).value();
    const DoubleDouble inv_x = DoubleDouble(1.0) / DoubleDouble(x);
    v.k1 = (inv_x + ell * s.first1 - s.log_sum1 * 0.5).value();
    return v;
}

// Hankel coefficients a_k(nu) / x^k, truncated before the terms start to
// grow. `acc` receives (k, term) and applies the family's sign pattern.
template <class Accumulate>
inline void hankel_terms(int order, double x, Accumulate&& acc) {
    const double mu = 4.0 * order * order;
    double term = 1.0;
    acc(0, term);
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * (mu - odd * odd) / (8.0 * k * x);
        if (std::fabs(next) >= std::fabs(term)) break;
        term = next;
        acc(k, term);
        if (std::fabs(term) < 1e-17) break;
    }
}

struct PQ {
    double p, q;
};

inline PQ hankel_pq(int order, double x) {
    PQ r{0.0, 0.0};
    hankel_terms(order, x, [&](int k, double term) {
        const double sgn = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0)
            r.p += sgn * term;
        else
            r.q += sgn * term;
    });
    return r;
}

inline CylindricalValues cylindrical_asymptotic(double x) {
    const double c = std::cos(x);
    const double s = std::sin(x);
    const double amp = std::sqrt(2.0 / (std::numbers::pi * x));
    constexpr double r2 = std::numbers::sqrt2 / 2.0;
    // chi0 = x - pi/4, chi1 = x - 3pi/4
    const double cos0 = r2 * (c + s), sin0 = r2 * (s - c);
    const double cos1 = r2 * (s - c), sin1 = -r2 * (c + s);
    const PQ pq0 = hankel_pq(0, x);
    const PQ pq1 = hankel_pq(1, x);
    return {amp * (pq0.p * cos0 - pq0.q * sin0), amp * (pq1.p * cos1 - pq1.q * sin1),
            amp * (pq0.p * sin0 + pq0.q * cos0), amp * (pq1.p * sin1 + pq1.q * cos1)};
}

inline double modified_k_asymptotic(int order, double x) {
    double sum = 0.0;
    hankel_terms(order, x, [&](int, double term) { sum += term; });
    return std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) * sum;
}

inline double modified_i_asymptotic(int order, double x) {
    double sum = 0.0;
    hankel_terms(order, x, [&](int k, double term) { sum += (k % 2 == 0) ? term : -term; });
    // Split the exponential so values near the overflow edge stay finite.
    const double half = std::exp(0.5 * x);
    return half * (sum / std::sqrt(2.0 * std::numbers::pi * x)) * half;
}

inline ModifiedValues modified_asymptotic(double x) {
    return {modified_i_asymptotic(0, x), modified_i_asymptotic(1, x), modified_k_asymptotic(0, x),
            modified_k_asymptotic(1, x)};
}

}  // namespace detail

/// J0, J1, Y0, Y1 sharing one series evaluation. Requires x > 0.
inline CylindricalValues bessel_jy01(double x) {
    detail::require_positive(x, "bessel_jy01");
    const CylindricalValues v =
        x <= kSeriesSeam ? detail::cylindrical_series(x) : detail::cylindrical_asymptotic(x);
    detail::checked(v.y1, "bessel_jy01");
    return v;
}

/// I0, I1, K0, K1 sharing one series evaluation. Requires x > 0.
inline ModifiedValues bessel_ik01(double x) {
    detail::require_positive(x, "bessel_ik01");
    ModifiedValues v =
        x <= kSeriesSeam ? detail::modified_series(x) : detail::modified_asymptotic(x);
    detail::checked(v.i0, "bessel_ik01");
    detail::checked(v.i1, "bessel_ik01");
    detail::checked(v.k1, "bessel_ik01");
    if (v.k0 < std::numeric_limits<double>::min())
        throw std::out_of_range("bessel_ik01: K underflows");
    return v;
}

inline double bessel_j(BesselOrder order, double x) {
    detail::require_nonnegative(x, "bessel_j");
    if (x == 0.0) return order == BesselOrder::zero ? 1.0 : 0.0;
    const CylindricalValues v = x <= kSeriesSeam ? detail::cylindrical_series(x)
                                                 : detail::cylindrical_asymptotic(x);
    return order == BesselOrder::zero ? v.j0 : v.j1;
}

inline double bessel_y(BesselOrder order, double x) {
    detail::require_positive(x, "bessel_y");
    const CylindricalValues v = x <= kSeriesSeam ? detail::cylindrical_series(x)
                                                 : detail::cylindrical_asymptotic(x);
    return detail::checked(order == BesselOrder::zero ? v.y0 : v.y1, "bessel_y");
}

inline double bessel_i(BesselOrder order, double x) {
    detail::require_nonnegative(x, "bessel_i");
    if (x == 0.0) return order == BesselOrder::zero ? 1.0 : 0.0;
    const int n = static_cast<int>(order);
    if (x > kSeriesSeam) return detail::checked(detail::modified_i_asymptotic(n, x), "bessel_i");
    const ModifiedValues v = detail::modified_series(x);
    return n == 0 ? v.i0 : v.i1;
}

inline double bessel_k(BesselOrder order, double x) {
    detail::require_positive(x, "bessel_k");
    const int n = static_cast<int>(order);
    double v = 0.0;
    if (x > kSeriesSeam) {
        v = detail::modified_k_asymptotic(n, x);
    } else {
        const ModifiedValues m = detail::modified_series(x);
        v = n == 0 ? m.k0 : m.k1;
    }
    if (v < std::numeric_limits<double>::min()) throw std::out_of_range("bessel_k: result underflows");
    return detail::checked(v, "bessel_k");
}

inline double evaluate(BesselKind kind, double x) {
    switch (kind.family) {
        case BesselFamily::first_kind: return bessel_j(kind.order, x);
        case BesselFamily::second_kind: return bessel_y(kind.order, x);
        case BesselFamily::modified_first: return bessel_i(kind.order, x);
        case BesselFamily::modified_second: return bessel_k(kind.order, x);
    }
    throw std::invalid_argument("evaluate: unknown Bessel family");
}

inline double j0(double x) { return bessel_j(BesselOrder::zero, x); }
inline double j1(double x) { return bessel_j(BesselOrder::one, x); }
inline double y0(double x) { return bessel_y(BesselOrder::zero, x); }
inline double y1(double x) { return bessel_y(BesselOrder::one, x); }
inline double i0(double x) { return bessel_i(BesselOrder::zero, x); }
inline double i1(double x) { return bessel_i(BesselOrder::one, x); }
inline double k0(double x) { return bessel_k(BesselOrder::zero, x); }
inline double k1(double x) { return bessel_k(BesselOrder::one, x); }

/// (pi x / 2) Y1(x) + 1, the part of Y1 regular at the origin; O(x^2 ln x).
/// Summed directly so that small-x callers avoid the 1 - 1 cancellation.
inline double y1_regular_part(double x) {
    detail::require_positive(x, "y1_regular_part");
    if (x > 1.0) return std::numbers::pi * x / 2.0 * y1(x) + 1.0;
    const detail::SeriesSums s = detail::power_series(x, -1.0);
    const detail::DoubleDouble ell = detail::log_half_plus_gamma(x);
    return ((ell * s.first1 - s.log_sum1 * 0.5) * x).value();
}

}  // namespace koff2d::specfun
