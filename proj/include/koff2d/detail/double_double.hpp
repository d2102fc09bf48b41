#pragma once

// Unevaluated-sum ("double-double") arithmetic, ~32 significant digits.
// Used only inside the Bessel power series, where the alternating terms
// grow to ~1e7 before cancelling down to O(1e-9) results.

#include <cmath>
#include <cstdlib>

namespace koff2d::detail {

struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double h) : hi(h) {}  // NOLINT(google-explicit-constructor)
    constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

    [[nodiscard]] constexpr double value() const { return hi + lo; }
};

inline DoubleDouble quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DoubleDouble two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DoubleDouble operator-(DoubleDouble a) { return {-a.hi, -a.lo}; }

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
    DoubleDouble s = two_sum(a.hi, b.hi);
    const DoubleDouble t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

inline DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
    DoubleDouble p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator*(DoubleDouble a, double b) {
    DoubleDouble p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator/(DoubleDouble a, double b) {
    const double q1 = a.hi / b;
    const DoubleDouble p = two_prod(q1, b);
    DoubleDouble s = two_sum(a.hi, -p.hi);
    s.lo -= p.lo;
    s.lo += a.lo;
    const double q2 = (s.hi + s.lo) / b;
    return quick_two_sum(q1, q2);
}

inline DoubleDouble operator/(DoubleDouble a, DoubleDouble b) {
    const double q1 = a.hi / b.hi;
    DoubleDouble r = a - b * q1;
    const double q2 = r.hi / b.hi;
    r = r - b * q2;
    const double q3 = r.hi / b.hi;
    return quick_two_sum(q1, q2) + DoubleDouble(q3);
}

inline DoubleDouble& operator+=(DoubleDouble& a, DoubleDouble b) { return a = a + b; }
inline DoubleDouble& operator-=(DoubleDouble& a, DoubleDouble b) { return a = a - b; }

inline double abs_hi(DoubleDouble a) { return std::fabs(a.hi); }

inline constexpr DoubleDouble kLn2{0.6931471805599453, 2.3190468138462996e-17};
inline constexpr DoubleDouble kEulerGamma{0.5772156649015329, -4.942915152430645e-18};

/// Natural log of a positive double to double-double accuracy.
/// ln x = e ln 2 + 2 atanh((m-1)/(m+1)) with m in [1/sqrt2, sqrt2).
inline DoubleDouble log_dd(double x) {
    int e = 0;
    double m = std::frexp(x, &e);
    if (m < 0.70710678118654752) {
        m *= 2.0;
        --e;
    }
    // m - 1 is exact here (Sterbenz); m + 1 is carried exactly by two_sum.
    const DoubleDouble z = DoubleDouble(m - 1.0) / two_sum(m, 1.0);
    const DoubleDouble z2 = z * z;
    DoubleDouble power = z;
    DoubleDouble sum = z;
    for (int k = 1; k < 40; ++k) {
        power = power * z2;
        const DoubleDouble term = power / static_cast<double>(2 * k + 1);
        sum += term;
        if (abs_hi(term) < 1e-34 * abs_hi(sum) + 1e-300) break;
    }
    return sum * 2.0 + kLn2 * static_cast<double>(e);
}

}  // namespace koff2d::detail
