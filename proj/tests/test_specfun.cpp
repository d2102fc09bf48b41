#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "koff2d/specfun.hpp"
#include "oracles/reference_values.hpp"

namespace sf = koff2d::specfun;
using sf::BesselOrder;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) xs.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    return xs;
}

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

// Distance to the nearest zero matters for J and Y: relative error there is
// bounded by the absolute error over |f|, so the tolerance scales with the
// magnitude of the oscillation envelope sqrt(2/(pi x)).
double cylindrical_tol(double value, double x) {
    const double envelope = x > 1.0 ? std::sqrt(2.0 / (kPi * x)) : 1.0;
    return 1e-13 * std::max(std::fabs(value), 1e-3 * envelope) + 4e-16 * envelope;
}

}  // namespace

TEST(Bessel, ValuesAtOrigin) {
    EXPECT_EQ(sf::bessel_j(BesselOrder::zero, 0.0), 1.0);
    EXPECT_EQ(sf::bessel_j(BesselOrder::one, 0.0), 0.0);
    EXPECT_EQ(sf::bessel_i(BesselOrder::zero, 0.0), 1.0);
    EXPECT_EQ(sf::bessel_i(BesselOrder::one, 0.0), 0.0);
}

TEST(Bessel, DocumentedValues) {
    EXPECT_NEAR(sf::j0(1.0), 0.7651976865579666, 1e-15);
    EXPECT_NEAR(sf::y0(1.0), 0.08825696421567696, 1e-16);
    EXPECT_NEAR(sf::i0(1.0), 1.2660658777520082, 2e-15);
}

TEST(Bessel, MatchesHighPrecisionTable) {
    for (const auto& row : koff2d::oracle::kBessel) {
        SCOPED_TRACE(row.x);
        const auto c = sf::bessel_jy01(row.x);
        EXPECT_NEAR(c.j0, row.j0, cylindrical_tol(row.j0, row.x));
        EXPECT_NEAR(c.j1, row.j1, cylindrical_tol(row.j1, row.x));
        EXPECT_NEAR(c.y0, row.y0, cylindrical_tol(row.y0, row.x));
        EXPECT_NEAR(c.y1, row.y1, cylindrical_tol(row.y1, row.x));
        const auto m = sf::bessel_ik01(row.x);
        EXPECT_LE(rel(m.i0, row.i0), 1e-13);
        EXPECT_LE(rel(m.i1, row.i1), 1e-13);
        EXPECT_LE(rel(m.k0, row.k0), 1e-13);
        EXPECT_LE(rel(m.k1, row.k1), 1e-13);
        // single-function entry points agree with the shared evaluation
        EXPECT_EQ(sf::j0(row.x), c.j0);
        EXPECT_EQ(sf::y1(row.x), c.y1);
        EXPECT_EQ(sf::k0(row.x), m.k0);
    }
}

TEST(Bessel, SmallArgumentForms) {
    const double x = 1e-8;
    EXPECT_LE(rel(sf::k1(x), 1.0 / x), 1e-8);
    EXPECT_LE(rel(sf::k0(x), -std::log(x / 2.0) - 0.5772156649), 1e-8);
    EXPECT_LE(rel(sf::y1(1e-6), -2.0 / (kPi * 1e-6)), 1e-9);
    EXPECT_LE(rel(sf::y0(1e-8), 2.0 / kPi * (std::log(x / 2.0) + sf::kEulerGamma)), 1e-14);
}

TEST(Bessel, DeepSmallArguments) {
    for (double x : {1e-300, 1e-200, 1e-100, 1e-30}) {
        SCOPED_TRACE(x);
        const double ell = std::log(x / 2.0) + sf::kEulerGamma;
        EXPECT_LE(rel(sf::y1(x), -2.0 / (kPi * x)), 1e-15);
        EXPECT_LE(rel(sf::y0(x), 2.0 / kPi * ell), 1e-15);
        EXPECT_LE(rel(sf::k0(x), -ell), 1e-15);
        EXPECT_LE(rel(sf::k1(x), 1.0 / x), 1e-15);
        EXPECT_EQ(sf::j0(x), 1.0);
        EXPECT_LE(rel(sf::j1(x), x / 2.0), 1e-15);
    }
}

TEST(Bessel, WronskianJY) {
    EXPECT_NEAR(sf::j1(2.0) * sf::y0(2.0) - sf::j0(2.0) * sf::y1(2.0), 2.0 / (kPi * 2.0), 1e-15);
    for (double x : log_grid(1e-6, 400.0, 200)) {
        SCOPED_TRACE(x);
        const auto c = sf::bessel_jy01(x);
        const double w = 2.0 / (kPi * x);
        EXPECT_LE(std::fabs(c.j1 * c.y0 - c.j0 * c.y1 - w), 1e-12 * w);
    }
}

TEST(Bessel, WronskianIK) {
    EXPECT_NEAR(sf::i0(3.0) * sf::k1(3.0) + sf::i1(3.0) * sf::k0(3.0), 1.0 / 3.0, 1e-15);
    for (double x : log_grid(1e-6, 90.0, 200)) {
        SCOPED_TRACE(x);
        const auto m = sf::bessel_ik01(x);
        EXPECT_LE(std::fabs(m.i0 * m.k1 + m.i1 * m.k0 - 1.0 / x), 1e-12 / x);
    }
}

TEST(Bessel, DerivativeRelations) {
    for (double x : log_grid(0.05, 80.0, 20)) {
        SCOPED_TRACE(x);
        const double h = 1e-6 * std::max(1.0, x);
        auto diff = [&](double (*g)(double)) { return (g(x + h) - g(x - h)) / (2.0 * h); };
        // absolute floor: near a zero of the derivative the relative test is meaningless
        auto close = [](double a, double b) { return std::fabs(a - b) <= 1e-6 * std::max(std::fabs(b), 1e-3); };
        EXPECT_TRUE(close(diff(sf::j0), -sf::j1(x)));
        EXPECT_TRUE(close(diff(sf::y0), -sf::y1(x)));
        EXPECT_TRUE(close(diff(sf::i0), sf::i1(x)));
        EXPECT_TRUE(close(diff(sf::k0), -sf::k1(x)));
    }
}

TEST(Bessel, SeriesAndAsymptoticAgreeAtSeam) {
    const double seam = sf::kSeriesSeam;
    namespace d = sf::detail;
    for (double x : {seam * (1 - 1e-12), seam, std::nextafter(seam, 30.0), seam * (1 + 1e-9)}) {
        SCOPED_TRACE(x);
        const auto s = d::cylindrical_series(x);
        const auto a = d::cylindrical_asymptotic(x);
        const double env = std::sqrt(2.0 / (kPi * x));
        EXPECT_LE(std::fabs(s.j0 - a.j0), 1e-13 * env);
        EXPECT_LE(std::fabs(s.j1 - a.j1), 1e-13 * env);
        EXPECT_LE(std::fabs(s.y0 - a.y0), 1e-13 * env);
        EXPECT_LE(std::fabs(s.y1 - a.y1), 1e-13 * env);
        const auto ms = d::modified_series(x);
        const auto ma = d::modified_asymptotic(x);
        EXPECT_LE(rel(ms.i0, ma.i0), 1e-13);
        EXPECT_LE(rel(ms.i1, ma.i1), 1e-13);
        EXPECT_LE(rel(ms.k0, ma.k0), 1e-13);
        EXPECT_LE(rel(ms.k1, ma.k1), 1e-13);
    }
}

TEST(Bessel, PublicValuesContinuousAcrossSeam) {
    const double lo = sf::kSeriesSeam;
    const double hi = std::nextafter(lo, 100.0);
    for (sf::BesselFamily fam : {sf::BesselFamily::first_kind, sf::BesselFamily::second_kind,
                                 sf::BesselFamily::modified_first, sf::BesselFamily::modified_second})
        for (BesselOrder ord : {BesselOrder::zero, BesselOrder::one}) {
            const double a = sf::evaluate({fam, ord}, lo);
            const double b = sf::evaluate({fam, ord}, hi);
            EXPECT_LE(std::fabs(a - b), 1e-13 * std::max(std::fabs(a), 0.1 * std::sqrt(2.0 / (kPi * lo))));
        }
}

TEST(Bessel, Y1RegularPart) {
    for (double x : {1e-10, 1e-4, 0.3, 0.999, 1.0, 1.001, 3.0}) {
        SCOPED_TRACE(x);
        const double direct = kPi * x / 2.0 * sf::y1(x) + 1.0;
        EXPECT_NEAR(sf::y1_regular_part(x), direct, 1e-15 + 1e-13 * std::fabs(direct) + (x < 1e-3 ? 1e-12 : 0.0));
    }
    // leading term (x^2/2)(ln(x/2) + gamma) - x^2/4
    const double x = 1e-5;
    const double lead = x * x / 2.0 * (std::log(x / 2.0) + sf::kEulerGamma) - x * x / 4.0;
    EXPECT_LE(rel(sf::y1_regular_part(x), lead), 1e-9);
}

TEST(Bessel, FiniteAcrossDomain) {
    for (double x : log_grid(1e-300, 500.0, 400)) {
        const auto c = sf::bessel_jy01(x);
        EXPECT_TRUE(std::isfinite(c.j0) && std::isfinite(c.j1) && std::isfinite(c.y0) && std::isfinite(c.y1)) << x;
    }
    for (double x : log_grid(1e-300, 100.0, 400)) {
        const auto m = sf::bessel_ik01(x);
        EXPECT_TRUE(std::isfinite(m.i0) && std::isfinite(m.i1) && std::isfinite(m.k0) && std::isfinite(m.k1)) << x;
    }
}

TEST(Bessel, DomainErrors) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    EXPECT_THROW(sf::j0(-1.0), std::domain_error);
    EXPECT_THROW(sf::j1(nan), std::domain_error);
    EXPECT_THROW(sf::j0(inf), std::domain_error);
    EXPECT_THROW(sf::y0(0.0), std::domain_error);
    EXPECT_THROW(sf::y1(-1.0), std::domain_error);
    EXPECT_THROW(sf::i0(-1e-300), std::domain_error);
    EXPECT_THROW(sf::k0(0.0), std::domain_error);
    EXPECT_THROW(sf::k1(inf), std::domain_error);
}

TEST(Bessel, OverflowIsReportedNotSaturated) {
    EXPECT_THROW(sf::i0(800.0), std::out_of_range);
    EXPECT_THROW(sf::k0(800.0), std::out_of_range);
    EXPECT_THROW(sf::bessel_ik01(800.0), std::out_of_range);
    EXPECT_NO_THROW(sf::i1(700.0));
}
