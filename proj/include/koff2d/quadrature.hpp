#pragma once

// Adaptive Gauss-Kronrod quadrature with a global error heap, semi-infinite
// tails via x = lo / t, and the split finite-part integral
//   R(s) = int_s^inf f(x)/x dx + int_0^s (f(x) - f0)/x dx.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <functional>
#include <optional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "koff2d/model.hpp"

namespace koff2d::quadrature {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-15;
    int max_subdivisions = 2000;
    double tail_cutoff = 1e4;  ///< truncation point for envelope-bounded tails
    double split_point = 1.0;
};

inline void validate(const QuadratureConfig& c) {
    if (!(c.rel_tol >= 1e-14) || !std::isfinite(c.rel_tol)) throw ParameterError("rel_tol", "must be >= 1e-14");
    if (!(c.abs_tol > 0.0) || !std::isfinite(c.abs_tol)) throw ParameterError("abs_tol", "must be > 0");
    if (c.max_subdivisions < 1) throw ParameterError("max_subdivisions", "must be >= 1");
    if (!(c.split_point > 0.0) || !std::isfinite(c.split_point))
        throw ParameterError("split_point", "must be finite and > 0");
    if (!(c.tail_cutoff > c.split_point)) throw ParameterError("tail_cutoff", "must exceed split_point");
}

struct IntegralEstimate {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions_used = 0;
    bool converged = true;

    IntegralEstimate& operator+=(const IntegralEstimate& o) {
        value += o.value;
        error_estimate += o.error_estimate;
        subdivisions_used += o.subdivisions_used;
        converged = converged && o.converged;
        return *this;
    }
};

inline IntegralEstimate operator+(IntegralEstimate a, const IntegralEstimate& b) { return a += b; }

/// |g(x)| <= coefficient * x^-power beyond some point; power > 1.
struct DecayEnvelope {
    double coefficient;
    double power;

    [[nodiscard]] double integral_from(double x) const {
        return coefficient * std::pow(x, 1.0 - power) / (power - 1.0);
    }
};

template <class G>
concept ScalarFunction = std::invocable<G&, double> && std::convertible_to<std::invoke_result_t<G&, double>, double>;

namespace detail {

inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Weights of the embedded 10-point Gauss rule (nodes kKronrodNodes[1,3,..,9]).
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double lo, hi, value, error;
};

inline bool operator<(const Segment& a, const Segment& b) { return a.error < b.error; }

// One 21-point Kronrod panel with the QUADPACK error heuristic.
template <class G>
Segment kronrod21(G& g, double lo, double hi) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    std::array<double, 21> fv{};
    fv[20] = static_cast<double>(g(center));
    double kronrod = kKronrodWeights[10] * fv[20];
    double gauss = 0.0;
    double abs_sum = std::fabs(kronrod);
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kKronrodNodes[j];
        fv[2 * j] = static_cast<double>(g(center - dx));
        fv[2 * j + 1] = static_cast<double>(g(center + dx));
        const double pair = fv[2 * j] + fv[2 * j + 1];
        kronrod += kKronrodWeights[j] * pair;
        abs_sum += kKronrodWeights[j] * (std::fabs(fv[2 * j]) + std::fabs(fv[2 * j + 1]));
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    const double mean = 0.5 * kronrod;
    double asc = kKronrodWeights[10] * std::fabs(fv[20] - mean);
    for (int j = 0; j < 10; ++j)
        asc += kKronrodWeights[j] * (std::fabs(fv[2 * j] - mean) + std::fabs(fv[2 * j + 1] - mean));

    const double ahalf = std::fabs(half);
    double err = std::fabs((kronrod - gauss) * half);
    asc *= ahalf;
    abs_sum *= ahalf;
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    if (abs_sum > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * abs_sum, err);
    if (!std::isfinite(kronrod)) err = std::numeric_limits<double>::infinity();
    return {lo, hi, kronrod * half, err};
}

inline double tolerance(const QuadratureConfig& cfg, double value) {
    return std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(value));
}

}  // namespace detail

/// Adaptive integral over the panels [points[i], points[i+1]]. Repeatedly
/// bisects the panel with the largest error estimate until the total error
/// meets the tolerance or max_subdivisions bisections have been made.
template <ScalarFunction G>
IntegralEstimate integrate_piecewise(G&& g, std::span<const double> points, const QuadratureConfig& cfg) {
    validate(cfg);
    if (points.size() < 2) throw std::invalid_argument("integrate_piecewise: need at least two points");
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (!std::isfinite(points[i]) || !std::isfinite(points[i + 1]) || !(points[i] < points[i + 1]))
            throw std::invalid_argument("integrate_piecewise: points must be finite and increasing");
    }

    std::vector<detail::Segment> heap;
    std::vector<detail::Segment> frozen;  // too narrow to bisect further
    heap.reserve(points.size() + 2 * static_cast<std::size_t>(cfg.max_subdivisions));
    double value = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        heap.push_back(detail::kronrod21(g, points[i], points[i + 1]));
        value += heap.back().value;
        error += heap.back().error;
    }
    std::make_heap(heap.begin(), heap.end());

    int bisections = 0;
    while (error > detail::tolerance(cfg, value) && bisections < cfg.max_subdivisions && !heap.empty()) {
        std::pop_heap(heap.begin(), heap.end());
        const detail::Segment worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi) ||
            (worst.hi - worst.lo) < 64.0 * std::numeric_limits<double>::epsilon() *
                                        std::max(std::fabs(worst.lo), std::fabs(worst.hi))) {
            frozen.push_back(worst);
            continue;
        }
        const detail::Segment left = detail::kronrod21(g, worst.lo, mid);
        const detail::Segment right = detail::kronrod21(g, mid, worst.hi);
        ++bisections;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
    }

    IntegralEstimate out;
    out.value = 0.0;
    out.error_estimate = 0.0;
    std::vector<detail::Segment> all = std::move(heap);
    all.insert(all.end(), frozen.begin(), frozen.end());
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    for (const auto& s : all) {
        out.value += s.value;
        out.error_estimate += s.error;
    }
    out.subdivisions_used = bisections;
    out.converged = std::isfinite(out.value) && out.error_estimate <= detail::tolerance(cfg, out.value);
    return out;
}

template <ScalarFunction G>
IntegralEstimate integrate_adaptive(G&& g, double lo, double hi, const QuadratureConfig& cfg) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        throw std::invalid_argument("integrate_adaptive: require finite lo < hi");
    const std::array<double, 2> pts{lo, hi};
    return integrate_piecewise(g, pts, cfg);
}

/// int_lo^inf g(x) dx through x = lo / t, t in (0, 1]. Interior breakpoints
/// (x-space, > lo) are integrated directly in x up to twice the largest one,
/// since lo / t cannot place nodes finer than ulp(t) relative to a narrow peak;
/// only the smooth remainder beyond is mapped.
template <ScalarFunction G>
IntegralEstimate integrate_tail(G&& g, double lo, const QuadratureConfig& cfg,
                                std::span<const double> breakpoints = {}) {
    if (!(lo > 0.0) || !std::isfinite(lo)) throw std::invalid_argument("integrate_tail: lo must be finite and > 0");
    std::vector<double> pts{lo};
    for (double b : breakpoints)
        if (b > lo && std::isfinite(b)) pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    IntegralEstimate near;
    double start = lo;
    if (pts.size() > 1) {
        start = 2.0 * pts.back();
        pts.push_back(start);
        near = integrate_piecewise(g, pts, cfg);
    }
    auto mapped = [&](double t) -> double {
        const double x = start / t;
        const double v = static_cast<double>(g(x));
        return v == 0.0 ? 0.0 : v * (start / (t * t));
    };
    const std::array<double, 2> unit{0.0, 1.0};
    IntegralEstimate far = integrate_piecewise(mapped, unit, cfg);
    if (pts.size() == 1) return far;
    IntegralEstimate total = near + far;
    total.converged = near.converged && far.converged && total.error_estimate <= detail::tolerance(cfg, total.value);
    return total;
}

/// Truncated tail: int_lo^cutoff g plus the envelope bound on the remainder,
/// which is added to the error estimate (not the value).
template <ScalarFunction G>
IntegralEstimate integrate_tail_truncated(G&& g, double lo, const DecayEnvelope& envelope,
                                          const QuadratureConfig& cfg) {
    if (!(envelope.power > 1.0)) throw std::invalid_argument("integrate_tail_truncated: envelope power must exceed 1");
    if (!(cfg.tail_cutoff > lo)) throw std::invalid_argument("integrate_tail_truncated: tail_cutoff must exceed lo");
    IntegralEstimate est = integrate_adaptive(g, lo, cfg.tail_cutoff, cfg);
    est.error_estimate += envelope.integral_from(cfg.tail_cutoff);
    est.converged = est.converged && est.error_estimate <= detail::tolerance(cfg, est.value);
    return est;
}

/// int_0^inf g = int_0^1 g + int_1^inf g.
template <ScalarFunction G>
IntegralEstimate integrate_half_line(G&& g, const QuadratureConfig& cfg) {
    return integrate_adaptive(g, 0.0, 1.0, cfg) + integrate_tail(g, 1.0, cfg);
}

/// A narrow feature at `center`, integrated over center -/+ half_width in the
/// offset d = x - center. `f_offset(d)` must equal f(center + d) (and
/// `subtracted_offset(d)` the cancellation-safe (f - f0)/x there); evaluating
/// through d keeps quadrature nodes resolvable far below ulp(center).
struct OffsetWindow {
    double center = 0.0;
    double half_width = 0.0;
    std::function<double(double)> f_offset;
    std::function<double(double)> subtracted_offset;
    std::vector<double> offsets;  ///< panel edges in d
};

struct FinitePartProblem {
    std::function<double(double)> f;
    double f0 = 0.0;
    double split = 1.0;
    /// Optional cancellation-safe (f(x) - f0)/x, used for x < subtracted_below.
    std::function<double(double)> subtracted;
    double subtracted_below = 0.0;
    /// Points where the integrand has structure worth splitting at.
    std::vector<double> breakpoints;
    std::optional<OffsetWindow> window;
};

namespace detail {

inline std::vector<double> edges_within(double lo, double hi, const std::vector<double>& marks) {
    std::vector<double> pts{lo};
    for (double m : marks)
        if (m > lo && m < hi) pts.push_back(m);
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace detail

namespace detail {

struct FinitePartPass {
    IntegralEstimate total;
    double magnitude = 0.0;  ///< sum of |piece values|
};

inline FinitePartPass finite_part_pass(const FinitePartProblem& fp, const QuadratureConfig& cfg) {
    auto over_x = [&](double x) { return fp.f(x) / x; };
    auto near = [&](double x) {
        if (fp.subtracted && x < fp.subtracted_below) return fp.subtracted(x);
        return (fp.f(x) - fp.f0) / x;
    };
    FinitePartPass out;
    auto add = [&out](const IntegralEstimate& piece) {
        out.total += piece;
        out.magnitude += std::fabs(piece.value);
    };

    // x-axis pieces: [0, split] with `near`, [split, inf) with `over_x`; the
    // window (if any) is cut out of both and done in the offset variable.
    double cut_lo = INFINITY;
    double cut_hi = INFINITY;
    if (fp.window) {
        const OffsetWindow& w = *fp.window;
        cut_lo = w.center - w.half_width;
        cut_hi = w.center + w.half_width;
        const double split_d = fp.split - w.center;
        std::vector<double> marks = w.offsets;
        marks.push_back(split_d);
        auto in_window = [&](double d) {
            const double x = w.center + d;
            if (d >= split_d) return w.f_offset(d) / x;
            if (w.subtracted_offset) return w.subtracted_offset(d);
            return (w.f_offset(d) - fp.f0) / x;
        };
        add(integrate_piecewise(in_window, edges_within(-w.half_width, w.half_width, marks), cfg));
    }

    // below the split, outside the window
    add(integrate_piecewise(near, edges_within(0.0, std::min(fp.split, cut_lo), fp.breakpoints), cfg));
    if (cut_hi < fp.split) add(integrate_piecewise(near, edges_within(cut_hi, fp.split, fp.breakpoints), cfg));

    // above the split, outside the window
    if (fp.split < cut_lo && std::isfinite(cut_lo))
        add(integrate_piecewise(over_x, edges_within(fp.split, cut_lo, fp.breakpoints), cfg));
    const double tail_start = std::isfinite(cut_hi) ? std::max(fp.split, cut_hi) : fp.split;
    add(integrate_tail(over_x, tail_start, cfg, fp.breakpoints));

    out.total.converged = out.total.converged && out.total.error_estimate <= tolerance(cfg, out.total.value);
    return out;
}

}  // namespace detail

/// R(split) = int_split^inf f/x + int_0^split (f - f0)/x. Moving the split
/// from 1 to s shifts R by -f0 ln s. The pieces can cancel, so when their
/// summed error misses the tolerance on R the pass is repeated with the piece
/// tolerance tightened by the cancellation ratio.
inline IntegralEstimate finite_part(const FinitePartProblem& fp, const QuadratureConfig& cfg) {
    if (!fp.f) throw std::invalid_argument("finite_part: f is empty");
    if (!(fp.split > 0.0) || !std::isfinite(fp.split)) throw std::invalid_argument("finite_part: split must be > 0");
    if (fp.window) {
        const OffsetWindow& w = *fp.window;
        if (!w.f_offset || !(w.half_width > 0.0) || !(w.center - w.half_width > 0.0))
            throw std::invalid_argument("finite_part: window must lie in (0, inf) with f_offset set");
    }
    validate(cfg);

    detail::FinitePartPass pass = detail::finite_part_pass(fp, cfg);
    const IntegralEstimate& t = pass.total;
    if (t.converged || !std::isfinite(t.value) || !(pass.magnitude > std::fabs(t.value))) return t;

    QuadratureConfig tight = cfg;
    tight.rel_tol = std::max(1e-14, 0.5 * cfg.rel_tol * std::fabs(t.value) / pass.magnitude);
    tight.abs_tol = 0.5 * cfg.abs_tol;
    IntegralEstimate retry = detail::finite_part_pass(fp, tight).total;
    retry.subdivisions_used += t.subdivisions_used;
    retry.converged = std::isfinite(retry.value) && retry.error_estimate <= detail::tolerance(cfg, retry.value);
    return retry;
}

}  // namespace koff2d::quadrature
