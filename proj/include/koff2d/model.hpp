#pragma once

// Physical and dimensionless parameterizations of the reversible 2D pair.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace koff2d {

/// Raised when a parameter set violates its invariants; names the field.
class ParameterError : public std::invalid_argument {
public:
    ParameterError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct PhysicalParams {
    double kappa_a = 0.0;  ///< intrinsic association constant, area/time
    double kappa_d = 1.0;  ///< intrinsic dissociation constant, 1/time
    double diffusion = 1.0;  ///< D, area/time
    double radius = 1.0;     ///< encounter radius a, length
};

struct DimensionlessParams {
    double h_tilde = 0.0;
    double kappa_tilde = 1.0;
};

inline void validate(const PhysicalParams& p) {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(p.kappa_a) || p.kappa_a < 0.0) throw ParameterError("kappa_a", "must be finite and >= 0");
    if (!finite(p.kappa_d) || !(p.kappa_d > 0.0)) throw ParameterError("kappa_d", "must be finite and > 0");
    if (!finite(p.diffusion) || !(p.diffusion > 0.0)) throw ParameterError("D", "must be finite and > 0");
    if (!finite(p.radius) || !(p.radius > 0.0)) throw ParameterError("a", "must be finite and > 0");
}

inline void validate(const DimensionlessParams& p) {
    if (!std::isfinite(p.h_tilde) || p.h_tilde < 0.0) throw ParameterError("h_tilde", "must be finite and >= 0");
    if (!std::isfinite(p.kappa_tilde) || !(p.kappa_tilde > 0.0))
        throw ParameterError("kappa_tilde", "must be finite and > 0");
}

/// h~ = kappa_a / (2 pi D),  kappa~_D = kappa_d a^2 / D.
inline DimensionlessParams nondimensionalize(const PhysicalParams& p) {
    validate(p);
    return {p.kappa_a / (2.0 * std::numbers::pi * p.diffusion), p.kappa_d * p.radius * p.radius / p.diffusion};
}

/// Factor c with c * F(h~, kappa~_D) = 1/k_off in physical time units.
/// Fixed by matching the h~/kappa~^2 part of F to the bare 1/kappa_d lifetime;
/// undefined when kappa_a = 0 (callers short-circuit to 1/kappa_d there).
inline double physical_scale_factor(const PhysicalParams& p) {
    validate(p);
    if (p.kappa_a == 0.0)
        throw ParameterError("kappa_a", "scale factor undefined; use closed form limit 1/kappa_d");
    const DimensionlessParams d = nondimensionalize(p);
    return d.kappa_tilde * d.kappa_tilde / (d.h_tilde * p.kappa_d);
}

}  // namespace koff2d
