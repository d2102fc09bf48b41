"""Regenerates tests/oracles/reference_values.hpp with mpmath at 40 digits.

    python3 tests/oracles/generate_reference_values.py > tests/oracles/reference_values.hpp
"""
from mpmath import mp, mpf, besselj, bessely, besseli, besselk, quad, inf, log, sqrt, pi, euler, e, e1, exp

mp.dps = 40


def alpha_beta(h, k, x):
    a = x * x - k
    return a * besselj(1, x) + h * x * besselj(0, x), a * bessely(1, x) + h * x * bessely(0, x)


def f(h, k, x):
    a, b = alpha_beta(h, k, x)
    return (2 * h / pi) ** 2 / (a * a + b * b) / x ** 2


def regularized(h, k, s=1):
    # Independent of any closed form: direct regularized integral.
    f0 = h * h / k / k
    cuts = sorted(set([s, 2, 5, 10, 50, float(sqrt(k))] ))
    upper = [c for c in cuts if c >= s]
    lower = [mpf(0)] + [c for c in cuts if c < s] + [s]
    return quad(lambda x: f(h, k, x) / x, upper + [inf]) + quad(lambda x: (f(h, k, x) - f0) / x, lower)


def master_lhs(h, k, x):
    s = sqrt(x)
    return h / k / x - h * besselk(1, s) / (x * ((x + k) * besselk(1, s) + h * s * besselk(0, s)))


def compensated(h, k, x):
    return master_lhs(h, k, x) + h * h / k / k * log(sqrt(x))


def num(v):
    return mp.nstr(v, 20, min_fixed=-1, max_fixed=-1) if v != 0 else "0.0"


out = []
out.append("#pragma once")
out.append("")
out.append("// Generated by generate_reference_values.py (mpmath, 40 digits). Do not edit.")
out.append("")
out.append("#include <array>")
out.append("")
out.append("namespace koff2d::oracle {")
out.append("")
out.append("struct BesselRow { double x, j0, j1, y0, y1, i0, i1, k0, k1; };")
xs = ["1e-12", "1e-6", "1e-3", "0.1", "0.5", "1", "2.5", "5", "10", "17.5", "18", "18.5", "25", "50", "100", "400"]
out.append(f"inline constexpr std::array<BesselRow, {len(xs)}> kBessel{{{{")
for xv in xs:
    x = mpf(xv)
    vals = [besselj(0, x), besselj(1, x), bessely(0, x), bessely(1, x),
            besseli(0, x), besseli(1, x), besselk(0, x), besselk(1, x)]
    out.append("    {" + xv + ", " + ", ".join(num(v) for v in vals) + "},")
out.append("}};")
out.append("")

out.append("struct IntegrandRow { double h, k, x, f; };")
rows = [(1, 1, "1e-4"), (1, 1, "0.5"), (1, 1, "1"), (1, 1, "3"), (0.1, 10, "3.1622776601683795"),
        (10, 0.1, "0.31622776601683794"), (10, 0.1, "2"), (1, 1, "50"), (0.3, 3, "1000")]
out.append(f"inline constexpr std::array<IntegrandRow, {len(rows)}> kIntegrand{{{{")
for h, k, xv in rows:
    out.append(f"    {{{h}, {k}, {xv}, {num(f(mpf(h), mpf(k), mpf(xv)))}}},")
out.append("}};")
out.append("")

out.append("// Regularized integral by direct high-precision quadrature.")
out.append("struct RegularizedRow { double h, k, value; };")
params = [(1, 1), (0.1, 10), (10, 0.1), (0.1, 0.1), (10, 10), (0.3, 3)]
out.append(f"inline constexpr std::array<RegularizedRow, {len(params)}> kRegularized{{{{")
for h, k in params:
    out.append(f"    {{{h}, {k}, {num(regularized(mpf(h), mpf(k)))}}},")
out.append("}};")
out.append("")

out.append("struct MasterRow { double h, k, x, lhs; };")
mrows = [(1, 1, "1"), (0.1, 10, "0.5"), (10, 0.1, "5"), (1, 1, "1e-6"), (10, 10, "2")]
out.append(f"inline constexpr std::array<MasterRow, {len(mrows)}> kMaster{{{{")
for h, k, xv in mrows:
    out.append(f"    {{{h}, {k}, {xv}, {num(master_lhs(mpf(h), mpf(k), mpf(xv)))}}},")
out.append("}};")
out.append("")

out.append("struct CompensatedRow { double h, k, x, value; };")
crows = [(1, 1, "1e-2"), (1, 1, "1e-8"), (10, 0.1, "1e-4")]
out.append(f"inline constexpr std::array<CompensatedRow, {len(crows)}> kCompensated{{{{")
for h, k, xv in crows:
    out.append(f"    {{{h}, {k}, {xv}, {num(compensated(mpf(h), mpf(k), mpf(xv)))}}},")
out.append("}};")
out.append("")

out.append(f"inline constexpr double kExpE1At1 = {num(e * e1(1))};")
out.append(f"inline constexpr double kK0OverK1At1 = {num(besselk(0, 1) / besselk(1, 1))};")
out.append(f"inline constexpr double kK1OverK0At2 = {num(besselk(1, 2) / besselk(0, 2))};")
out.append(f"inline constexpr double kEulerGamma = {num(+euler)};")
out.append(f"inline constexpr double kLn2MinusGamma = {num(log(2) - euler)};")
out.append("")
out.append("}  // namespace koff2d::oracle")
print("\n".join(out))
