#pragma once

#include "macloc/ctprod.hpp"
#include "macloc/plethysm.hpp"
#include "macloc/symfun.hpp"

#include <optional>
#include <string>
#include <vector>

namespace macloc {

// A fixed point of the torus action on the Grassmannian of n-dimensional
// quotients of Z: an n-element subset of the (multiplicity-free) weight set.
struct FixedPoint {
    std::vector<int> S; // sorted ascending
};

// Virtual bundle data E_U = A*U + B*U* + C*U*U*, with a twist by det(U)^m
// and an inserted symmetric function f(U).
struct BundleData {
    VirtualChar A, B, C; // characters in z (B may be series-truncated)
    int m = 0;
    SymFn<Rat> f = sym_one();
};

// Weight support of Z; throws if Z has a repeated weight or non-0/1
// coefficients (isolated-fixed-point hypothesis).
std::vector<int> weight_support(const VirtualChar& Z);

// All C(dim Z, n) fixed points, in lexicographic order on S.
std::vector<FixedPoint> fixed_points(const VirtualChar& Z, int n);

// Cotangent character T*_U X = U* V.
VirtualChar cotangent_char(const VirtualChar& Z, const FixedPoint& p, const Ctx& ctx);

// Localized Euler characteristic (sum over fixed points of
// e_n(U)^m f(U) lambda(w E_U) lambda(U*V)^{-1}).  With w_mode off, each
// lambda(E_U) is evaluated at w = 1 and a pole (dim_0 < 0) is reported with
// the offending fixed point; with w_mode on, the context must contain "w"
// and w is carried as a truncated series variable.
TruncSeries chi_loc(const BundleData& data, const VirtualChar& Z, int n, const Ctx& ctx,
                    bool w_mode = false);
TruncSeries chi_loc_serial(const BundleData& data, const VirtualChar& Z, int n, const Ctx& ctx,
                           bool w_mode = false);

// Section character via the constant-term formula
// < e_n^m f(x) lambda(w E_x) lambda(x* Z)^{-1} Delta(x) >, the x-expansion
// of lambda(x* Z)^{-1} bounded automatically by the integrand's positive
// x-degrees.
TruncSeries chi0_ct(const BundleData& data, const VirtualChar& Z, int n, const Ctx& ctx,
                    bool w_mode = false);

// Positivity/growth conditions on the bundle data.
struct ConditionReport {
    bool a_ok = true, b_ok = true, c_ok = true, d_ok = true;
    bool growth_assumed = true; // polynomial growth of B unverifiable on a window
    std::vector<std::string> failures;
    bool all_ok() const { return a_ok && b_ok && c_ok && d_ok; }
};
ConditionReport bundle_conditions(const BundleData& data, const VirtualChar& Z);

// Gap series c_m = chi - chi0, coefficientwise in w: for each w-power up to
// the w-cap, the minimal z-exponent of the gap (nullopt when the gap slice
// is identically zero on the window).
struct GapReport {
    TruncSeries gap;
    std::vector<std::optional<int>> min_z_exp_per_w; // index = w-power
};
GapReport gap_cm(const BundleData& data, const VirtualChar& Z, int n, const Ctx& ctx);

// Right-hand side of the limit formula: lambda(1-M)^n f(U_n) lambda(E),
// E = M U_n U_n* - U_n*.  Throws when dim_0(E) != 0, reporting the value.
TruncSeries limit_pairing_rhs(const SymFn<Rat>& f, const VirtualChar& M, int n, const Ctx& ctx);

// Remap a series into another context by variable name, clipping to the
// target window.
TruncSeries remap(const TruncSeries& s, const Ctx& target);

} // namespace macloc
