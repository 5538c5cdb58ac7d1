#pragma once

#include "macloc/factored_char.hpp"
#include "macloc/poly_frac.hpp"
#include "macloc/symfun.hpp"
#include "macloc/trunc_series.hpp"

#include <optional>

namespace macloc {

// A virtual character is a truncated series with integer coefficients.
// Finite characters (A, C, M, Z, U_n) are exact; infinite ones (B = z+z^2+...)
// are pre-truncated in the window.
using VirtualChar = TruncSeries;

// Thrown when lambda(A) has a pole at w = 1 (dim_0(A) < 0).
struct PoleAtOne : std::domain_error {
    explicit PoleAtOne(const std::string& what) : std::domain_error(what) {}
};

void require_integer_coeffs(const VirtualChar& a);

long dim_at(const VirtualChar& a, std::string_view var, int e);
long dim_total(const VirtualChar& a);

// x* = x^{-1}; throws if a retained term would fall outside the window.
VirtualChar dualize(const VirtualChar& a);

// (1 - m)^c expanded as a truncated series, where m is the monomial x^e.
// Lex-negative monomials (first nonzero exponent in context order < 0) are
// normalized via (1 - m) = -m (1 - m^{-1}) before expanding, so the result
// is always the expansion about zero in the context's variable order.
TruncSeries one_minus_pow_series(const Ctx& ctx, const ExpVec& e, long c);

// lambda^i(A) via the truncated w-expansion of prod (1 - w m)^{a_m}.
VirtualChar lambda_i(const VirtualChar& a, int i);

// lambda(A) by the product formula.  Returns 0 when dim_0(A) > 0; throws
// PoleAtOne when dim_0(A) < 0.
TruncSeries lambda_eval_series(const VirtualChar& a);

// Single-variable lambda(A) in exact factored form.  zero == true means the
// value is identically 0 (dim_0(A) > 0).
struct LambdaFactored {
    bool zero = false;
    FactoredChar fc;
};
LambdaFactored lambda_eval_factored(const VirtualChar& a, std::string_view var = "z");

// lambda(w A) as a series with w carried as a live context variable.
// The context must contain `wvar`; w should precede the other variables so
// the expansion is by powers of w.
TruncSeries lambda_w_series(const VirtualChar& a, const Ctx& wctx, std::string_view wvar = "w");

// Evaluation homomorphism f |-> f(A), via p_j(A) = A with exponents scaled
// by j.
TruncSeries eval_hom(const SymFn<Rat>& f, const VirtualChar& a);

// Cross-check route through e_i |-> lambda^i(A).
TruncSeries eval_hom_via_lambda(const SymFn<Rat>& f, const VirtualChar& a);

// Degree-k component of Omega(A) = lambda(Ax)^{-1}, in the h-basis:
// sum_{|mu|=k} m_mu(A) h_mu.
SymFn<TruncSeries> omega_component(const VirtualChar& a, int k);

// eps_{u,t}: p_j |-> (1-u^j)/(1-t^j), applied coefficientwise.
PolyFrac eps_ut(const SymFn<PolyFrac>& f);
PolyFrac eps_ut(const SymFn<Rat>& f);

// Substitute u := t^n in the result of eps_ut (principal specialization).
PolyFrac eps_ut_at_u(const PolyFrac& v, int n);

// Common characters.
VirtualChar vchar_zero(const Ctx& ctx);
VirtualChar vchar_un(const Ctx& ctx, int n, std::string_view var = "z"); // 1+z+...+z^{n-1}
VirtualChar vchar_geom(const Ctx& ctx, std::string_view var = "z");      // z+z^2+... to cap

} // namespace macloc
