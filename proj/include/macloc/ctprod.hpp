#pragma once

#include "macloc/symfun.hpp"
#include "macloc/xpoly.hpp"

namespace macloc {

// Kernel of the generalized inner product (f,g)'_M.  M is a virtual
// character in the small variables with constant term 1 (the Macdonald
// kernel is entered pre-truncated in q).
struct KernelSpec {
    VirtualChar M;
    int n = 1;
};

// The truncated Macdonald kernel (1-t)(1+q+...+q^{D_q}) in the given context.
VirtualChar macdonald_kernel(const Ctx& ctx);

// Delta_M = lambda(M sum_{i != j} x_i x_j^{-1}); cached per (M, n, ctx).
const XPoly& delta_M(const KernelSpec& spec, const Ctx& ctx);

inline TruncSeries to_coeff_series(const Rat& c, const Ctx& ctx) {
    return TruncSeries::constant(ctx, c);
}
inline TruncSeries to_coeff_series(const PolyFrac& c, const Ctx& ctx) {
    return c.to_series(ctx);
}
inline TruncSeries to_coeff_series(const TruncSeries& c, const Ctx&) { return c; }

template <class K>
XPoly xpoly_from_symfn(const SymFn<K>& f, int n, const Ctx& ctx) {
    XPoly p(n, ctx);
    for (auto& [e, c] : expand_nvars(f, n)) p.add_term(e, to_coeff_series(c, ctx));
    return p;
}

// (f,g)'_M = <f(x) g(x*) Delta_M(x)>.
template <class K>
TruncSeries inner_product(const SymFn<K>& f, const SymFn<K>& g, const KernelSpec& spec,
                          const Ctx& ctx) {
    XPoly xf = xpoly_from_symfn(f, spec.n, ctx);
    XPoly xg = xpoly_from_symfn(g, spec.n, ctx).dual();
    return const_term(xf * xg * delta_M(spec, ctx));
}

// (f,g)'_{q,t} with M = (1-t)(1+q+...+q^{D_q}).
template <class K>
TruncSeries inner_product_qt(const SymFn<K>& f, const SymFn<K>& g, int n, const Ctx& ctx) {
    return inner_product(f, g, KernelSpec{macdonald_kernel(ctx), n}, ctx);
}

// (f, Omega)'_M.  Every monomial of Delta_M has total x-degree 0, so only
// the degree-d component of Omega pairs against the degree-d component of f;
// the default mode exploits this, the widened mode sums h_k over a degree
// window as an empirical cross-check of the grading argument.
TruncSeries pair_omega(const SymFn<Rat>& f, const KernelSpec& spec, const Ctx& ctx,
                       bool widened = false);

// Low-level variant used by the limit-pairing runner: pairs a homogeneous XPoly
// of total degree d against h_d.
TruncSeries pair_omega_xpoly(const XPoly& xf, int degree, const KernelSpec& spec,
                             const Ctx& ctx);

} // namespace macloc
