#pragma once

#include "macloc/ctprod.hpp"
#include "macloc/partitions.hpp"
#include "macloc/poly_frac.hpp"
#include "macloc/symfun.hpp"

namespace macloc {

// Infinite-variable (q,t) inner product: <p_lam, p_lam> = z_lam prod_i
// (1-q^{lam_i})/(1-t^{lam_i}), diagonal in the p-basis.
PolyFrac qt_pairing(const SymFn<PolyFrac>& f, const SymFn<PolyFrac>& g);

SymFn<PolyFrac> lift(const SymFn<Rat>& f);

// Macdonald polynomial P_mu = m_mu + sum_{lam < mu} u_lam m_lam, the unique
// monic dominance-triangular element orthogonal to all smaller m_lam under
// the (q,t) pairing.  Cached per partition.
const SymFn<PolyFrac>& macdonald_P(const Partition& mu);

// Hook-type cell products.
PolyFrac c_poly(const Partition& mu);       // prod (1 - q^{a} t^{l+1})
PolyFrac cprime_poly(const Partition& mu);  // prod (1 - q^{a+1} t^{l})

// Infinite-variable norm c'_mu / c_mu.
PolyFrac norm_inf(const Partition& mu);

// Coefficient of P_mu in the Macdonald expansion of Omega:
// c'_mu^{-1} prod (t^{l'} - q^{a'+1}).
PolyFrac a_coeff(const Partition& mu);

// Principal specialization f(t^rho), t^rho = 1 + t + ... + t^{n-1}.
PolyFrac eval_principal(const SymFn<PolyFrac>& f, int n);

// Right-hand side of the closed norm formula:
// lambda((t-q)(1-t)/(1-q) sum_{i<j} q^{mu_i - mu_j} t^{j-i-1}).
TruncSeries finite_norm_rhs(const Partition& mu, int n, const Ctx& ctx);

// Finite-m approximation of the limit formula:
// lambda(n(t-q)/(1-q) + (q-t^n)/(1-q) t^{-rho}) P_mu(t^rho) a_{mu+m^n}^{-1}.
TruncSeries nsa_rhs(const Partition& mu, int n, int m, const Ctx& ctx);

// Monomial expansion of the n-variable polynomial P_mu(x_1..x_n; q, t),
// computed directly as the eigenfunction of Macdonald's q,t-difference
// operator.  Agrees with expand_nvars(macdonald_P(mu), n) but stays fast
// at degrees where the Gram construction is out of reach.
std::map<std::vector<int>, PolyFrac> macdonald_P_nvars(const Partition& mu, int n);

// e_n^m P_mu = P_{mu+m^n} in n variables, exact over Q(q,t).
bool pieri_en_check(const Partition& mu, int n, int m);

// Test oracle: coefficient of P_mu in the triangular P-expansion of h_{|mu|}.
PolyFrac a_coeff_by_expansion(const Partition& mu);

} // namespace macloc
