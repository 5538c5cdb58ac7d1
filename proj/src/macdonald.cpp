#include "macloc/macdonald.hpp"

#include "macloc/plethysm.hpp"

#include <mutex>

namespace macloc {

namespace {

PolyFrac p_norm(const Partition& lam) {
    PolyFrac v(zee(lam));
    for (int part : lam.parts()) {
        PolyFrac f(MPoly::constant(Rat(1)) - MPoly::q(part),
                   MPoly::constant(Rat(1)) - MPoly::t(part));
        v *= f;
    }
    return v;
}

// The change-of-basis matrix into the power-sum basis has rational entries,
// so cache it over Rat and keep PolyFrac arithmetic out of the conversion.
const SymFn<Rat>& gen_to_p(Basis b, const Partition& lam) {
    static std::map<std::pair<Basis, Partition>, SymFn<Rat>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(b, lam);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, convert(sym_gen(b, lam), Basis::p)).first;
    return it->second;
}

SymFn<PolyFrac> to_p(const SymFn<PolyFrac>& f) {
    if (f.basis == Basis::p) return f;
    SymFn<PolyFrac> out(Basis::p);
    for (const auto& [lam, c] : f.coeffs)
        for (const auto& [nu, r] : gen_to_p(f.basis, lam).coeffs)
            out.add_term(nu, c * PolyFrac(r));
    return out;
}

// Fraction-free (Bareiss) determinant; every division is exact, so no gcd
// reductions are needed along the way.
MPoly bareiss_det(std::vector<std::vector<MPoly>> m) {
    std::size_t n = m.size();
    if (n == 0) return MPoly::constant(Rat(1));
    MPoly prev = MPoly::constant(Rat(1));
    Rat sign(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return MPoly();
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).divexact(prev);
            m[i][k] = MPoly();
        }
        prev = m[k][k];
    }
    return m[n - 1][n - 1].scaled(sign);
}

} // namespace

SymFn<PolyFrac> lift(const SymFn<Rat>& f) {
    SymFn<PolyFrac> g(f.basis);
    for (const auto& [lam, c] : f.coeffs) g.add_term(lam, PolyFrac(c));
    return g;
}

PolyFrac qt_pairing(const SymFn<PolyFrac>& f, const SymFn<PolyFrac>& g) {
    SymFn<PolyFrac> fp = to_p(f);
    SymFn<PolyFrac> gp = to_p(g);
    PolyFrac out;
    for (const auto& [lam, cf] : fp.coeffs) {
        auto it = gp.coeffs.find(lam);
        if (it == gp.coeffs.end()) continue;
        out += cf * it->second * p_norm(lam);
    }
    return out;
}

const SymFn<PolyFrac>& macdonald_P(const Partition& mu) {
    static std::map<Partition, SymFn<PolyFrac>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(mu);
    if (it != cache.end()) return it->second;

    std::vector<Partition> lower;
    for (const auto& lam : partitions_of(mu.size()))
        if (dominance_less(lam, mu)) lower.push_back(lam);

    SymFn<PolyFrac> P(Basis::m);
    P.add_term(mu, PolyFrac(Rat(1)));
    if (!lower.empty()) {
        // solve <m_mu + sum u_lam m_lam, m_kappa> = 0 for all kappa < mu
        std::size_t n = lower.size();
        auto pairing = [](const Partition& a, const Partition& b) {
            return qt_pairing(lift(sym_gen(Basis::m, a)), lift(sym_gen(Basis::m, b)));
        };
        std::vector<std::vector<PolyFrac>> A(n, std::vector<PolyFrac>(n + 1));
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) A[r][c] = pairing(lower[c], lower[r]);
            A[r][n] = -pairing(mu, lower[r]);
        }
        // Clear denominators row by row so the system lives over Q[q,t], then
        // solve it with exact polynomial arithmetic (Bareiss + Cramer); only
        // the final coefficient ratios need a gcd reduction.
        std::vector<std::vector<MPoly>> M(n, std::vector<MPoly>(n));
        std::vector<MPoly> rhs(n);
        for (std::size_t r = 0; r < n; ++r) {
            MPoly L = MPoly::constant(Rat(1));
            for (std::size_t j = 0; j <= n; ++j)
                if (!A[r][j].is_zero())
                    L = (L * A[r][j].den()).divexact(MPoly::gcd(L, A[r][j].den()));
            for (std::size_t c = 0; c < n; ++c)
                if (!A[r][c].is_zero()) M[r][c] = A[r][c].num() * L.divexact(A[r][c].den());
            if (!A[r][n].is_zero()) rhs[r] = A[r][n].num() * L.divexact(A[r][n].den());
        }
        MPoly det = bareiss_det(M);
        if (det.is_zero()) throw std::runtime_error("macdonald_P: singular Gram system");
        for (std::size_t i = 0; i < n; ++i) {
            auto Mi = M;
            for (std::size_t r = 0; r < n; ++r) Mi[r][i] = rhs[r];
            MPoly di = bareiss_det(std::move(Mi));
            if (!di.is_zero()) P.add_term(lower[i], PolyFrac(std::move(di), det));
        }
    }
    return cache.emplace(mu, std::move(P)).first->second;
}

PolyFrac c_poly(const Partition& mu) {
    PolyFrac out(Rat(1));
    for (Cell s : cells(mu)) {
        MPoly f = MPoly::constant(Rat(1)) -
                  MPoly::q(arm(mu, s)) * MPoly::t(leg(mu, s) + 1);
        out *= PolyFrac(f);
    }
    return out;
}

PolyFrac cprime_poly(const Partition& mu) {
    PolyFrac out(Rat(1));
    for (Cell s : cells(mu)) {
        MPoly f = MPoly::constant(Rat(1)) -
                  MPoly::q(arm(mu, s) + 1) * MPoly::t(leg(mu, s));
        out *= PolyFrac(f);
    }
    return out;
}

PolyFrac norm_inf(const Partition& mu) { return cprime_poly(mu) / c_poly(mu); }

PolyFrac a_coeff(const Partition& mu) {
    PolyFrac prod(Rat(1));
    for (Cell s : cells(mu)) {
        MPoly f = MPoly::t(coleg(mu, s)) - MPoly::q(coarm(mu, s) + 1);
        prod *= PolyFrac(f);
    }
    return prod / cprime_poly(mu);
}

PolyFrac eval_principal(const SymFn<PolyFrac>& f, int n) {
    SymFn<PolyFrac> fp = to_p(f);
    PolyFrac out;
    for (const auto& [lam, c] : fp.coeffs) {
        PolyFrac prod = c;
        for (int j : lam.parts()) {
            MPoly s;
            for (int r = 0; r < n; ++r) s += MPoly::t(r * j);
            prod *= PolyFrac(s);
        }
        out += prod;
    }
    return out;
}

TruncSeries finite_norm_rhs(const Partition& mu, int n, const Ctx& ctx) {
    if (mu.length() > n) throw std::invalid_argument("finite_norm_rhs: mu has more than n parts");
    if (n == 1) return TruncSeries::constant(ctx, Rat(1));
    int qi = ctx->index("q");
    if (qi < 0 || ctx->index("t") < 0)
        throw std::invalid_argument("finite_norm_rhs: context must contain q and t");
    VirtualChar geo(ctx);
    for (int k = 0; k <= ctx->cap[static_cast<std::size_t>(qi)]; ++k)
        geo += TruncSeries::var_pow(ctx, "q", k);
    VirtualChar head = (TruncSeries::var_pow(ctx, "t", 1) - TruncSeries::var_pow(ctx, "q", 1)) *
                       (TruncSeries::constant(ctx, Rat(1)) - TruncSeries::var_pow(ctx, "t", 1)) *
                       geo;
    VirtualChar sum(ctx);
    auto tup = mu.as_tuple(n);
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            ExpVec e(ctx->size(), 0);
            e[static_cast<std::size_t>(qi)] =
                tup[static_cast<std::size_t>(i - 1)] - tup[static_cast<std::size_t>(j - 1)];
            e[static_cast<std::size_t>(ctx->index("t"))] = j - i - 1;
            sum += TruncSeries::monomial(ctx, e, Rat(1));
        }
    }
    return lambda_eval_series(head * sum);
}

TruncSeries nsa_rhs(const Partition& mu, int n, int m, const Ctx& ctx) {
    if (mu.length() > n) throw std::invalid_argument("nsa_rhs: mu has more than n parts");
    if (m < 0) throw std::invalid_argument("nsa_rhs: m must be nonnegative");
    int qi = ctx->index("q"), ti = ctx->index("t");
    if (qi < 0 || ti < 0) throw std::invalid_argument("nsa_rhs: context must contain q and t");
    int Dq = ctx->cap[static_cast<std::size_t>(qi)];
    int Dt = ctx->cap[static_cast<std::size_t>(ti)];
    Partition nu = add_rect(mu, m, n);

    // Every factor below has only nonnegative q-exponents, so the q-window
    // needs no widening.  The t-window is widened symmetrically: negative
    // t-depth comes from the coleg monomials t^{-l'} of the hook factors
    // (at most sum of colegs over nu) plus geometric residuals q^a t^{-i},
    // whose shared q-budget Dq bounds their total depth by (n-1) Dq.
    int colegs = 0;
    for (Cell s : cells(nu)) colegs += coleg(nu, s);
    int pad = colegs + (n - 1) * Dq + Dt + 4;
    SmallVarSet ws = *ctx;
    ws.cap[static_cast<std::size_t>(ti)] = Dt + pad;
    ws.low[static_cast<std::size_t>(ti)] = -pad;
    ws.total_cap = -1;
    Ctx wide = make_ctx(std::move(ws));

    VirtualChar geo(wide);
    for (int k = 0; k <= Dq; ++k) geo += TruncSeries::var_pow(wide, "q", k);
    VirtualChar trho_neg(wide);
    for (int i = 0; i < n; ++i) trho_neg += TruncSeries::var_pow(wide, "t", -i);
    VirtualChar tq = TruncSeries::var_pow(wide, "t", 1) - TruncSeries::var_pow(wide, "q", 1);
    VirtualChar head = tq.scaled(Rat(n)) * geo +
                       (TruncSeries::var_pow(wide, "q", 1) - TruncSeries::var_pow(wide, "t", n)) *
                           geo * trho_neg;
    TruncSeries result = lambda_eval_series(head);

    // P_mu(t^rho) t^{m binom(n,2)} = P_{mu+m^n}(t^rho); the t-power restores
    // the normalization that the z^{-m binom(n,2)} limit absorbs at z = t
    result *= eval_principal(macdonald_P(mu), n).to_series(wide);
    result *= TruncSeries::var_pow(wide, "t", m * n * (n - 1) / 2);

    // a_nu^{-1} = c'_nu prod_{s in nu} (t^{l'} - q^{a'+1})^{-1}, each hook
    // factor inverted as a geometric series in q^{a'+1} t^{-l'}
    result *= cprime_poly(nu).to_series(wide);
    for (Cell s : cells(nu)) {
        MPoly f = MPoly::t(coleg(nu, s)) - MPoly::q(coarm(nu, s) + 1);
        result *= f.to_series(wide).inverse();
    }

    // re-clip into the caller's window
    TruncSeries out(ctx);
    for (const auto& [e, v] : result.terms()) out.add_term(e, v);
    return out;
}

namespace {

// Polynomials in x_1..x_n with coefficients in Q(q,t), as exponent maps.
using XMap = std::map<std::vector<int>, PolyFrac>;

void xp_add(XMap& p, const std::vector<int>& e, const PolyFrac& c) {
    if (c.is_zero()) return;
    auto it = p.find(e);
    if (it == p.end()) {
        p.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

// Multiply by the binomial a*x_k + b*x_l (either scalar may carry q,t).
XMap xp_mul_binomial(const XMap& p, int k, const PolyFrac& a, int l, const PolyFrac& b) {
    XMap r;
    for (const auto& [e, c] : p) {
        std::vector<int> e1 = e;
        ++e1[static_cast<std::size_t>(k)];
        xp_add(r, e1, c * a);
        std::vector<int> e2 = e;
        ++e2[static_cast<std::size_t>(l)];
        xp_add(r, e2, c * b);
    }
    return r;
}

// Exact division by (x_k - x_l); throws if the division leaves a remainder.
XMap xp_div_linear(XMap p, int k, int l) {
    XMap quot;
    while (!p.empty()) {
        // leading term under lex order with x_k most significant
        auto best = p.begin();
        for (auto it = std::next(p.begin()); it != p.end(); ++it) {
            int ik = it->first[static_cast<std::size_t>(k)];
            int bk = best->first[static_cast<std::size_t>(k)];
            if (ik != bk ? ik > bk : it->first > best->first) best = it;
        }
        if (best->first[static_cast<std::size_t>(k)] == 0)
            throw std::domain_error("macdonald_P_nvars: inexact division");
        std::vector<int> qe = best->first;
        --qe[static_cast<std::size_t>(k)];
        PolyFrac qc = best->second;
        xp_add(quot, qe, qc);
        p.erase(best);
        std::vector<int> e2 = qe;
        ++e2[static_cast<std::size_t>(l)];
        xp_add(p, e2, qc);
    }
    return quot;
}

// Macdonald's operator D^1_n applied to f, computed with the Vandermonde
// cleared: D f = [sum_i (-1)^i prod_{j != i}(t x_i - x_j) W_i T_{q,i} f] / V
// where V = prod_{k<l}(x_k - x_l) and W_i is the Vandermonde without x_i.
XMap macdonald_D(const XMap& f, int n) {
    XMap num;
    const PolyFrac one(Rat(1)), neg_one(Rat(-1)), tt(MPoly::t(1));
    for (int i = 0; i < n; ++i) {
        XMap term;
        for (const auto& [e, c] : f) {
            int d = e[static_cast<std::size_t>(i)];
            PolyFrac shifted = d == 0 ? c : c * PolyFrac(MPoly::q(d));
            if (i % 2 != 0) shifted = -shifted;
            xp_add(term, e, shifted);
        }
        for (int j = 0; j < n; ++j)
            if (j != i) term = xp_mul_binomial(term, i, tt, j, neg_one);
        for (int k = 0; k < n; ++k)
            for (int l = k + 1; l < n; ++l)
                if (k != i && l != i) term = xp_mul_binomial(term, k, one, l, neg_one);
        for (const auto& [e, c] : term) xp_add(num, e, c);
    }
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) num = xp_div_linear(std::move(num), k, l);
    return num;
}

// Eigenvalue of D^1_n on P_lam: sum_i q^{lam_i} t^{n-i}.
PolyFrac d_eigenvalue(const Partition& lam, int n) {
    MPoly s;
    auto parts = lam.as_tuple(n);
    for (int i = 0; i < n; ++i) {
        MPoly term = MPoly::t(n - 1 - i);
        if (parts[static_cast<std::size_t>(i)] > 0)
            term *= MPoly::q(parts[static_cast<std::size_t>(i)]);
        s += term;
    }
    return PolyFrac(s);
}

XMap m_expand(const Partition& lam, int n) {
    XMap r;
    const PolyFrac one(Rat(1));
    for (auto& e : monomials_of_m(lam, n)) r.emplace(std::move(e), one);
    return r;
}

} // namespace

std::map<std::vector<int>, PolyFrac> macdonald_P_nvars(const Partition& mu, int n) {
    if (n < 1) throw std::invalid_argument("macdonald_P_nvars: n must be positive");
    if (mu.length() > n)
        throw std::invalid_argument("macdonald_P_nvars: mu has more than n parts");
    PolyFrac eig_mu = d_eigenvalue(mu, n);
    // partitions_of lists in descending lex order, which refines dominance
    XMap acc;   // D applied to the partial sum of known terms
    XMap out;   // monomial expansion of P so far
    bool seen_mu = false;
    for (const auto& lam : partitions_of(mu.size())) {
        if (lam.length() > n) continue;
        PolyFrac c;
        if (lam == mu) {
            seen_mu = true;
            c = PolyFrac(Rat(1));
        } else if (seen_mu && dominance_less(lam, mu)) {
            auto it = acc.find(lam.as_tuple(n));
            if (it == acc.end()) continue;
            c = it->second / (eig_mu - d_eigenvalue(lam, n));
            if (c.is_zero()) continue;
        } else {
            continue;
        }
        XMap mexp = m_expand(lam, n);
        for (const auto& [e, w] : mexp) xp_add(out, e, c * w);
        XMap dm = macdonald_D(mexp, n);
        for (const auto& [e, w] : dm) xp_add(acc, e, c * w);
    }
    return out;
}

bool pieri_en_check(const Partition& mu, int n, int m) {
    auto lhs = macdonald_P_nvars(mu, n);
    auto rhs = macdonald_P_nvars(add_rect(mu, m, n), n);
    if (lhs.size() != rhs.size()) return false;
    for (const auto& [e, c] : lhs) {
        std::vector<int> se(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) se[i] = e[i] + m;
        auto it = rhs.find(se);
        if (it == rhs.end() || !(it->second == c)) return false;
    }
    return true;
}

PolyFrac a_coeff_by_expansion(const Partition& mu) {
    int k = mu.size();
    // expand h_k triangularly in the P-basis, peeling dominance-largest terms
    SymFn<PolyFrac> rest = convert(lift(sym_gen(Basis::h, Partition({k}))), Basis::m);
    if (k == 0) return PolyFrac(Rat(1));
    std::map<Partition, PolyFrac> coeffs;
    auto parts = partitions_of(k);
    // repeatedly subtract c * P_lam for a dominance-maximal m_lam present
    while (!rest.is_zero()) {
        // find a partition in rest maximal in dominance among those present
        Partition top = rest.coeffs.begin()->first;
        for (const auto& [lam, c] : rest.coeffs)
            if (dominance_less(top, lam)) top = lam;
        PolyFrac c = rest.coeffs.at(top);
        coeffs[top] = c;
        rest = rest - [&] {
            SymFn<PolyFrac> s(Basis::m);
            const SymFn<PolyFrac>& P = macdonald_P(top);
            for (const auto& [lam, pc] : P.coeffs) s.add_term(lam, pc * c);
            return s;
        }();
    }
    auto it = coeffs.find(mu);
    return it == coeffs.end() ? PolyFrac() : it->second;
}

} // namespace macloc
