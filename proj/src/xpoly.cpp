#include "macloc/xpoly.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace macloc {

XPoly XPoly::mul_serial(const XPoly& a, const XPoly& b) {
    if (a.n_ != b.n_ || !same_ctx(a.ctx_, b.ctx_))
        throw std::invalid_argument("XPoly: operand mismatch");
    XPoly r(a.n_, a.ctx_);
    ExpVec e(static_cast<std::size_t>(a.n_));
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            TruncSeries c = ca * cb;
            if (c.is_zero()) continue;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, std::move(c));
        }
    }
    return r;
}

XPoly operator*(const XPoly& a, const XPoly& b) {
#ifdef _OPENMP
    if (a.n_ != b.n_ || !same_ctx(a.ctx_, b.ctx_))
        throw std::invalid_argument("XPoly: operand mismatch");
    // parallelize over slices of the larger operand; merge in slice order so
    // the result is deterministic (exact arithmetic makes it order-free
    // anyway)
    const XPoly& big = a.terms_.size() >= b.terms_.size() ? a : b;
    const XPoly& small = a.terms_.size() >= b.terms_.size() ? b : a;
    if (big.terms_.size() < 64) return XPoly::mul_serial(a, b);
    std::vector<const std::pair<const ExpVec, TruncSeries>*> items;
    items.reserve(big.terms_.size());
    for (const auto& kv : big.terms_) items.push_back(&kv);
    int nthreads = 1;
#pragma omp parallel
    {
#pragma omp single
        nthreads = omp_get_num_threads();
    }
    std::vector<XPoly> partial(static_cast<std::size_t>(nthreads), XPoly(a.n_, a.ctx_));
#pragma omp parallel num_threads(nthreads)
    {
        int tid = omp_get_thread_num();
        XPoly& mine = partial[static_cast<std::size_t>(tid)];
        ExpVec e(static_cast<std::size_t>(a.n_));
#pragma omp for schedule(dynamic, 16)
        for (long idx = 0; idx < static_cast<long>(items.size()); ++idx) {
            const auto& [ea, ca] = *items[static_cast<std::size_t>(idx)];
            for (const auto& [eb, cb] : small.terms_) {
                TruncSeries c = ca * cb;
                if (c.is_zero()) continue;
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                mine.add_term(e, std::move(c));
            }
        }
    }
    XPoly r(a.n_, a.ctx_);
    for (auto& p : partial) r += p;
    return r;
#else
    return XPoly::mul_serial(a, b);
#endif
}

namespace {

// Expand prod over the monomials of A_e of (1 - m x^e)^{a_m} as a map
// d -> coefficient of x^{d*e}.
std::map<int, TruncSeries> group_series(const VirtualChar& a, const Ctx& ctx) {
    std::map<int, TruncSeries> cur;
    cur.emplace(0, TruncSeries::constant(ctx, Rat(1)));
    for (const auto& [me, cr] : a.terms()) {
        long c = cr.to_long();
        bool zero_mono = true;
        for (int x : me) zero_mono = zero_mono && x == 0;
        if (zero_mono && c < 0)
            throw std::domain_error(
                "lambda_xchar: negative coefficient at small-variable exponent 0");
        // factor expansion: [d](1 - m y)^c = (-1)^d C(c,d) m^d in powers of y
        std::vector<TruncSeries> fac;
        ExpVec pw(me.size(), 0);
        long d = 0;
        while (true) {
            TruncSeries term = TruncSeries::monomial(
                ctx, pw, d % 2 == 0 ? Rat::binom(c, d) : -Rat::binom(c, d));
            if (term.is_zero() && d > 0) break;
            fac.push_back(std::move(term));
            if (c > 0 && d == c) break;
            if (zero_mono && d >= c) break; // constant monomial: binomial is finite
            ++d;
            for (std::size_t i = 0; i < pw.size(); ++i) pw[i] = static_cast<int>(me[i] * d);
        }
        std::map<int, TruncSeries> next;
        for (const auto& [dc, cc] : cur) {
            for (std::size_t k = 0; k < fac.size(); ++k) {
                TruncSeries prod = cc * fac[k];
                if (prod.is_zero()) continue;
                int key = dc + static_cast<int>(k);
                auto it = next.find(key);
                if (it == next.end()) {
                    next.emplace(key, std::move(prod));
                } else {
                    it->second += prod;
                    if (it->second.is_zero()) next.erase(it);
                }
            }
        }
        cur = std::move(next);
    }
    return cur;
}

} // namespace

XPoly lambda_xchar(const std::map<ExpVec, VirtualChar>& xchar, int n, const Ctx& ctx) {
    XPoly result = XPoly::one(n, ctx);
    for (const auto& [e, a] : xchar) {
        require_integer_coeffs(a);
        bool zero_exp = true;
        for (int x : e) zero_exp = zero_exp && x == 0;
        if (zero_exp) {
            result = result.scaled(lambda_eval_series(a));
            continue;
        }
        XPoly g(n, ctx);
        for (auto& [d, c] : group_series(a, ctx)) {
            ExpVec xe(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) xe[i] = e[i] * d;
            g.add_term(std::move(xe), std::move(c));
        }
        result *= g;
    }
    return result;
}

XPoly xpoly_h(int k, int n, const Ctx& ctx) {
    XPoly p(n, ctx);
    TruncSeries one = TruncSeries::constant(ctx, Rat(1));
    // enumerate weak compositions of k into n parts
    ExpVec e(static_cast<std::size_t>(n), 0);
    e[0] = k;
    while (true) {
        p.add_term(e, one);
        // next composition in colex-ish order
        int i = 0;
        while (i < n - 1 && e[static_cast<std::size_t>(i)] == 0) ++i;
        if (i == n - 1) break;
        int v = e[static_cast<std::size_t>(i)];
        e[static_cast<std::size_t>(i)] = 0;
        e[static_cast<std::size_t>(i + 1)] += 1;
        e[0] = v - 1;
    }
    return p;
}

TruncSeries const_term(const XPoly& f) {
    Rat nf = Rat::factorial(f.nvars());
    return f.coeff(ExpVec(static_cast<std::size_t>(f.nvars()), 0)).scaled(nf.inverse());
}

} // namespace macloc
