#pragma once

#include "macloc/plethysm.hpp"
#include "macloc/trunc_series.hpp"

#include <map>
#include <vector>

namespace macloc {

// Laurent polynomial in x_1..x_n with truncated-series coefficients.
// x-exponents are exact (never clipped); truncation happens only in the
// small-variable coefficients.
class XPoly {
public:
    XPoly(int n, Ctx ctx) : n_(n), ctx_(std::move(ctx)) {}

    static XPoly one(int n, Ctx ctx) {
        XPoly p(n, ctx);
        p.terms_.emplace(ExpVec(static_cast<std::size_t>(n), 0),
                         TruncSeries::constant(p.ctx_, Rat(1)));
        return p;
    }
    static XPoly monomial(int n, Ctx ctx, ExpVec e, TruncSeries c) {
        XPoly p(n, std::move(ctx));
        p.add_term(std::move(e), std::move(c));
        return p;
    }

    int nvars() const { return n_; }
    const Ctx& ctx() const { return ctx_; }
    const std::map<ExpVec, TruncSeries>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(ExpVec e, TruncSeries c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    TruncSeries coeff(const ExpVec& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? TruncSeries(ctx_) : it->second;
    }

    XPoly& operator+=(const XPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    friend bool operator==(const XPoly& a, const XPoly& b) {
        return a.n_ == b.n_ && same_ctx(a.ctx_, b.ctx_) && a.terms_ == b.terms_;
    }

    // Product; OpenMP-parallel over blocks of the larger operand when
    // available, with mul_serial as the reference implementation.
    friend XPoly operator*(const XPoly& a, const XPoly& b);
    static XPoly mul_serial(const XPoly& a, const XPoly& b);
    XPoly& operator*=(const XPoly& o) { return *this = *this * o; }

    XPoly scaled(const TruncSeries& s) const {
        XPoly r(n_, ctx_);
        for (const auto& [e, c] : terms_) r.add_term(e, c * s);
        return r;
    }

    // x* substitution: negate every exponent vector.
    XPoly dual() const {
        XPoly r(n_, ctx_);
        for (const auto& [e, c] : terms_) {
            ExpVec ne(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) ne[i] = -e[i];
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    // Multiply by (x_1...x_n)^m, i.e. shift every exponent by m.
    XPoly shifted_all(int m) const {
        XPoly r(n_, ctx_);
        for (const auto& [e, c] : terms_) {
            ExpVec ne(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) ne[i] = e[i] + m;
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    // Largest positive exponent of x_i over the support (0 if none).
    int max_positive_degree(int i) const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(i)]);
        return d;
    }

private:
    int n_;
    Ctx ctx_;
    std::map<ExpVec, TruncSeries> terms_;
};

// lambda of an "x-character" sum_e A_e x^e, where each A_e is a virtual
// character in the small variables:
//   prod_{e} prod_{monomials m of A_e} (1 - m x^e)^{a_m}.
// Negative-exponent factors are expanded termwise in the small variables,
// so every monomial of A_e with a negative coefficient must have positive
// lex degree (the e = 0 component goes through lambda_eval_series).
XPoly lambda_xchar(const std::map<ExpVec, VirtualChar>& xchar, int n, const Ctx& ctx);

// Complete homogeneous polynomial h_k(x_1..x_n) as an XPoly with coefficient 1.
XPoly xpoly_h(int k, int n, const Ctx& ctx);

// Constant term functional: coefficient of x^0, divided by n!.
TruncSeries const_term(const XPoly& f);

} // namespace macloc
