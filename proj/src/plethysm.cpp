#include "macloc/plethysm.hpp"

namespace macloc {

void require_integer_coeffs(const VirtualChar& a) {
    for (const auto& [e, c] : a.terms())
        if (!c.is_integer())
            throw std::invalid_argument("VirtualChar: non-integer coefficient");
}

long dim_at(const VirtualChar& a, std::string_view var, int e) {
    int i = a.ctx()->index(var);
    if (i < 0) throw std::invalid_argument("dim_at: unknown variable");
    ExpVec ev(a.ctx()->size(), 0);
    ev[static_cast<std::size_t>(i)] = e;
    if (!a.in_window(ev)) throw std::out_of_range("dim_at: exponent outside window");
    return a.coeff(ev).to_long();
}

long dim_total(const VirtualChar& a) {
    Rat s(0);
    for (const auto& [e, c] : a.terms()) s += c;
    return s.to_long();
}

VirtualChar dualize(const VirtualChar& a) {
    VirtualChar d = a.dual();
    if (d.term_count() != a.term_count())
        throw std::out_of_range("dualize: window cannot hold negated exponents");
    return d;
}

namespace {

int lex_sign(const ExpVec& e) {
    for (int x : e) {
        if (x > 0) return 1;
        if (x < 0) return -1;
    }
    return 0;
}

} // namespace

TruncSeries one_minus_pow_series(const Ctx& ctx, const ExpVec& e, long c) {
    if (c == 0) return TruncSeries::constant(ctx, Rat(1));
    int ls = lex_sign(e);
    if (ls == 0)
        throw std::domain_error("one_minus_pow_series: constant monomial (pole or zero at w=1)");
    if (ls < 0) {
        // (1 - m)^c = (-1)^c m^c (1 - m^{-1})^c
        ExpVec inv(e.size()), shift(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            inv[i] = -e[i];
            shift[i] = static_cast<int>(e[i] * c);
        }
        TruncSeries s = one_minus_pow_series(ctx, inv, c);
        return s.shifted(shift, Rat(c % 2 == 0 ? 1 : -1));
    }
    // expansion about zero: sum_k (-1)^k C(c,k) m^k
    TruncSeries s(ctx);
    ExpVec me(e.size(), 0);
    long k = 0;
    while (true) {
        if (!s.in_window(me) && k > 0) break;
        Rat coeff = Rat::binom(c, k);
        if (k % 2 != 0) coeff = -coeff;
        s.add_term(me, coeff);
        if (c > 0 && k == c) break;
        ++k;
        for (std::size_t i = 0; i < e.size(); ++i) me[i] = static_cast<int>(e[i] * k);
    }
    return s;
}

VirtualChar lambda_i(const VirtualChar& a, int i) {
    require_integer_coeffs(a);
    if (i < 0) throw std::invalid_argument("lambda_i: negative i");
    // coefficients of w^0..w^i of prod (1 - w m)^{c_m}
    std::vector<TruncSeries> poly(static_cast<std::size_t>(i) + 1, TruncSeries(a.ctx()));
    poly[0] = TruncSeries::constant(a.ctx(), Rat(1));
    for (const auto& [e, cr] : a.terms()) {
        long c = cr.to_long();
        // factor coefficients: [w^k](1 - w m)^c = (-1)^k C(c,k) m^k
        std::vector<TruncSeries> fac(static_cast<std::size_t>(i) + 1, TruncSeries(a.ctx()));
        ExpVec me(e.size(), 0);
        for (int k = 0; k <= i; ++k) {
            Rat coeff = Rat::binom(c, k);
            if (k % 2 != 0) coeff = -coeff;
            fac[static_cast<std::size_t>(k)] = TruncSeries::monomial(a.ctx(), me, coeff);
            for (std::size_t j = 0; j < e.size(); ++j) me[j] += e[j];
        }
        std::vector<TruncSeries> next(static_cast<std::size_t>(i) + 1, TruncSeries(a.ctx()));
        for (int x = 0; x <= i; ++x)
            for (int y = 0; x + y <= i; ++y)
                next[static_cast<std::size_t>(x + y)] +=
                    poly[static_cast<std::size_t>(x)] * fac[static_cast<std::size_t>(y)];
        poly = std::move(next);
    }
    TruncSeries r = poly[static_cast<std::size_t>(i)];
    return i % 2 == 0 ? r : -r;
}

TruncSeries lambda_eval_series(const VirtualChar& a) {
    require_integer_coeffs(a);
    Rat c0 = a.constant_coeff();
    if (c0.sign() < 0) throw PoleAtOne("lambda(A): dim_0(A) < 0, pole at w=1");
    if (c0.sign() > 0) return TruncSeries(a.ctx()); // (1-1)^{c0} = 0
    TruncSeries r = TruncSeries::constant(a.ctx(), Rat(1));
    for (const auto& [e, c] : a.terms()) r *= one_minus_pow_series(a.ctx(), e, c.to_long());
    return r;
}

LambdaFactored lambda_eval_factored(const VirtualChar& a, std::string_view var) {
    require_integer_coeffs(a);
    int vi = a.ctx()->index(var);
    if (vi < 0) throw std::invalid_argument("lambda_eval_factored: unknown variable");
    LambdaFactored out;
    Rat c0 = a.constant_coeff();
    if (c0.sign() < 0) throw PoleAtOne("lambda(A): dim_0(A) < 0, pole at w=1");
    if (c0.sign() > 0) {
        out.zero = true;
        return out;
    }
    for (const auto& [e, c] : a.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (static_cast<int>(i) != vi && e[i] != 0)
                throw std::invalid_argument("lambda_eval_factored: character not single-variable");
        out.fc *= FactoredChar::one_minus_pow(e[static_cast<std::size_t>(vi)], c.to_long());
    }
    return out;
}

TruncSeries lambda_w_series(const VirtualChar& a, const Ctx& wctx, std::string_view wvar) {
    require_integer_coeffs(a);
    int wi = wctx->index(wvar);
    if (wi < 0) throw std::invalid_argument("lambda_w_series: context lacks w variable");
    // map the character's exponents into wctx and prepend a w-power of 1
    TruncSeries r = TruncSeries::constant(wctx, Rat(1));
    const auto& avars = a.ctx()->vars;
    for (const auto& [e, c] : a.terms()) {
        ExpVec we(wctx->size(), 0);
        we[static_cast<std::size_t>(wi)] = 1;
        for (std::size_t i = 0; i < avars.size(); ++i) {
            if (e[i] == 0) continue;
            int j = wctx->index(avars[i]);
            if (j < 0) throw std::invalid_argument("lambda_w_series: variable missing from context");
            we[static_cast<std::size_t>(j)] = e[i];
        }
        r *= one_minus_pow_series(wctx, we, c.to_long());
    }
    return r;
}

TruncSeries eval_hom(const SymFn<Rat>& f, const VirtualChar& a) {
    SymFn<Rat> fp = convert(f, Basis::p);
    TruncSeries out(a.ctx());
    for (const auto& [lam, c] : fp.coeffs) {
        TruncSeries prod = TruncSeries::constant(a.ctx(), c);
        for (int part : lam.parts()) prod *= a.exponents_scaled(part);
        out += prod;
    }
    return out;
}

TruncSeries eval_hom_via_lambda(const SymFn<Rat>& f, const VirtualChar& a) {
    SymFn<Rat> fe = convert(f, Basis::e);
    TruncSeries out(a.ctx());
    for (const auto& [lam, c] : fe.coeffs) {
        TruncSeries prod = TruncSeries::constant(a.ctx(), c);
        for (int part : lam.parts()) prod *= lambda_i(a, part);
        out += prod;
    }
    return out;
}

SymFn<TruncSeries> omega_component(const VirtualChar& a, int k) {
    if (k < 0) throw std::invalid_argument("omega_component: negative degree");
    SymFn<TruncSeries> out(Basis::h);
    for (const auto& mu : partitions_of(k)) {
        TruncSeries c = eval_hom(sym_gen(Basis::m, mu), a);
        out.add_term(mu, c);
    }
    return out;
}

PolyFrac eps_ut(const SymFn<PolyFrac>& f) {
    SymFn<PolyFrac> fp = convert(f, Basis::p);
    PolyFrac out;
    for (const auto& [lam, c] : fp.coeffs) {
        PolyFrac prod = c;
        for (int j : lam.parts()) {
            PolyFrac factor(MPoly::constant(Rat(1)) - MPoly::u(j),
                            MPoly::constant(Rat(1)) - MPoly::t(j));
            prod *= factor;
        }
        out += prod;
    }
    return out;
}

PolyFrac eps_ut(const SymFn<Rat>& f) {
    SymFn<PolyFrac> g(f.basis);
    for (const auto& [lam, c] : f.coeffs) g.add_term(lam, PolyFrac(c));
    return eps_ut(g);
}

PolyFrac eps_ut_at_u(const PolyFrac& v, int n) { return v.subst_u_to_tpow(n); }

VirtualChar vchar_zero(const Ctx& ctx) { return VirtualChar(ctx); }

VirtualChar vchar_un(const Ctx& ctx, int n, std::string_view var) {
    VirtualChar a(ctx);
    for (int i = 0; i < n; ++i) a += TruncSeries::var_pow(ctx, var, i);
    return a;
}

VirtualChar vchar_geom(const Ctx& ctx, std::string_view var) {
    int vi = ctx->index(var);
    if (vi < 0) throw std::invalid_argument("vchar_geom: unknown variable");
    VirtualChar a(ctx);
    for (int i = 1; i <= ctx->cap[static_cast<std::size_t>(vi)]; ++i)
        a += TruncSeries::var_pow(ctx, var, i);
    return a;
}

} // namespace macloc
