#include "macloc/grassloc.hpp"

#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace macloc {

TruncSeries remap(const TruncSeries& s, const Ctx& target) {
    if (!s.ctx()) return TruncSeries(target); // default-constructed series is zero
    const auto& vars = s.ctx()->vars;
    std::vector<int> tix(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) tix[i] = target->index(vars[i]);
    TruncSeries out(target);
    ExpVec e(target->size());
    for (const auto& [se, v] : s.terms()) {
        std::fill(e.begin(), e.end(), 0);
        bool ok = true;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (se[i] == 0) continue;
            if (tix[i] < 0) {
                ok = false;
                break;
            }
            e[static_cast<std::size_t>(tix[i])] = se[i];
        }
        if (!ok) throw std::invalid_argument("remap: variable missing from target context");
        out.add_term(e, v);
    }
    return out;
}

std::vector<int> weight_support(const VirtualChar& Z) {
    int zi = Z.ctx()->index("z");
    if (zi < 0) throw std::invalid_argument("weight_support: character must live in z");
    std::vector<int> ws;
    for (const auto& [e, c] : Z.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (static_cast<int>(i) != zi && e[i] != 0)
                throw std::invalid_argument("weight_support: character not single-variable");
        if (!(c == Rat(1)))
            throw std::invalid_argument("weight_support: repeated weight, fixed points not isolated");
        ws.push_back(e[static_cast<std::size_t>(zi)]);
    }
    std::sort(ws.begin(), ws.end());
    return ws;
}

std::vector<FixedPoint> fixed_points(const VirtualChar& Z, int n) {
    std::vector<int> ws = weight_support(Z);
    int d = static_cast<int>(ws.size());
    if (n > d) throw std::invalid_argument("fixed_points: n exceeds dim Z");
    std::vector<FixedPoint> out;
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        FixedPoint p;
        for (int i : idx) p.S.push_back(ws[static_cast<std::size_t>(i)]);
        out.push_back(std::move(p));
        int i = n - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == d - n + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

VirtualChar cotangent_char(const VirtualChar& Z, const FixedPoint& p, const Ctx& ctx) {
    std::vector<int> ws = weight_support(Z);
    VirtualChar t(ctx);
    for (int v : ws) {
        if (std::find(p.S.begin(), p.S.end(), v) != p.S.end()) continue;
        for (int u : p.S) t += TruncSeries::var_pow(ctx, "z", v - u);
    }
    return t;
}

namespace {

VirtualChar char_u(const std::vector<int>& S, const Ctx& ctx) {
    VirtualChar u(ctx);
    for (int a : S) u += TruncSeries::var_pow(ctx, "z", a);
    return u;
}

// Internal working context: caps widened so monomial shifts (twists, f(U))
// stay exact, with w first when carried.
Ctx work_ctx(const Ctx& ctx, int pad, bool w_mode) {
    SmallVarSet s;
    if (w_mode) {
        int wi = ctx->index("w");
        if (wi < 0) throw std::invalid_argument("grassloc: w-mode context lacks w");
        s.add("w", ctx->cap[static_cast<std::size_t>(wi)], 0);
    }
    for (std::size_t i = 0; i < ctx->size(); ++i) {
        if (ctx->vars[i] == "w") continue;
        s.add(ctx->vars[i], ctx->cap[i] + pad, ctx->low[i] - pad);
    }
    if (ctx->total_cap >= 0) s.total_cap = ctx->total_cap + pad;
    return make_ctx(std::move(s));
}

int summand_pad(const BundleData& data, const VirtualChar& Z, int n) {
    std::vector<int> ws = weight_support(Z);
    int k = 0;
    for (int v : ws) k = std::max(k, std::abs(v));
    int m = std::abs(data.m);
    return (m + data.f.max_degree()) * k * n + 2;
}

TruncSeries chi_loc_summand(const BundleData& data, const VirtualChar& Z, int n,
                            const Ctx& wide, const FixedPoint& p, bool w_mode) {
    VirtualChar U = char_u(p.S, wide);
    VirtualChar Ustar = dualize(U);
    VirtualChar V = remap(Z, wide) - U;
    VirtualChar cot = Ustar * V;

    LambdaFactored lam_cot = lambda_eval_factored(cot);
    if (lam_cot.zero)
        throw std::domain_error("chi_loc: lambda(T*_U X) vanishes, fixed point not isolated");
    TruncSeries summand = lam_cot.fc.inverse().to_series(wide);

    // e_n(U)^m is a pure monomial shift
    int shift = 0;
    for (int a : p.S) shift += a;
    shift *= data.m;
    ExpVec d(wide->size(), 0);
    d[static_cast<std::size_t>(wide->index("z"))] = shift;
    summand = summand.shifted(d);

    summand *= eval_hom(data.f, U);

    VirtualChar E = remap(data.A, wide) * U + remap(data.B, wide) * Ustar +
                    remap(data.C, wide) * U * Ustar;
    if (w_mode) {
        summand *= lambda_w_series(E, wide);
    } else {
        Rat dim0 = E.constant_coeff();
        if (dim0.sign() < 0) {
            std::ostringstream os;
            os << "chi_loc: lambda(w E_U) has a pole at w=1 at fixed point U = {";
            for (std::size_t i = 0; i < p.S.size(); ++i) os << (i ? "," : "") << p.S[i];
            os << "}";
            throw PoleAtOne(os.str());
        }
        summand *= lambda_eval_series(E);
    }
    return summand;
}

} // namespace

TruncSeries chi_loc_serial(const BundleData& data, const VirtualChar& Z, int n, const Ctx& ctx,
                           bool w_mode) {
    Ctx wide = work_ctx(ctx, summand_pad(data, Z, n), w_mode);
    TruncSeries acc(wide);
    for (const auto& p : fixed_points(Z, n))
        acc += chi_loc_summand(data, Z, n, wide, p, w_mode);
    return remap(acc, ctx);
}

TruncSeries chi_loc(const BundleData& data, const VirtualChar& Z, int n, const Ctx& ctx,
                    bool w_mode) {
#ifdef _OPENMP
    Ctx wide = work_ctx(ctx, summand_pad(data, Z, n), w_mode);
    auto pts = fixed_points(Z, n);
    std::vector<TruncSeries> parts(pts.size());
    // first summand computed inline to surface exceptions deterministically
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(pts.size()); ++i) {
        try {
            parts[static_cast<std::size_t>(i)] =
                chi_loc_summand(data, Z, n, wide, pts[static_cast<std::size_t>(i)], w_mode);
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    TruncSeries acc(wide);
    for (const auto& s : parts) acc += s;
    return remap(acc, ctx);
#else
    return chi_loc_serial(data, Z, n, ctx, w_mode);
#endif
}

TruncSeries chi0_ct(const BundleData& data, const VirtualChar& Z, int n, const Ctx& ctx,
                    bool w_mode) {
    Ctx wide = work_ctx(ctx, summand_pad(data, Z, n), w_mode);
    std::vector<int> ws = weight_support(Z);

    // G = e_n(x)^m f(x) lambda(w E_x) Delta(x)
    XPoly G = xpoly_from_symfn(data.f, n, wide).shifted_all(data.m);

    std::map<ExpVec, VirtualChar> echar;
    VirtualChar A = remap(data.A, wide), B = remap(data.B, wide), C = remap(data.C, wide);
    auto add_char = [&](ExpVec e, const VirtualChar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = echar.emplace(std::move(e), c);
        if (!fresh) it->second += c;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            ExpVec e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(i)] += 1;
            e[static_cast<std::size_t>(j)] -= 1;
            add_char(e, C); // includes the i == j constant component C*n
        }
        ExpVec ei(static_cast<std::size_t>(n), 0);
        ei[static_cast<std::size_t>(i)] = 1;
        add_char(ei, A);
        ExpVec emi(static_cast<std::size_t>(n), 0);
        emi[static_cast<std::size_t>(i)] = -1;
        add_char(emi, B);
    }
    if (w_mode) {
        TruncSeries w1 = TruncSeries::var_pow(wide, "w", 1);
        for (auto& [e, c] : echar) c = c * w1;
    }
    if (!echar.empty()) G *= lambda_xchar(echar, n, wide);

    // Delta(x) = prod_{i != j} (1 - x_i/x_j)
    std::map<ExpVec, VirtualChar> dchar;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            ExpVec e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(i)] = 1;
            e[static_cast<std::size_t>(j)] = -1;
            dchar.emplace(std::move(e), TruncSeries::constant(wide, Rat(1)));
        }
    }
    G *= lambda_xchar(dchar, n, wide);

    // lambda(x* Z)^{-1} = prod_{i,a} (1 - z^a x_i^{-1})^{-1}, expanded about
    // x = infinity just far enough to reach the constant term
    for (int i = 0; i < n; ++i) {
        int bound = G.max_positive_degree(i);
        XPoly H(n, wide);
        std::vector<TruncSeries> hcoef(static_cast<std::size_t>(bound) + 1, TruncSeries(wide));
        hcoef[0] = TruncSeries::constant(wide, Rat(1));
        for (int a : ws) {
            std::vector<TruncSeries> next(static_cast<std::size_t>(bound) + 1, TruncSeries(wide));
            for (int d = 0; d <= bound; ++d) {
                if (hcoef[static_cast<std::size_t>(d)].is_zero()) continue;
                for (int r = 0; d + r <= bound; ++r) {
                    TruncSeries za = TruncSeries::var_pow(wide, "z", a * r);
                    next[static_cast<std::size_t>(d + r)] +=
                        hcoef[static_cast<std::size_t>(d)] * za;
                }
            }
            hcoef = std::move(next);
        }
        for (int d = 0; d <= bound; ++d) {
            if (hcoef[static_cast<std::size_t>(d)].is_zero()) continue;
            ExpVec e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(i)] = -d;
            H.add_term(std::move(e), hcoef[static_cast<std::size_t>(d)]);
        }
        G *= H;
    }
    return remap(const_term(G), ctx);
}

ConditionReport bundle_conditions(const BundleData& data, const VirtualChar& Z) {
    ConditionReport rep;
    auto zexp = [](const VirtualChar& c, const ExpVec& e) {
        int zi = c.ctx()->index("z");
        return zi < 0 ? 0 : e[static_cast<std::size_t>(zi)];
    };
    for (const auto& [e, v] : data.A.terms()) {
        if (v.sign() < 0) {
            rep.a_ok = false;
            rep.failures.push_back("A has a negative coefficient at z^" +
                                   std::to_string(zexp(data.A, e)));
        }
    }
    for (const auto& [e, v] : data.B.terms()) {
        if (v.sign() < 0) {
            rep.b_ok = false;
            rep.failures.push_back("B has a negative coefficient at z^" +
                                   std::to_string(zexp(data.B, e)));
        }
    }
    for (const auto& [e, v] : data.C.terms()) {
        int d = zexp(data.C, e);
        if (d <= 0) {
            rep.c_ok = false;
            rep.failures.push_back("C has a term at z^" + std::to_string(d) +
                                   " (must lie in (z)Z[z])");
        }
    }
    // (d): for weights a with dim_a(Z) > 0 and b with dim_b(C) < 0:
    // dim_{a+b}(B) >= dim_a(Z) - dim_b(C) - 1
    if (rep.c_ok) {
        for (const auto& [ea, va] : Z.terms()) {
            long dimZ = va.to_long();
            if (dimZ <= 0) continue;
            int a = zexp(Z, ea);
            for (const auto& [eb, vb] : data.C.terms()) {
                long dimC = vb.to_long();
                if (dimC >= 0) continue;
                int b = zexp(data.C, eb);
                long dimB = 0;
                try {
                    dimB = dim_at(data.B, "z", a + b);
                } catch (const std::out_of_range&) {
                    rep.failures.push_back("condition (d) at a+b = " + std::to_string(a + b) +
                                           " falls outside the B window (recorded, not decided)");
                    continue;
                }
                if (dimB < dimZ - dimC - 1) {
                    rep.d_ok = false;
                    rep.failures.push_back(
                        "condition (d) fails at a=" + std::to_string(a) + ", b=" +
                        std::to_string(b) + ": dim_{a+b}(B)=" + std::to_string(dimB) + " < " +
                        std::to_string(dimZ - dimC - 1));
                }
            }
        }
    }
    return rep;
}

GapReport gap_cm(const BundleData& data, const VirtualChar& Z, int n, const Ctx& ctx) {
    GapReport rep;
    TruncSeries c0 = chi0_ct(data, Z, n, ctx, /*w_mode=*/true);
    TruncSeries cl = chi_loc(data, Z, n, ctx, /*w_mode=*/true);
    rep.gap = cl - c0;
    int wi = ctx->index("w");
    int zi = ctx->index("z");
    if (wi < 0 || zi < 0) throw std::invalid_argument("gap_cm: context must contain z and w");
    int W = ctx->cap[static_cast<std::size_t>(wi)];
    rep.min_z_exp_per_w.assign(static_cast<std::size_t>(W) + 1, std::nullopt);
    for (const auto& [e, v] : rep.gap.terms()) {
        int i = e[static_cast<std::size_t>(wi)];
        int zdeg = e[static_cast<std::size_t>(zi)];
        auto& slot = rep.min_z_exp_per_w[static_cast<std::size_t>(i)];
        if (!slot || zdeg < *slot) slot = zdeg;
    }
    return rep;
}

TruncSeries limit_pairing_rhs(const SymFn<Rat>& f, const VirtualChar& M, int n, const Ctx& ctx) {
    int pad = 2 * n + f.max_degree() * n + 4;
    Ctx wide = work_ctx(ctx, pad, false);
    VirtualChar Mw = remap(M, wide);
    VirtualChar Un = vchar_un(wide, n);
    VirtualChar E = Mw * Un * dualize(Un) - dualize(Un);
    Rat dim0 = E.constant_coeff();
    if (!dim0.is_zero())
        throw std::invalid_argument("limit_pairing_rhs: dim_0(E) = " + dim0.str() + ", must be 0");
    VirtualChar oneMinusM = TruncSeries::constant(wide, Rat(1)) - Mw;
    TruncSeries r = lambda_eval_series(oneMinusM).pow(n);
    r *= eval_hom(f, Un);
    LambdaFactored lamE = lambda_eval_factored(E);
    r *= lamE.zero ? TruncSeries(wide) : lamE.fc.to_series(wide);
    return remap(r, ctx);
}

} // namespace macloc
