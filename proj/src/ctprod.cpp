#include "macloc/ctprod.hpp"

#include <mutex>
#include <sstream>

namespace macloc {

VirtualChar macdonald_kernel(const Ctx& ctx) {
    int qi = ctx->index("q");
    if (qi < 0 || ctx->index("t") < 0)
        throw std::invalid_argument("macdonald_kernel: context must contain q and t");
    int Dq = ctx->cap[static_cast<std::size_t>(qi)];
    VirtualChar one_minus_t = TruncSeries::constant(ctx, Rat(1)) - TruncSeries::var_pow(ctx, "t", 1);
    VirtualChar geo(ctx);
    for (int k = 0; k <= Dq; ++k) geo += TruncSeries::var_pow(ctx, "q", k);
    return one_minus_t * geo;
}

namespace {

std::string ctx_key(const Ctx& c) {
    std::ostringstream os;
    for (std::size_t i = 0; i < c->size(); ++i)
        os << c->vars[i] << ":" << c->low[i] << ".." << c->cap[i] << ";";
    os << "T" << c->total_cap;
    return os.str();
}

std::string series_key(const TruncSeries& s) {
    std::ostringstream os;
    for (const auto& [e, v] : s.terms()) {
        for (int x : e) os << x << ",";
        os << "=" << v.str() << ";";
    }
    return os.str();
}

} // namespace

const XPoly& delta_M(const KernelSpec& spec, const Ctx& ctx) {
    static std::map<std::string, XPoly> cache;
    static std::mutex mtx;
    if (!(spec.M.constant_coeff() == Rat(1)))
        throw std::invalid_argument("delta_M: kernel must have constant term 1");
    std::ostringstream key;
    key << spec.n << "|" << ctx_key(ctx) << "|" << series_key(spec.M);
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key.str());
    if (it != cache.end()) return it->second;

    std::map<ExpVec, VirtualChar> xchar;
    for (int i = 0; i < spec.n; ++i) {
        for (int j = 0; j < spec.n; ++j) {
            if (i == j) continue;
            ExpVec e(static_cast<std::size_t>(spec.n), 0);
            e[static_cast<std::size_t>(i)] = 1;
            e[static_cast<std::size_t>(j)] = -1;
            xchar.emplace(std::move(e), spec.M);
        }
    }
    XPoly d = lambda_xchar(xchar, spec.n, ctx);
    return cache.emplace(key.str(), std::move(d)).first->second;
}

TruncSeries pair_omega(const SymFn<Rat>& f, const KernelSpec& spec, const Ctx& ctx,
                       bool widened) {
    TruncSeries out(ctx);
    if (f.is_zero()) return out;
    if (widened) {
        XPoly xf = xpoly_from_symfn(f, spec.n, ctx);
        const XPoly& dm = delta_M(spec, ctx);
        for (int k = 0; k <= f.max_degree() + 3; ++k)
            out += const_term(xf * xpoly_h(k, spec.n, ctx).dual() * dm);
        return out;
    }
    // split f into homogeneous components; each pairs only against h_deg
    std::map<int, SymFn<Rat>> comps;
    for (const auto& [lam, c] : f.coeffs) {
        auto [it, fresh] = comps.emplace(lam.size(), SymFn<Rat>(f.basis));
        it->second.add_term(lam, c);
    }
    for (const auto& [d, fd] : comps)
        out += pair_omega_xpoly(xpoly_from_symfn(fd, spec.n, ctx), d, spec, ctx);
    return out;
}

TruncSeries pair_omega_xpoly(const XPoly& xf, int degree, const KernelSpec& spec,
                             const Ctx& ctx) {
    return const_term(xf * xpoly_h(degree, spec.n, ctx).dual() * delta_M(spec, ctx));
}

} // namespace macloc
