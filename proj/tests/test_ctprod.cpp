// Constant-term inner products: the weight function Delta_M, the truncated
// kernel, and the pairing (f,g)'_M, including the parallel polynomial product.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "macloc/ctprod.hpp"

#include <random>

using namespace macloc;

namespace {

std::mt19937 rng(20240817u);

KernelSpec hall_spec(int n, const Ctx& ctx) {
    return KernelSpec{TruncSeries::constant(ctx, Rat(1)), n};
}

TruncSeries rand_coeff(const Ctx& ctx) {
    std::uniform_int_distribution<long> cd(-3, 3);
    std::uniform_int_distribution<int> ed(0, 2);
    TruncSeries s(ctx);
    for (int k = 0; k < 2; ++k) {
        ExpVec e(ctx->size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ed(rng);
        s.add_term(e, Rat(cd(rng)));
    }
    return s;
}

XPoly rand_xpoly(int n, const Ctx& ctx) {
    XPoly p(n, ctx);
    std::uniform_int_distribution<int> ed(-2, 2);
    for (int k = 0; k < 4; ++k) {
        ExpVec e(static_cast<std::size_t>(n));
        for (auto& x : e) x = ed(rng);
        p.add_term(e, rand_coeff(ctx));
    }
    return p;
}

} // namespace

TEST_CASE("XPoly parallel product matches the serial reference") {
    Ctx ctx = ctx_qt(3, 3);
    for (int iter = 0; iter < 20; ++iter) {
        XPoly a = rand_xpoly(3, ctx);
        XPoly b = rand_xpoly(3, ctx);
        CHECK(a * b == XPoly::mul_serial(a, b));
    }
}

TEST_CASE("XPoly ring structure") {
    Ctx ctx = ctx_qt(3, 3);
    XPoly one = XPoly::one(2, ctx);
    for (int iter = 0; iter < 10; ++iter) {
        XPoly a = rand_xpoly(2, ctx);
        XPoly b = rand_xpoly(2, ctx);
        CHECK(a * b == b * a);
        CHECK(a * one == a);
        CHECK(a.dual().dual() == a);
        CHECK(a.shifted_all(2).shifted_all(-2) == a);
    }
}

TEST_CASE("const_term divides by n!") {
    Ctx ctx = ctx_qt(2, 2);
    CHECK(const_term(XPoly::one(3, ctx)) ==
          TruncSeries::constant(ctx, Rat(1, 6)));
    // a pure off-diagonal monomial has no constant term
    XPoly m = XPoly::monomial(2, ctx, {1, -1}, TruncSeries::constant(ctx, Rat(1)));
    CHECK(const_term(m).is_zero());
}

TEST_CASE("xpoly_h is the complete homogeneous polynomial") {
    Ctx ctx = ctx_qt(1, 1);
    XPoly h2 = xpoly_h(2, 2, ctx);
    CHECK(h2.term_count() == 3);
    CHECK(h2.coeff({2, 0}) == TruncSeries::constant(ctx, Rat(1)));
    CHECK(h2.coeff({1, 1}) == TruncSeries::constant(ctx, Rat(1)));
    CHECK(xpoly_h(0, 2, ctx) == XPoly::one(2, ctx));
    CHECK(xpoly_h(3, 2, ctx).term_count() == 4);
}

TEST_CASE("macdonald_kernel is the truncated (1-t)(1+q+...+q^Dq)") {
    Ctx ctx = ctx_qt(3, 3);
    VirtualChar M = macdonald_kernel(ctx);
    CHECK(M.constant_coeff() == Rat(1));
    CHECK(M.coeff({1, 0}) == Rat(1));
    CHECK(M.coeff({3, 0}) == Rat(1));
    CHECK(M.coeff({0, 1}) == Rat(-1));
    CHECK(M.coeff({2, 1}) == Rat(-1));
    CHECK(dim_total(M) == 0);
    CHECK_THROWS(macdonald_kernel(ctx_z(4)));
}

TEST_CASE("Delta for the Hall kernel: explicit small cases") {
    Ctx ctx = ctx_qt(2, 2);
    // n = 2: (1 - x1/x2)(1 - x2/x1) = 2 - x1/x2 - x2/x1
    const XPoly& d2 = delta_M(hall_spec(2, ctx), ctx);
    CHECK(d2.coeff({0, 0}) == TruncSeries::constant(ctx, Rat(2)));
    CHECK(d2.coeff({1, -1}) == TruncSeries::constant(ctx, Rat(-1)));
    CHECK(d2.coeff({-1, 1}) == TruncSeries::constant(ctx, Rat(-1)));
    CHECK(d2.term_count() == 3);

    // constant term of Delta / n! is 1 (Dyson's identity at a = (1,..,1))
    for (int n = 2; n <= 4; ++n) {
        TruncSeries ct = const_term(delta_M(hall_spec(n, ctx), ctx));
        CHECK(ct == TruncSeries::constant(ctx, Rat(1)));
    }

    // kernel must have constant term 1
    KernelSpec bad{TruncSeries::var_pow(ctx, "q", 1), 2};
    CHECK_THROWS(delta_M(bad, ctx));
}

TEST_CASE("Hall inner product is the p-basis orthogonality for deg <= n") {
    Ctx ctx = ctx_qt(2, 2);
    KernelSpec spec = hall_spec(3, ctx);
    // <p_lam, p_mu> = delta z_lam for |lam| = |mu| <= n = 3
    for (int d = 1; d <= 3; ++d) {
        auto ps = partitions_of(d);
        for (const Partition& lam : ps) {
            for (const Partition& mu : ps) {
                TruncSeries v = inner_product(sym_gen(Basis::p, lam),
                                              sym_gen(Basis::p, mu), spec, ctx);
                if (lam == mu)
                    CHECK(v == TruncSeries::constant(ctx, zee(lam)));
                else
                    CHECK(v.is_zero());
            }
        }
    }
}

TEST_CASE("inner_product_qt is symmetric and bilinear") {
    Ctx ctx = ctx_qt(4, 4, 4);
    SymFn<Rat> f = sym_gen(Basis::m, Partition({2}));
    SymFn<Rat> g = sym_gen(Basis::m, Partition({1, 1}));
    SymFn<Rat> h = sym_gen(Basis::e, Partition({2}));
    TruncSeries fg = inner_product_qt(f, g, 2, ctx);
    CHECK(fg == inner_product_qt(g, f, 2, ctx));
    CHECK(inner_product_qt(f + g, convert(h, Basis::m), 2, ctx) ==
          inner_product_qt(f, convert(h, Basis::m), 2, ctx) +
              inner_product_qt(g, convert(h, Basis::m), 2, ctx));
    CHECK(inner_product_qt(f.scaled(Rat(3)), g, 2, ctx) == fg.scaled(Rat(3)));
}

TEST_CASE("pair_omega default grading shortcut agrees with the widened sum") {
    Ctx ctx = ctx_qt(3, 3, 3);
    KernelSpec spec{macdonald_kernel(ctx), 2};
    SymFn<Rat> f = sym_gen(Basis::m, Partition({2})) +
                   sym_gen(Basis::m, Partition({1})).scaled(Rat(2)) + sym_one();
    CHECK(pair_omega(f, spec, ctx, false) == pair_omega(f, spec, ctx, true));

    // (1, Omega)'_M = constant term of Delta_M / n!; for the Hall kernel that is 1
    CHECK(pair_omega(sym_one(), hall_spec(2, ctx), ctx) ==
          TruncSeries::constant(ctx, Rat(1)));
}
