// Torus-equivariant geometry of the Grassmannian of quotients: fixed points,
// localized Euler characteristics, section characters, and the gap series.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "macloc/grassloc.hpp"

using namespace macloc;

namespace {

VirtualChar z_poly(const Ctx& ctx, int k) { // 1 + z + ... + z^k
    VirtualChar v(ctx);
    for (int a = 0; a <= k; ++a) v += TruncSeries::var_pow(ctx, "z", a);
    return v;
}

Ctx zw_ctx(int zcap, int wcap) {
    SmallVarSet s;
    s.add("w", wcap).add("z", zcap, -zcap);
    return make_ctx(s);
}

} // namespace

TEST_CASE("weight_support and fixed_points") {
    Ctx zc = ctx_z(8, -8);
    VirtualChar Z = z_poly(zc, 3);
    CHECK(weight_support(Z) == std::vector<int>({0, 1, 2, 3}));

    auto fps = fixed_points(Z, 2);
    CHECK(fps.size() == 6); // C(4,2)
    CHECK(fps.front().S == std::vector<int>({0, 1}));
    CHECK(fps.back().S == std::vector<int>({2, 3}));

    // repeated weight violates the isolated-fixed-point hypothesis
    VirtualChar rep = z_poly(zc, 1) + TruncSeries::var_pow(zc, "z", 1);
    CHECK_THROWS(weight_support(rep));
    // non-0/1 coefficient likewise
    VirtualChar neg = z_poly(zc, 1) - TruncSeries::var_pow(zc, "z", 2);
    CHECK_THROWS(weight_support(neg));
}

TEST_CASE("cotangent character at a fixed point is U* V") {
    Ctx zc = ctx_z(8, -8);
    VirtualChar Z = z_poly(zc, 2); // weights 0,1,2
    // at S = {0,2}: U = 1 + z^2, V = z, so U*V = z + z^{-1}
    FixedPoint p{{0, 2}};
    VirtualChar ct = cotangent_char(Z, p, zc);
    CHECK(ct.coeff({1}) == Rat(1));
    CHECK(ct.coeff({-1}) == Rat(1));
    CHECK(dim_total(ct) == 2);
}

TEST_CASE("projective line: chi matches the classical section counts") {
    Ctx zc = ctx_z(12, -12);
    VirtualChar Z = z_poly(zc, 1); // P^1, weights {0,1}
    for (int m = 0; m <= 4; ++m) {
        BundleData data;
        data.m = m;
        TruncSeries chi = chi_loc(data, Z, 1, zc);
        TruncSeries sections = chi0_ct(data, Z, 1, zc);
        CHECK(chi == z_poly(zc, m)); // 1 + z + ... + z^m
        CHECK(sections == chi);
    }
    // twist -1: no cohomology at all
    {
        BundleData data;
        data.m = -1;
        CHECK(chi_loc(data, Z, 1, zc).is_zero());
        CHECK(chi0_ct(data, Z, 1, zc).is_zero());
    }
    // twist -2: chi = -z^{-1} (higher cohomology), no sections
    {
        BundleData data;
        data.m = -2;
        CHECK(chi_loc(data, Z, 1, zc) ==
              TruncSeries::var_pow(zc, "z", -1, Rat(-1)));
        CHECK(chi0_ct(data, Z, 1, zc).is_zero());
        // the gap series is computed per w-power; with no bundle inserted a
        // w-cap of zero suffices
        Ctx wc = zw_ctx(12, 0);
        GapReport rep = gap_cm(data, remap(Z, wc), 1, wc);
        CHECK(rep.gap == TruncSeries::monomial(wc, {0, -1}, Rat(-1)));
        REQUIRE(!rep.min_z_exp_per_w.empty());
        CHECK(rep.min_z_exp_per_w[0] == -1);
    }
}

TEST_CASE("parallel and serial localization sums agree") {
    Ctx zc = ctx_z(10, -10);
    VirtualChar Z = z_poly(zc, 4);
    BundleData data;
    data.m = 2;
    data.f = convert(sym_gen(Basis::e, Partition({1})), Basis::m);
    CHECK(chi_loc(data, Z, 2, zc) == chi_loc_serial(data, Z, 2, zc));

    Ctx wc = zw_ctx(8, 2);
    BundleData wd;
    wd.m = 1;
    wd.B = vchar_geom(ctx_z(8, -8));
    wd.C = TruncSeries::var_pow(ctx_z(8, -8), "z", 1, Rat(-1));
    CHECK(chi_loc(wd, remap(z_poly(ctx_z(8, -8), 3), wc), 2, wc, true) ==
          chi_loc_serial(wd, remap(z_poly(ctx_z(8, -8), 3), wc), 2, wc, true));
}

TEST_CASE("localization equals the section character for ample twists, n = 2") {
    Ctx zc = ctx_z(10, -10);
    VirtualChar Z = z_poly(zc, 3); // k = 3
    for (int m = 0; m <= 3; ++m) {
        BundleData data;
        data.m = m;
        TruncSeries chi = chi_loc(data, Z, 2, zc);
        CHECK(chi == chi0_ct(data, Z, 2, zc));
        if (m == 1) {
            // degree count: chi(Gr(2, Z), det^1) = dim of the Pluecker embedding
            // target sections = C(4,2) = 6 weights, counted with z-grading
            Rat total;
            for (const auto& [e, v] : chi.terms()) total += v;
            CHECK(total == Rat(6));
        }
    }
}

TEST_CASE("inserted symmetric function multiplies sections correctly") {
    Ctx zc = ctx_z(10, -10);
    VirtualChar Z = z_poly(zc, 1);
    // on P^1 with U of rank 1, inserting e_1(U) = u shifts the twist by 1
    BundleData f1;
    f1.m = 1;
    f1.f = convert(sym_gen(Basis::e, Partition({1})), Basis::m);
    BundleData plain;
    plain.m = 2;
    CHECK(chi_loc(f1, Z, 1, zc) == chi_loc(plain, Z, 1, zc));
    CHECK(chi0_ct(f1, Z, 1, zc) == chi0_ct(plain, Z, 1, zc));
}

TEST_CASE("pole at w = 1 is reported with the offending fixed point") {
    Ctx zc = ctx_z(8, -8);
    VirtualChar Z = z_poly(zc, 1);
    BundleData data;
    // E_U = -U* U = -1 at each fixed point: dim_0 < 0, pole at w = 1
    data.C = TruncSeries::constant(zc, Rat(-1));
    CHECK_THROWS_AS(chi_loc(data, Z, 1, zc), PoleAtOne);
    // in w-mode the same data is finite
    Ctx wc = zw_ctx(8, 2);
    BundleData wd;
    wd.C = TruncSeries::constant(ctx_z(8, -8), Rat(-1));
    CHECK_FALSE(chi_loc(wd, remap(Z, wc), 1, wc, true).is_zero());
}

TEST_CASE("gap series in w-mode: visible gap at negative twists, growth with m") {
    Ctx zc8 = ctx_z(12, -12);
    Ctx wc = zw_ctx(12, 2);
    VirtualChar Z = remap(z_poly(zc8, 2), wc); // k = 2
    BundleData data;
    data.B = vchar_geom(zc8);
    data.C = TruncSeries::var_pow(zc8, "z", 1, Rat(-1));

    data.m = -3;
    GapReport r3 = gap_cm(data, Z, 1, wc);
    CHECK_FALSE(r3.gap.is_zero());
    data.m = -2;
    GapReport r2 = gap_cm(data, Z, 1, wc);
    // per w-power, the minimal z-exponent grows by at least k = 2 per unit m
    REQUIRE(r2.min_z_exp_per_w.size() == r3.min_z_exp_per_w.size());
    for (std::size_t i = 0; i < r2.min_z_exp_per_w.size(); ++i) {
        if (!r3.min_z_exp_per_w[i].has_value()) continue;
        if (!r2.min_z_exp_per_w[i].has_value()) continue; // slice emptied: fine
        CHECK(*r2.min_z_exp_per_w[i] >= *r3.min_z_exp_per_w[i] + 2);
    }
    // ample range: gap vanishes on the window
    data.m = 1;
    CHECK(gap_cm(data, Z, 1, wc).gap.is_zero());
}

TEST_CASE("bundle positivity and growth conditions") {
    Ctx zc = ctx_z(8, -8);
    VirtualChar Z = z_poly(zc, 2);
    BundleData good;
    good.B = vchar_geom(zc);
    good.C = TruncSeries::var_pow(zc, "z", 1, Rat(-1));
    ConditionReport rep = bundle_conditions(good, Z);
    CHECK(rep.all_ok());
    CHECK(rep.failures.empty());

    // A must have nonnegative coefficients; A = 1 is allowed
    BundleData okA = good;
    okA.A = TruncSeries::constant(zc, Rat(1));
    CHECK(bundle_conditions(okA, Z).a_ok);

    // a negative coefficient in A violates condition (a)
    BundleData badA = good;
    badA.A = TruncSeries::var_pow(zc, "z", 1, Rat(-1));
    ConditionReport repA = bundle_conditions(badA, Z);
    CHECK_FALSE(repA.a_ok);
    CHECK_FALSE(repA.failures.empty());

    // C with a constant term violates condition (c)
    BundleData badC = good;
    badC.C = TruncSeries::constant(zc, Rat(1));
    CHECK_FALSE(bundle_conditions(badC, Z).c_ok);

    // starving B of sections breaks the compensation condition (d)
    BundleData badD = good;
    badD.B = vchar_zero(zc);
    badD.C = TruncSeries::var_pow(zc, "z", 1, Rat(-2));
    CHECK_FALSE(bundle_conditions(badD, Z).d_ok);
}

TEST_CASE("limit-formula right-hand side") {
    Ctx zc = ctx_z(12, -12);
    TruncSeries one = TruncSeries::constant(zc, Rat(1));
    TruncSeries z = TruncSeries::var_pow(zc, "z", 1);

    // M = 1 - z, n = 1, f = 1: lambda(1-M) = lambda(z) = 1 - z,
    // E = M U U* - U* = (1 - z) - 1 = -z, lambda(E) = 1/(1-z),
    // so the product is exactly 1.
    TruncSeries rhs = limit_pairing_rhs(sym_one(), one - z, 1, zc);
    CHECK(rhs == one);

    // dim_0(E) != 0 is rejected with the value in the message
    TruncSeries badM = one + z - TruncSeries::var_pow(zc, "z", 2);
    CHECK_THROWS_WITH_AS(limit_pairing_rhs(sym_one(), badM, 2, zc),
                         doctest::Contains("dim_0(E) = 2"), std::invalid_argument);
}

namespace {

// Reclip every coefficient of an XPoly into a narrower context.
XPoly xpoly_remap(const XPoly& p, const Ctx& target) {
    XPoly out(p.nvars(), target);
    for (const auto& [e, c] : p.terms()) out.add_term(e, remap(c, target));
    return out;
}

} // namespace

TEST_CASE("kernel identity: Delta(x) lambda(C x x*) = lambda(C)^n Delta_M(x)") {
    // x x* = sum_{i,j} x_i/x_j including the diagonal, whose n copies of C
    // contribute the scalar lambda(C)^n.  Both sides are computed on a
    // widened window and reclipped so retained degrees are exact.
    Ctx zc = ctx_z(8, -8);
    Ctx wide = widened(zc, 10);
    TruncSeries one = TruncSeries::constant(wide, Rat(1));
    TruncSeries z = TruncSeries::var_pow(wide, "z", 1);
    for (const TruncSeries& M :
         {one - z, one + z, one + z - TruncSeries::var_pow(wide, "z", 2)}) {
        VirtualChar C = M - one;
        for (int n : {2, 3}) {
            std::map<ExpVec, VirtualChar> xchar;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    ExpVec e(static_cast<std::size_t>(n), 0);
                    e[static_cast<std::size_t>(i)] += 1;
                    e[static_cast<std::size_t>(j)] -= 1;
                    auto [it, fresh] = xchar.emplace(std::move(e), C);
                    if (!fresh) it->second += C;
                }
            XPoly lhs = delta_M(KernelSpec{one, n}, wide) * lambda_xchar(xchar, n, wide);
            TruncSeries lCn = lambda_eval_series(C).pow(n);
            XPoly rhs = delta_M(KernelSpec{M, n}, wide).scaled(lCn);
            CHECK(xpoly_remap(lhs, zc) == xpoly_remap(rhs, zc));
        }
    }
}
