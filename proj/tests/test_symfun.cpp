// Symmetric functions: basis conversions, products, monomial expansion.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "macloc/symfun.hpp"

#include <random>

using namespace macloc;

namespace {

std::mt19937 rng(20240817u);

SymFn<Rat> rand_symfn(Basis b, int maxdeg) {
    SymFn<Rat> f(b);
    std::uniform_int_distribution<int> deg(0, maxdeg);
    std::uniform_int_distribution<long> coeff(-4, 4);
    for (int k = 0; k < 4; ++k) {
        auto ps = partitions_of(deg(rng));
        std::uniform_int_distribution<std::size_t> pick(0, ps.size() - 1);
        f.add_term(ps[pick(rng)], Rat(coeff(rng)));
    }
    return f;
}

} // namespace

TEST_CASE("small hand-checked expansions into the m-basis") {
    SymFn<Rat> h2 = convert(sym_gen(Basis::h, Partition({2})), Basis::m);
    CHECK(h2.coeffs.at(Partition({2})) == Rat(1));
    CHECK(h2.coeffs.at(Partition({1, 1})) == Rat(1));
    CHECK(h2.coeffs.size() == 2);

    SymFn<Rat> e2 = convert(sym_gen(Basis::e, Partition({2})), Basis::m);
    CHECK(e2.coeffs.at(Partition({1, 1})) == Rat(1));
    CHECK(e2.coeffs.size() == 1);

    SymFn<Rat> p2 = convert(sym_gen(Basis::p, Partition({2})), Basis::m);
    CHECK(p2.coeffs.at(Partition({2})) == Rat(1));
    CHECK(p2.coeffs.size() == 1);

    SymFn<Rat> p11 = convert(sym_gen(Basis::p, Partition({1, 1})), Basis::m);
    CHECK(p11.coeffs.at(Partition({2})) == Rat(1));
    CHECK(p11.coeffs.at(Partition({1, 1})) == Rat(2));

    // h3 = m3 + m21 + m111
    SymFn<Rat> h3 = convert(sym_gen(Basis::h, Partition({3})), Basis::m);
    CHECK(h3.coeffs.at(Partition({3})) == Rat(1));
    CHECK(h3.coeffs.at(Partition({2, 1})) == Rat(1));
    CHECK(h3.coeffs.at(Partition({1, 1, 1})) == Rat(1));

    // p3 = m3; e3 = m111
    CHECK(convert(sym_gen(Basis::p, Partition({3})), Basis::m) ==
          sym_gen(Basis::m, Partition({3})));
    CHECK(convert(sym_gen(Basis::e, Partition({3})), Basis::m) ==
          sym_gen(Basis::m, Partition({1, 1, 1})));

    // Newton: p2 = h1^2 - 2 e2 in the m-basis
    SymFn<Rat> newton = convert(
        mul(sym_gen(Basis::h, Partition({1})), sym_gen(Basis::h, Partition({1}))), Basis::m);
    newton += convert(sym_gen(Basis::e, Partition({2})), Basis::m).scaled(Rat(-2));
    CHECK(newton == p2);
}

TEST_CASE("p_lambda expansion matches the independent monomial-expansion oracle") {
    for (int k = 0; k <= 6; ++k) {
        for (const Partition& lam : partitions_of(k)) {
            CHECK(convert(sym_gen(Basis::p, lam), Basis::m) ==
                  p_to_m_by_monomial_expansion(lam));
        }
    }
}

TEST_CASE("conversions are mutually inverse on random elements") {
    const Basis all[] = {Basis::m, Basis::e, Basis::h, Basis::p};
    for (int iter = 0; iter < 40; ++iter) {
        for (Basis src : all) {
            SymFn<Rat> f = rand_symfn(src, 5);
            for (Basis mid : all) {
                SymFn<Rat> back = convert(convert(f, mid), src);
                CHECK(back == f);
            }
        }
    }
}

TEST_CASE("product is commutative, associative, and matches hand values") {
    // m1 * m1 = m2 + 2 m11
    SymFn<Rat> m1 = sym_gen(Basis::m, Partition({1}));
    SymFn<Rat> sq = mul(m1, m1);
    CHECK(sq.coeffs.at(Partition({2})) == Rat(1));
    CHECK(sq.coeffs.at(Partition({1, 1})) == Rat(2));

    // e1 * e2 = e21 in the e-basis (p-route must reproduce it)
    SymFn<Rat> e1 = sym_gen(Basis::e, Partition({1}));
    SymFn<Rat> e2 = sym_gen(Basis::e, Partition({2}));
    CHECK(mul(e1, e2) == sym_gen(Basis::e, Partition({2, 1})));

    for (int iter = 0; iter < 20; ++iter) {
        SymFn<Rat> f = rand_symfn(Basis::m, 3);
        SymFn<Rat> g = rand_symfn(Basis::m, 3);
        SymFn<Rat> h = rand_symfn(Basis::m, 2);
        CHECK(mul(f, g) == mul(g, f));
        CHECK(mul(mul(f, g), h) == mul(f, mul(g, h)));
        CHECK(mul(f, sym_one()) == f);
        CHECK(mul(f, g + h) == mul(f, g) + mul(f, h));
    }
}

TEST_CASE("monomials_of_m enumerates distinct monomials") {
    // m_{2,1} in 3 variables: 6 distinct exponent arrangements
    auto ms = monomials_of_m(Partition({2, 1}), 3);
    CHECK(ms.size() == 6);
    // m_{1,1} in 2 variables: one monomial x1 x2
    auto m11 = monomials_of_m(Partition({1, 1}), 2);
    REQUIRE(m11.size() == 1);
    CHECK(m11[0] == std::vector<int>({1, 1}));
    // m_{2,2} in 2 variables: (2,2) only
    CHECK(monomials_of_m(Partition({2, 2}), 2).size() == 1);
    // partition longer than n: killed
    CHECK(monomials_of_m(Partition({1, 1, 1}), 2).empty());
}

TEST_CASE("expand_nvars respects the number of variables") {
    // e2 in 2 variables = x1 x2
    auto e2 = expand_nvars(sym_gen(Basis::e, Partition({2})), 2);
    REQUIRE(e2.size() == 1);
    CHECK(e2.at({1, 1}) == Rat(1));

    // h2 in 2 variables = x1^2 + x1 x2 + x2^2
    auto h2 = expand_nvars(sym_gen(Basis::h, Partition({2})), 2);
    CHECK(h2.size() == 3);
    CHECK(h2.at({2, 0}) == Rat(1));
    CHECK(h2.at({1, 1}) == Rat(1));
    CHECK(h2.at({0, 2}) == Rat(1));

    // e3 in 2 variables vanishes
    CHECK(expand_nvars(sym_gen(Basis::e, Partition({3})), 2).empty());

    // expansion is a ring homomorphism Lambda -> Lambda_n
    for (int iter = 0; iter < 10; ++iter) {
        SymFn<Rat> f = rand_symfn(Basis::m, 3);
        SymFn<Rat> g = rand_symfn(Basis::m, 3);
        auto fe = expand_nvars(f, 3);
        auto ge = expand_nvars(g, 3);
        auto pe = expand_nvars(mul(f, g), 3);
        // multiply the two expansions directly
        std::map<std::vector<int>, Rat> prod;
        for (const auto& [ea, ca] : fe)
            for (const auto& [eb, cb] : ge) {
                std::vector<int> e(3);
                for (int i = 0; i < 3; ++i) e[i] = ea[i] + eb[i];
                auto it = prod.find(e);
                if (it == prod.end()) {
                    Rat v = ca * cb;
                    if (!v.is_zero()) prod.emplace(e, v);
                } else {
                    it->second += ca * cb;
                    if (it->second.is_zero()) prod.erase(it);
                }
            }
        CHECK(prod == pe);
    }
}

TEST_CASE("dual_substitute negates exponents") {
    auto h2 = expand_nvars(sym_gen(Basis::h, Partition({2})), 2);
    auto d = dual_substitute(h2);
    CHECK(d.at({-2, 0}) == Rat(1));
    CHECK(d.at({-1, -1}) == Rat(1));
    CHECK(dual_substitute(d) == h2);
}

TEST_CASE("SymFn basics") {
    SymFn<Rat> f(Basis::m);
    f.add_term(Partition({2}), Rat(1));
    f.add_term(Partition({2}), Rat(-1));
    CHECK(f.is_zero());
    f.add_term(Partition({3, 1}), Rat(2));
    CHECK(f.max_degree() == 4);
    CHECK(f.homogeneous());
    f.add_term(Partition({1}), Rat(1));
    CHECK_FALSE(f.homogeneous());
    CHECK_THROWS(f + SymFn<Rat>(Basis::p));
}
