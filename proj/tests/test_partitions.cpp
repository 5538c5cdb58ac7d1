// Partition combinatorics: cell statistics, dominance, enumeration.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "macloc/partitions.hpp"

#include <set>

using namespace macloc;

TEST_CASE("construction normalizes and validates") {
    CHECK(Partition({3, 1, 0, 0}) == Partition({3, 1}));
    CHECK(Partition().empty());
    CHECK(Partition({2, 2}).size() == 4);
    CHECK(Partition({2, 2}).length() == 2);
    CHECK(Partition({5, 3, 1}).part(1) == 5);
    CHECK(Partition({5, 3, 1}).part(4) == 0);
    CHECK_THROWS(Partition({1, 2}));   // not weakly decreasing
    CHECK_THROWS(Partition({2, -1}));  // negative part
}

TEST_CASE("parse round trips") {
    CHECK(Partition::parse("2,1") == Partition({2, 1}));
    CHECK(Partition::parse("") == Partition());
    CHECK(Partition::parse("0") == Partition());
    CHECK(Partition::parse("4, 2 ,1") == Partition({4, 2, 1}));
    CHECK(Partition({3, 2}).str() == "(3,2)");
}

TEST_CASE("as_tuple pads and guards") {
    auto t = Partition({2, 1}).as_tuple(4);
    CHECK(t == std::vector<int>({2, 1, 0, 0}));
    CHECK_THROWS(Partition({2, 1, 1}).as_tuple(2));
}

TEST_CASE("conjugate is an involution and transposes the diagram") {
    CHECK(Partition({4, 3, 1}).conjugate() == Partition({3, 2, 2, 1}));
    for (int k = 0; k <= 8; ++k)
        for (const Partition& mu : partitions_of(k))
            CHECK(mu.conjugate().conjugate() == mu);
}

TEST_CASE("arm/leg/coarm/coleg on mu = (4,3,1)") {
    Partition mu({4, 3, 1});
    // cell (1,1): row 1 has 4 cells -> arm 3; column 1 has 3 cells -> leg 2
    CHECK(arm(mu, {1, 1}) == 3);
    CHECK(leg(mu, {1, 1}) == 2);
    CHECK(coarm(mu, {1, 1}) == 0);
    CHECK(coleg(mu, {1, 1}) == 0);
    // cell (2,3): arm = 3 - 3 = 0; below in column 3 only row 1..2 -> leg 0
    CHECK(arm(mu, {2, 3}) == 0);
    CHECK(leg(mu, {2, 3}) == 0);
    CHECK(coarm(mu, {2, 3}) == 2);
    CHECK(coleg(mu, {2, 3}) == 1);
    // cell (1,4): last cell of row 1
    CHECK(arm(mu, {1, 4}) == 0);
    CHECK(leg(mu, {1, 4}) == 0);
    CHECK(coarm(mu, {1, 4}) == 3);
    CHECK_THROWS(arm(mu, {3, 2}));  // outside the diagram
    CHECK_THROWS(leg(mu, {4, 1}));

    CHECK(cells(mu).size() == 8);
    // arm of s in mu equals leg of the transposed cell in mu'
    Partition mc = mu.conjugate();
    for (Cell s : cells(mu)) {
        CHECK(arm(mu, s) == leg(mc, {s.col, s.row}));
        CHECK(coarm(mu, s) == coleg(mc, {s.col, s.row}));
    }
}

TEST_CASE("dominance order") {
    CHECK(dominance_less(Partition({1, 1, 1}), Partition({3})));
    CHECK(dominance_less(Partition({2, 1}), Partition({3})));
    CHECK_FALSE(dominance_less(Partition({3}), Partition({2, 1})));
    CHECK_FALSE(dominance_less(Partition({2, 1}), Partition({2, 1})));
    // (3,1,1,1) and (2,2,2) are incomparable
    CHECK_FALSE(dominance_less(Partition({3, 1, 1, 1}), Partition({2, 2, 2})));
    CHECK_FALSE(dominance_less(Partition({2, 2, 2}), Partition({3, 1, 1, 1})));
    CHECK_THROWS(dominance_less(Partition({2}), Partition({1})));  // size mismatch
}

TEST_CASE("add_rect adds m to each of the n rows") {
    CHECK(add_rect(Partition({2, 1}), 3, 2) == Partition({5, 4}));
    CHECK(add_rect(Partition(), 2, 3) == Partition({2, 2, 2}));
    CHECK(add_rect(Partition({1}), 0, 2) == Partition({1}));
    CHECK_THROWS(add_rect(Partition({2, 1, 1}), 1, 2));  // mu too long
}

TEST_CASE("zee") {
    CHECK(zee(Partition()) == Rat(1));
    CHECK(zee(Partition({1})) == Rat(1));
    CHECK(zee(Partition({2})) == Rat(2));
    CHECK(zee(Partition({1, 1})) == Rat(2));
    CHECK(zee(Partition({2, 1, 1})) == Rat(4));
    // i=1: 1^3*3! = 6; i=2: 2^1*1! = 2; i=3: 3^2*2! = 18
    CHECK(zee(Partition({3, 3, 2, 1, 1, 1})) == Rat(6 * 2 * 18));
}

TEST_CASE("partitions_of enumerates each partition once, in descending lex order") {
    const int expected[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (int k = 0; k <= 10; ++k) {
        auto ps = partitions_of(k);
        CHECK(static_cast<int>(ps.size()) == expected[k]);
        std::set<std::vector<int>> seen;
        for (const Partition& p : ps) {
            CHECK(p.size() == k);
            CHECK(seen.insert(p.parts()).second);
        }
        for (std::size_t i = 1; i < ps.size(); ++i)
            CHECK(ps[i - 1].parts() > ps[i].parts());
    }
    CHECK(partitions_of(0).size() == 1);
    CHECK(partitions_of(0)[0].empty());
}
