#include <doctest.h>

#include "oracles.hpp"
#include "qdm/group.hpp"

using namespace qdm;

TEST_CASE("two-element table is z2") {
    FiniteGroup g = FiniteGroup::build({{0, 1}, {1, 0}});
    CHECK(g.order() == 2);
    CHECK(g.identity() == 0);
    CHECK(g.mul(1, 1) == 0);
    CHECK(g.inv(1) == 1);
}

TEST_CASE("s3 table from permutation composition oracle") {
    auto table = oracle::symmetric_group_table(3);
    FiniteGroup g = FiniteGroup::build(table, "s3-oracle");
    CHECK(g.order() == 6);
    // Built-in s3 must agree with the oracle table entry for entry.
    FiniteGroup builtin = FiniteGroup::builtin("s3");
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) CHECK(builtin.mul(a, b) == g.mul(a, b));
}

TEST_CASE("missing inverse is rejected") {
    CHECK_THROWS_AS(FiniteGroup::build({{0, 1}, {1, 1}}), NotAGroup);
}

TEST_CASE("non-associative latin square is rejected") {
    // Rows/columns are permutations but (1*1)*2 != 1*(1*2) for this loop.
    std::vector<std::vector<int>> t = {
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    CHECK_THROWS_AS(FiniteGroup::build(t), NotAGroup);
}

TEST_CASE("identity is relabeled to index 0") {
    // z3 with labels shifted so the identity is element 2.
    // mapping: old k -> new (k+2)%3 with identity at 2.
    std::vector<std::vector<int>> t(3, std::vector<int>(3));
    auto enc = [](int x) { return (x + 2) % 3; };
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) t[enc(a)][enc(b)] = enc((a + b) % 3);
    FiniteGroup g = FiniteGroup::build(t);
    CHECK(g.mul(0, 0) == 0);
    for (int a = 0; a < 3; ++a) {
        CHECK(g.mul(0, a) == a);
        CHECK(g.mul(a, g.inv(a)) == 0);
    }
}

TEST_CASE("conjugacy classes") {
    SUBCASE("abelian groups split into singletons") {
        for (const char* name : {"z2", "z3", "z4"}) {
            FiniteGroup g = FiniteGroup::builtin(name);
            ConjugacyData c = conjugacy_classes(g);
            CHECK(static_cast<int>(c.classes.size()) == g.order());
        }
    }
    SUBCASE("s3 class sizes are 1,3,2") {
        FiniteGroup g = FiniteGroup::builtin("s3");
        ConjugacyData c = conjugacy_classes(g);
        std::vector<int> sizes;
        for (const auto& cls : c.classes) sizes.push_back(static_cast<int>(cls.size()));
        std::sort(sizes.begin(), sizes.end());
        CHECK(sizes == std::vector<int>{1, 2, 3});
        CHECK(c.classes == oracle::brute_classes(g));
    }
    SUBCASE("sizes partition the group and divide its order") {
        for (const char* name : {"s3", "d4", "q8"}) {
            FiniteGroup g = FiniteGroup::builtin(name);
            ConjugacyData c = conjugacy_classes(g);
            int total = 0;
            for (const auto& cls : c.classes) {
                total += static_cast<int>(cls.size());
                CHECK(g.order() % static_cast<int>(cls.size()) == 0);
            }
            CHECK(total == g.order());
            CHECK(c.classes == oracle::brute_classes(g));
        }
    }
}

TEST_CASE("centralizers") {
    FiniteGroup s3 = FiniteGroup::builtin("s3");
    SUBCASE("identity centralizes everything") {
        CHECK(centralizer(s3, 0).size() == 6);
    }
    SUBCASE("transposition has order-2 centralizer") {
        // Element 1 = [021] is the transposition (12).
        auto c = centralizer(s3, 1);
        CHECK(c.size() == 2);
        CHECK(c[0] == 0);
        CHECK(c[1] == 1);
    }
    SUBCASE("abelian group centralizes everything") {
        FiniteGroup z4 = FiniteGroup::builtin("z4");
        for (int r = 0; r < 4; ++r) CHECK(centralizer(z4, r).size() == 4);
    }
}

TEST_CASE("subgroup extraction keeps identity at 0") {
    FiniteGroup s3 = FiniteGroup::builtin("s3");
    Subgroup h = subgroup_as_group(s3, centralizer(s3, 1));
    CHECK(h.group.order() == 2);
    CHECK(h.to_parent(0) == 0);
    CHECK(h.group.mul(1, 1) == 0);
    CHECK_THROWS_AS(subgroup_as_group(s3, {0, 1, 3}), NotAGroup);  // not closed
}

TEST_CASE("builtin q8 and d4 are the expected groups") {
    FiniteGroup q8 = FiniteGroup::builtin("q8");
    CHECK(q8.order() == 8);
    // i^2 = j^2 = k^2 = -1 (index 4), and i j = k.
    CHECK(q8.mul(1, 1) == 4);
    CHECK(q8.mul(2, 2) == 4);
    CHECK(q8.mul(3, 3) == 4);
    CHECK(q8.mul(1, 2) == 3);
    CHECK(q8.mul(2, 1) == 7);  // j i = -k
    // Exactly one element of order 2.
    int order2 = 0;
    for (int a = 1; a < 8; ++a)
        if (q8.mul(a, a) == 0) ++order2;
    CHECK(order2 == 1);

    FiniteGroup d4 = FiniteGroup::builtin("d4");
    CHECK(d4.order() == 8);
    // s r s = r^-1 with r = 1, s = 4.
    CHECK(d4.mul(d4.mul(4, 1), 4) == d4.inv(1));
    int order2_d4 = 0;
    for (int a = 1; a < 8; ++a)
        if (d4.mul(a, a) == 0) ++order2_d4;
    CHECK(order2_d4 == 5);
}

TEST_CASE("group file loading") {
    FiniteGroup g = FiniteGroup::load("z4");
    CHECK(g.order() == 4);
    CHECK_THROWS_AS(FiniteGroup::load("/nonexistent/file/path"), NotAGroup);
}
