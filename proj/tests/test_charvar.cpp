#include <doctest.h>

#include "dcongr/charvar.hpp"
#include "support.hpp"

using namespace dcongr;
using namespace dcongr::testing;

namespace {

DiffOp tpow(const Ctx& ctx, int k, int a) {
    return DiffOp::function(TateSeries::monomial(ctx, 1, a), k);
}

}  // namespace

TEST_SUITE("charvar") {

TEST_CASE("dirac and monomial cycles") {
    auto ctx = Context::make(5, 40);
    auto c = principal_cycle(op_mul(tpow(ctx, 1, 2), xpow(ctx, 1, 3)));
    CHECK(c.kind == CycleKind::ProperCycle);
    CHECK(c.horizontal == 3);
    REQUIRE(c.vertical.size() == 1);
    CHECK(c.vertical[0].point == "t=0");
    CHECK(c.vertical[0].mult == 2);
    CHECK(c.json() ==
          R"({"kind":"ProperCycle","horizontal":3,"vertical":[{"point":"t=0","degree":1,"mult":2}]})");
    auto dirac = principal_cycle(tpow(ctx, 1, 1));
    CHECK(dirac.horizontal == 0);
    CHECK(dirac.total() == 1);
}

TEST_CASE("cycle grid t^a X^d") {
    auto ctx = Context::make(5, 40);
    for (int a = 1; a <= 4; ++a) {
        for (int d = 1; d <= 4; ++d) {
            auto m = ModuleDescriptor::cyclic({op_mul(tpow(ctx, 1, a), xpow(ctx, 1, d))}, 1);
            auto c = char_cycle(m);
            CHECK(c.horizontal == d);
            REQUIRE(c.vertical.size() == 1);
            CHECK(c.vertical[0].mult == a);
            CHECK(length_bound(m) == a + d);
        }
    }
}

TEST_CASE("two rational points") {
    auto ctx = Context::make(5, 40);
    auto h = op_mul(fn(ctx, 1, {0, -1, 1}), xpow(ctx, 1, 1)) + one(ctx, 1);
    auto c = principal_cycle(h);
    CHECK(c.horizontal == 1);
    REQUIRE(c.vertical.size() == 2);
    CHECK(c.vertical[0].point == "t=0");
    CHECK(c.vertical[1].point == "t=1");
}

TEST_CASE("non-rational closed point") {
    auto ctx = Context::make(5, 40);
    auto h = op_mul(fn(ctx, 1, {2, 0, 1}), xpow(ctx, 1, 1));
    auto c = principal_cycle(h);
    REQUIRE(c.vertical.size() == 1);
    CHECK(c.vertical[0].degree == 2);
    CHECK(c.vertical[0].point == "t^2 + 2");
}

TEST_CASE("empty and full cycles") {
    auto ctx = Context::make(5, 40);
    CHECK(principal_cycle(one(ctx, 1)).kind == CycleKind::Empty);
    CHECK(principal_cycle(DiffOp(ctx, 1)).kind == CycleKind::FullCotangent);
    auto zero_module = ModuleDescriptor::cyclic({DiffOp(ctx, 1)}, 1);
    CHECK_FALSE(is_holonomic(zero_module));
    CHECK_THROWS_AS(length_bound(zero_module), Error);
    CHECK(char_cycle(ModuleDescriptor::cyclic({tpow(ctx, 1, 2), xpow(ctx, 1, 1)}, 1)).kind ==
          CycleKind::Empty);
}

TEST_CASE("cycle sum merges components") {
    CharCycle a{CycleKind::ProperCycle, 1, {{"t=0", 1, 2}}};
    CharCycle b{CycleKind::ProperCycle, 2, {{"t=0", 1, 1}, {"t=3", 1, 1}}};
    auto s = a + b;
    CHECK(s.horizontal == 3);
    REQUIRE(s.vertical.size() == 2);
    CHECK(s.vertical[0].mult == 3);
    CHECK(s.total() == 7);
    CHECK((a + CharCycle{}) == a);
}

TEST_CASE("property: additivity on principal products") {
    auto ctx = Context::make(5, 40);
    OpGen gen(83);
    for (int i = 0; i < 40; ++i) {
        auto p = gen.op(ctx, {1, 3, 4, 1, 0.6});
        auto q = gen.op(ctx, {1, 3, 4, 1, 0.6});
        CHECK(principal_cycle(op_mul(p, q)) == principal_cycle(p) + principal_cycle(q));
    }
}

TEST_CASE("connections") {
    auto ctx = Context::make(5, 40);
    auto conn = xpow(ctx, 1, 2) + op_mul(fn(ctx, 1, {3, 1}), xpow(ctx, 1, 1)) + one(ctx, 1);
    auto rank = connection_rank(ModuleDescriptor::cyclic({conn}, 1));
    REQUIRE(rank.has_value());
    CHECK(*rank == 2);
    auto dirac = ModuleDescriptor::cyclic({tpow(ctx, 1, 1)}, 1);
    CHECK_FALSE(connection_rank(dirac).has_value());
}

TEST_CASE("bernstein: no zero-dimensional cycle") {
    auto ctx = Context::make(5, 40);
    OpGen gen(89);
    for (int i = 0; i < 15; ++i) {
        auto a = gen.op(ctx, {1, 3, 4, 1, 0.5});
        auto b = gen.op(ctx, {1, 3, 4, 1, 0.5});
        auto c = char_cycle(ModuleDescriptor::cyclic({a, b}, 1));
        CHECK_FALSE(c.zero_dimensional());
    }
}

}
