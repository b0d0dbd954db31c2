#include <doctest.h>

#include "dcongr/fp_poly.hpp"
#include "dcongr/ideals.hpp"
#include "support.hpp"

using namespace dcongr;
using namespace dcongr::testing;

namespace {

DiffOp tpow(const Ctx& ctx, int k, int a) {
    return DiffOp::function(TateSeries::monomial(ctx, 1, a), k);
}

}  // namespace

TEST_SUITE("fp") {

TEST_CASE("field arithmetic") {
    fp::Field F{7};
    CHECK(F.mul(F.inv(3), 3) == 1);
    CHECK(F.pow(3, 6) == 1);
    CHECK(F.sub(2, 5) == 4);
}

TEST_CASE("division with remainder and gcd") {
    fp::Field F{5};
    fp::Poly a = fp::mul(F, {1, 1}, {2, 0, 1});
    fp::Poly q, r;
    fp::divmod(F, a, {1, 1}, q, r);
    CHECK(q == fp::Poly{2, 0, 1});
    CHECK(r.empty());
    CHECK(fp::gcd(F, a, fp::mul(F, {1, 1}, {3, 1})) == fp::Poly{1, 1});
    CHECK(fp::t_valuation({0, 0, 3}) == 2);
    CHECK(fp::to_string({2, 0, 1}) == "t^2 + 2");
}

TEST_CASE("factorization reproduces the input") {
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u}) {
        fp::Field F{p};
        std::mt19937_64 rng(p);
        for (int i = 0; i < 40; ++i) {
            fp::Poly f(static_cast<size_t>(rng() % 10) + 2);
            for (auto& c : f) c = rng() % p;
            f.back() = 1;
            auto facs = fp::factor(F, f);
            fp::Poly prod{1};
            for (const auto& fc : facs) {
                CHECK(fc.poly.back() == 1);
                for (int m = 0; m < fc.mult; ++m) prod = fp::mul(F, prod, fc.poly);
            }
            CHECK(prod == fp::monic(F, f));
        }
    }
}

}

TEST_SUITE("ideals") {

TEST_CASE("staircase basics") {
    Staircase s({{3, 1}, {1, 3}, {4, 2}, {2, 4}});
    CHECK(s.str() == "{(3,1), (1,3)}");
    CHECK(s.contains({1, 5}));
    CHECK(s.contains({3, 1}));
    CHECK_FALSE(s.contains({2, 2}));
    CHECK(s.d_min() == 1);
    CHECK(s.v_min() == 1);
    const std::string art = s.ascii(5, 5);
    CHECK(art.find('o') != std::string::npos);
    CHECK(art.find('#') != std::string::npos);
}

TEST_CASE("exponent of an operator") {
    auto ctx = Context::make(5, 40);
    auto h = op_mul(tpow(ctx, 1, 2), xpow(ctx, 1, 3)) + one(ctx, 1).scaled_p(1);
    CHECK(exponent(h) == Exponent{2, 3});
    CHECK_THROWS_AS(exponent(DiffOp(ctx, 1)), Error);
}

TEST_CASE("unit ideal from t^2 and X") {
    auto ctx = Context::make(5, 40);
    for (int k = 1; k <= 2; ++k) {
        auto r = division_basis({tpow(ctx, k, 2), xpow(ctx, k, 1)}, k);
        CHECK(r.unit);
    }
}

TEST_CASE("principal ideal staircase") {
    auto ctx = Context::make(5, 40);
    auto g = op_mul(tpow(ctx, 1, 2), xpow(ctx, 1, 3));
    auto r = division_basis({g}, 1);
    CHECK_FALSE(r.unit);
    CHECK(r.basis.staircase.minimals() == std::vector<Exponent>{{2, 3}});
    CHECK(oracle_staircase({g}, 1, 12, 12) == r.basis.staircase);
}

TEST_CASE("normal form of ideal members vanishes") {
    auto ctx = Context::make(5, 40);
    auto g1 = op_mul(tpow(ctx, 1, 3), xpow(ctx, 1, 1));
    auto g2 = op_mul(tpow(ctx, 1, 1), xpow(ctx, 1, 3));
    auto r = division_basis({g1, g2}, 1);
    REQUIRE_FALSE(r.unit);
    OpGen gen(71);
    for (int i = 0; i < 10; ++i) {
        auto a = gen.op(ctx, {1, 2, 3, 0, 0.6});
        auto b = gen.op(ctx, {1, 2, 3, 0, 0.6});
        auto member = op_mul(a, g1) + op_mul(b, g2);
        CHECK(normal_form(member, r.basis).is_zero());
    }
    CHECK_FALSE(normal_form(one(ctx, 1), r.basis).is_zero());
}

TEST_CASE("generators at another level") {
    auto ctx = Context::make(5, 40);
    CHECK_THROWS_AS(division_basis({xpow(ctx, 1, 1), xpow(ctx, 2, 1)}, 1), Error);
    CHECK_THROWS_AS(division_basis({DiffOp(ctx, 1)}, 1), Error);
    CHECK_THROWS_AS(oracle_staircase({xpow(ctx, 0, 1)}, 0, 12, 12), Error);
}

TEST_CASE("oracle box too small") {
    auto ctx = Context::make(5, 40);
    try {
        (void)oracle_staircase({op_mul(tpow(ctx, 1, 2), xpow(ctx, 1, 5))}, 1, 4, 4);
        FAIL("expected BoxTooSmall");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BoxTooSmall);
    }
}

TEST_CASE("staircase is monotone under adding generators") {
    auto ctx = Context::make(5, 40);
    OpGen gen(73);
    for (int i = 0; i < 10; ++i) {
        auto a = gen.op(ctx, {1, 3, 4, 1, 0.5});
        auto b = gen.op(ctx, {1, 3, 4, 1, 0.5});
        auto ra = division_basis({a}, 1);
        auto rab = division_basis({a, b}, 1);
        if (rab.unit) continue;
        for (const auto& e : ra.basis.staircase.minimals())
            CHECK(rab.basis.staircase.contains(e));
    }
}

}
