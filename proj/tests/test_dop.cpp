#include <doctest.h>

#include "dcongr/dop.hpp"
#include "support.hpp"

using namespace dcongr;
using namespace dcongr::testing;

TEST_SUITE("dop") {

TEST_CASE("commutation rule X t = t X + p^k") {
    auto ctx = Context::make(5, 40);
    for (int k = 0; k <= 3; ++k) {
        auto t = fn(ctx, k, {0, 1});
        auto x = xpow(ctx, k, 1);
        auto lhs = op_mul(x, t) - op_mul(t, x);
        CHECK(lhs.order() == 0);
        CHECK(lhs.coeff(0).rationals() == std::vector<mpq_class>{mpq_class(ctx->power(k))});
    }
}

TEST_CASE("invariants of simple operators") {
    auto ctx = Context::make(5, 40);
    auto h = rescale_level(one(ctx, 0) - xpow(ctx, 0, 1).scaled_p(1), 1);
    CHECK(op_norm(h) == Magnitude::one());
    CHECK(nbar(h) == 1);
    CHECK(nk(h) == 0);
    auto g = fn(ctx, 2, {5, 0, 1}) + op_mul(fn(ctx, 2, {0, 1}), xpow(ctx, 2, 2)).scaled_p(1);
    CHECK(nbar(g) == 0);
    CHECK(nk(g) == 2);
    CHECK_THROWS_AS(nbar(DiffOp(ctx, 1)), Error);
    CHECK(op_norm(DiffOp(ctx, 1)).zero);
}

TEST_CASE("level mismatch") {
    auto ctx = Context::make(5, 40);
    try {
        (void)op_mul(xpow(ctx, 1, 1), xpow(ctx, 2, 1));
        FAIL("expected LevelMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::LevelMismatch);
    }
    CHECK_THROWS_AS(xpow(ctx, 1, 1) + xpow(ctx, 0, 1), Error);
}

TEST_CASE("rescale between levels") {
    auto ctx = Context::make(5, 10);
    auto d = xpow(ctx, 0, 1);
    auto d3 = rescale_level(d, 3);
    CHECK(op_norm(d3).log_p == 3);
    CHECK(residual_valuation(rescale_level(d3, 0), d) == kInfValuation);
    try {
        (void)rescale_level(xpow(ctx, 0, 2), 6);
        FAIL("expected NormOverflow");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NormOverflow);
    }
}

TEST_CASE("brackets") {
    auto ctx = Context::make(5, 40);
    auto x = xpow(ctx, 1, 1);
    auto bt = bracket_t(x);
    CHECK(bt.order() == 0);
    CHECK(bt.coeff(0).rationals() == std::vector<mpq_class>{5});
    auto bd = bracket_del(fn(ctx, 1, {0, 1}));
    CHECK(bd.coeff(0).rationals() == std::vector<mpq_class>{-5});
    // Bracket agrees with the commutator computed by multiplication.
    OpGen gen(41);
    for (int i = 0; i < 30; ++i) {
        auto h = gen.op(ctx, {1, 3, 4, 1, 0.6});
        auto t = fn(ctx, 1, {0, 1});
        CHECK(residual_valuation(bracket_t(h), op_mul(h, t) - op_mul(t, h)) == kInfValuation);
        CHECK(residual_valuation(bracket_del(h), op_mul(h, x) - op_mul(x, h)) == kInfValuation);
    }
}

TEST_CASE("property: norm multiplicative, nbar and N additive") {
    auto ctx = Context::make(5, 40);
    OpGen gen(43);
    for (int k = 0; k <= 3; ++k) {
        for (int i = 0; i < 60; ++i) {
            auto h = gen.op(ctx, {k, 3, 4, 2, 0.5});
            auto q = gen.op(ctx, {k, 3, 4, 2, 0.5});
            auto hq = op_mul(h, q);
            CHECK(op_norm(hq) == op_norm(h) * op_norm(q));
            CHECK(nbar(hq) == nbar(h) + nbar(q));
            CHECK(nk(hq) == nk(h) + nk(q));
        }
    }
}

TEST_CASE("associativity of the product") {
    auto ctx = Context::make(5, 40);
    OpGen gen(47);
    for (int i = 0; i < 20; ++i) {
        auto a = gen.op(ctx, {2, 2, 3, 1, 0.6});
        auto b = gen.op(ctx, {2, 2, 3, 1, 0.6});
        auto c = gen.op(ctx, {2, 2, 3, 1, 0.6});
        CHECK(residual_valuation(op_mul(op_mul(a, b), c), op_mul(a, op_mul(b, c))) ==
              kInfValuation);
    }
}

TEST_CASE("right inverse") {
    auto ctx = Context::make(5, 40, 64, 24);
    auto h = one(ctx, 1) - xpow(ctx, 1, 1).scaled_p(1);
    auto g = op_invert(h);
    CHECK(op_congruent(op_mul(h, g), one(ctx, 1), 36));
    auto h2 = DiffOp::from_coeffs(ctx, 1, {TateSeries::from_rationals(ctx, {1, 2, 3}),
                                           TateSeries::from_rationals(ctx, {5, 0, 25, 5})});
    auto g2 = op_invert(h2);
    CHECK(op_congruent(op_mul(h2, g2), one(ctx, 1), 36));
    CHECK(nbar(g2) == 0);
    CHECK(nk(g2) == 0);
    for (auto bad : {one(ctx, 1) - xpow(ctx, 1, 1), fn(ctx, 1, {0, 1}) + xpow(ctx, 1, 1).scaled_p(1),
                     fn(ctx, 1, {5, 1})}) {
        try {
            (void)op_invert(bad);
            FAIL("expected NotInvertible");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotInvertible);
        }
    }
}

TEST_CASE("coordinate change preserves invariants") {
    auto ctx = Context::make(5, 40);
    OpGen gen(53);
    auto u = TateSeries::from_rationals(ctx, {2, 5, 0, 25});
    for (int i = 0; i < 20; ++i) {
        auto h = gen.op(ctx, {1, 3, 4, 1, 0.6});
        auto r = rebase_derivation(h, u);
        CHECK(op_norm(r) == op_norm(h));
        CHECK(nbar(r) == nbar(h));
        CHECK(nk(r) == nk(h));
        auto back = rebase_derivation(r, series_invert(u), u);
        CHECK(op_congruent(back, h, 30));
    }
    CHECK_THROWS_AS(rebase_derivation(xpow(ctx, 1, 1), TateSeries::from_rationals(ctx, {0, 1})),
                    Error);
}

TEST_CASE("translation keeps the operator algebra") {
    auto ctx = Context::make(5, 40);
    auto h = fn(ctx, 1, {0, -1, 1}) + op_mul(fn(ctx, 1, {0, 0, 1}), xpow(ctx, 1, 2));
    auto s = h.translate(1);
    CHECK(nbar(s) == nbar(h));
    CHECK(residual_valuation(s.translate(-1), h) == kInfValuation);
}

TEST_CASE("order cap flags truncation") {
    auto ctx = Context::make(5, 40, 64, 4);
    auto x3 = xpow(ctx, 1, 3);
    auto p = op_mul(x3, x3);
    CHECK(p.truncated());
    CHECK(p.order() <= 4);
}

}
