#include <doctest.h>

#include "dcongr/tower.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace dcongr;
using namespace dcongr::testing;

TEST_SUITE("tower") {

TEST_CASE("product family nbar grows with the level") {
    auto ctx = Context::make(5, 40);
    auto fam = TowerElement::product(ctx);
    auto prof = nbar_profile(fam, 6);
    for (int k = 0; k <= 6; ++k) CHECK(prof[static_cast<size_t>(k)] == k);
}

TEST_CASE("nbar profile is non-decreasing") {
    auto ctx = Context::make(5, 40);
    OpGen gen(97);
    for (int i = 0; i < 20; ++i) {
        auto h = gen.op(ctx, {0, 4, 3, 3, 0.6});
        auto prof = nbar_profile(TowerElement::finite(h), 5);
        for (size_t k = 1; k < prof.size(); ++k) CHECK(prof[k] >= prof[k - 1]);
    }
}

TEST_CASE("depth cap") {
    auto ctx = Context::make(5, 40);
    auto fam = TowerElement::product(ctx, 1, 5);
    CHECK_NOTHROW(realize(fam, 2));
    try {
        (void)realize(fam, 3);
        FAIL("expected TruncationInsufficient");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TruncationInsufficient);
    }
}

TEST_CASE("report for a finite operator") {
    auto ctx = Context::make(5, 40);
    auto h = op_mul(fn(ctx, 0, {0, -1, 1}), xpow(ctx, 0, 1)) + one(ctx, 0);
    auto r = tower_report(TowerElement::finite(h), 6);
    CHECK(r.stationary);
    CHECK(r.member);
    REQUIRE(r.m.has_value());
    CHECK(*r.m == 3);
    CHECK(r.classification == "finite-order");
    auto j = nlohmann::json::parse(r.json());
    CHECK(j["m"] == 3);
    CHECK(j["rows"].size() == 7);
}

TEST_CASE("report for the product family") {
    auto ctx = Context::make(5, 40);
    auto r = tower_report(TowerElement::product(ctx), 6);
    CHECK_FALSE(r.stationary);
    CHECK_FALSE(r.member);
    CHECK_FALSE(r.m.has_value());
    CHECK(r.classification == "unbounded-at-horizon");
    for (const auto& row : r.rows) CHECK(row.m_k == row.k);
}

TEST_CASE("norm suite shape") {
    auto ctx = Context::make(5, 40);
    auto rows = level_norm_suite(TowerElement::product(ctx), 0, 4, 1, 2);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].diff.empty());
    CHECK(rows[4].diff.size() == 2);
    for (const auto& r : rows) CHECK(r.log_p_pk == (r.k * r.k - r.k) / 2);
    CHECK_THROWS_AS(level_norm_suite(TowerElement::product(ctx), 0, 1, 3, 3), Error);
    CHECK_THROWS_AS(level_norm_suite(TowerElement::finite(one(ctx, 0)), 0, 4, 1, 2), Error);
}

TEST_CASE("units check") {
    auto ctx = Context::make(5, 40);
    CHECK(units_check(TowerElement::finite(fn(ctx, 0, {2, 5})), 6));
    CHECK(units_check(TowerElement::finite(one(ctx, 0)), 6));
    CHECK_FALSE(units_check(TowerElement::finite(fn(ctx, 0, {1, 1})), 6));
    CHECK_FALSE(units_check(TowerElement::finite(one(ctx, 0) + xpow(ctx, 0, 1).scaled_p(1)), 6));
    CHECK_FALSE(units_check(TowerElement::product(ctx), 6));
}

}
