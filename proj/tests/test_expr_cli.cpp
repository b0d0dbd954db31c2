#include <doctest.h>

#include <sstream>

#include "dcongr/cli.hpp"
#include "dcongr/expr.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace dcongr;
using namespace dcongr::testing;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("expr") {

TEST_CASE("parse keeps the written order") {
    auto ctx = Context::make(5, 40);
    auto td = expr::parse_operator("t*D", ctx, 0);
    auto dt = expr::parse_operator("D*t", ctx, 0);
    CHECK(residual_valuation(dt - td, one(ctx, 0)) == kInfValuation);
}

TEST_CASE("levels and products") {
    auto ctx = Context::make(5, 40);
    auto h = expr::parse_operator("prod(n=1..3, 1 - p^n*D)", ctx, 0);
    CHECK(residual_valuation(h, example_product(ctx, 3)) == kInfValuation);
    auto x1 = expr::parse_operator("p*D", ctx, 1);
    CHECK(residual_valuation(x1, xpow(ctx, 1, 1)) == kInfValuation);
    CHECK(expr::parse_rational("-3/15") == mpq_class(-1, 5));
}

TEST_CASE("syntax errors carry byte offsets") {
    auto ctx = Context::make(5, 40);
    for (const char* bad : {"t+", "(t", "t**2", "prod(n=1..x, t)", "q"}) {
        try {
            (void)expr::parse_operator(bad, ctx, 0);
            FAIL("expected SyntaxError for " << bad);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::SyntaxError);
            CHECK(std::string(e.what()).rfind("at byte ", 0) == 0);
        }
    }
}

TEST_CASE("round trip format then parse") {
    auto ctx = Context::make(5, 40);
    OpGen gen(101);
    for (int k = 0; k <= 2; ++k) {
        for (int i = 0; i < 20; ++i) {
            auto h = gen.op(ctx, {k, 3, 4, 2, 0.6});
            if (gen.coin(0.3)) h = h.scaled(PadicScalar::from_rational(ctx, mpq_class(1, 3)));
            const std::string text = expr::format(h);
            auto back = expr::parse_operator(text, ctx, k);
            CHECK(residual_valuation(back, h) == kInfValuation);
            CHECK(expr::format(back) == text);
        }
    }
}

TEST_CASE("rational reconstruction") {
    mpz_class m = 1;
    for (int i = 0; i < 20; ++i) m *= 5;
    mpz_class inv3;
    mpz_invert(inv3.get_mpz_t(), mpz_class(3).get_mpz_t(), m.get_mpz_t());
    mpq_class out;
    REQUIRE(expr::rational_reconstruct(mpz_class(2 * inv3 % m), m, out));
    CHECK(out == mpq_class(2, 3));
}

}

TEST_SUITE("cli") {

TEST_CASE("reference examples") {
    auto r = run({"norm", "--level", "1", "(1-p*D)"});
    CHECK(r.code == 0);
    CHECK(r.out == "1 (log_p = 0)\n");
    r = run({"hensel", "--level", "2", "prod(n=1..6, 1 - p^n*D)"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("dominant order 2", 0) == 0);
    r = run({"charcycle", "--level", "1", "t^2*(p*D)^3"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["horizontal"] == 3);
    CHECK(j["vertical"][0]["point"] == "t=0");
    CHECK(j["vertical"][0]["mult"] == 2);
}

TEST_CASE("exit codes and error objects") {
    auto r = run({"norm", "t+"});
    CHECK(r.code == 2);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["error"] == "SyntaxError");
    CHECK(j["class"] == "parse");
    CHECK(run({"invert", "--level", "1", "1-D"}).code == 3);
    CHECK(run({"hensel", "0"}).code == 3);
    CHECK(run({"tower", "--family", "product", "--kmax", "6"}).code == 5);
    CHECK(run({"tower", "t*(t-1)*D+1"}).code == 0);
    CHECK(run({"--prime", "4", "norm", "t"}).code != 0);
}

TEST_CASE("json outputs") {
    auto j = nlohmann::json::parse(run({"--json", "norm", "--level", "1", "(1-p*D)"}).out);
    CHECK(j["log_p_norm"] == 0);
    j = nlohmann::json::parse(run({"--json", "nbar", "--level", "2", "t^2*(p^2*D)^2 + p"}).out);
    CHECK(j["nbar"] == 2);
    j = nlohmann::json::parse(run({"--json", "normsuite", "--kmin", "2", "--kmax", "3", "--mmin", "1",
                                   "--mmax", "1"}).out);
    CHECK(j.size() == 2);
}

TEST_CASE("determinism") {
    const std::vector<std::vector<std::string>> cases = {
        {"--json", "hensel", "--level", "1", "prod(n=1..5, 1 - p^n*D)"},
        {"--json", "basis", "--level", "1", "t^3*(p*D)", "t*(p*D)^3"},
        {"charcycle", "--level", "1", "(t^2+2)*(p*D)"},
        {"tower", "--family", "product", "--kmax", "4"},
        {"--json", "witness", "--level", "1", "t^2*(p*D)^2 + p"},
    };
    for (const auto& c : cases) {
        auto a = run(c);
        auto b = run(c);
        CHECK(a.out == b.out);
        CHECK(a.code == b.code);
    }
}

TEST_CASE("translate recentres") {
    auto r = run({"translate", "1", "t*(t-1)*D + 1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("t") != std::string::npos);
    CHECK(run({"translate", "1/5", "t"}).code == 3);
}

}
