#pragma once

// Shared fixtures for the test suites: seeded random operators and shorthands.

#include <random>
#include <vector>

#include "dcongr/dop.hpp"

namespace dcongr::testing {

inline DiffOp fn(const Ctx& ctx, int level, std::vector<mpq_class> coeffs) {
    return DiffOp::function(TateSeries::from_rationals(ctx, std::move(coeffs)), level);
}

inline DiffOp xpow(const Ctx& ctx, int level, int n) {
    return DiffOp::monomial(ctx, level, 1, n);
}

inline DiffOp one(const Ctx& ctx, int level) { return DiffOp::constant(ctx, level, 1); }

// prod_{n=1..depth} (1 - p^n d) at level 0.
inline DiffOp example_product(const Ctx& ctx, int depth) {
    DiffOp acc = one(ctx, 0);
    for (int n = 1; n <= depth; ++n)
        acc = op_mul(acc, one(ctx, 0) - xpow(ctx, 0, 1).scaled_p(n));
    return acc;
}

struct OpShape {
    int level = 1;
    int max_order = 4;
    int max_tdeg = 6;
    int max_vshift = 2;   // per-coefficient extra p-power in [0, max_vshift]
    double density = 0.6; // probability a coefficient slot is nonzero
};

class OpGen {
public:
    explicit OpGen(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(rng_);
    }
    bool coin(double prob) { return std::bernoulli_distribution(prob)(rng_); }

    // Integral coefficient series with random p-power shift.
    TateSeries series(const Ctx& ctx, int max_tdeg, int max_vshift, double density) {
        int deg = static_cast<int>(integer(0, max_tdeg));
        std::vector<mpq_class> c(static_cast<size_t>(deg) + 1);
        for (auto& x : c)
            if (coin(density)) x = integer(-40, 40);
        mpz_class scale = ctx->power(integer(0, max_vshift));
        for (auto& x : c) x *= scale;
        return TateSeries::from_rationals(ctx, std::move(c));
    }

    // Nonzero exact operator, not normalized.
    DiffOp op(const Ctx& ctx, const OpShape& s) {
        for (;;) {
            int ord = static_cast<int>(integer(0, s.max_order));
            std::vector<TateSeries> a;
            for (int n = 0; n <= ord; ++n)
                a.push_back(series(ctx, s.max_tdeg, s.max_vshift, s.density));
            DiffOp h = DiffOp::from_coeffs(ctx, s.level, std::move(a));
            if (!h.is_zero()) return h;
        }
    }

    DiffOp normalized_op(const Ctx& ctx, const OpShape& s) { return op(ctx, s).normalized(); }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace dcongr::testing
