#pragma once

// Level-k differential operators H = sum_n a_n X^n with X = p^k d/dt and
// Tate series coefficients a_n written on the left.

#include <string>
#include <vector>

#include "dcongr/tate.hpp"

namespace dcongr {

class DiffOp {
public:
    DiffOp() = default;
    DiffOp(Ctx ctx, int level);

    static DiffOp from_coeffs(Ctx ctx, int level, std::vector<TateSeries> coeffs,
                              bool truncated = false);
    static DiffOp function(const TateSeries& f, int level);
    static DiffOp constant(Ctx ctx, int level, const mpq_class& c);
    // c * X^n.
    static DiffOp monomial(Ctx ctx, int level, const mpq_class& c, int n);

    const Ctx& ctx() const { return ctx_; }
    int level() const { return level_; }
    bool is_zero() const { return a_.empty(); }
    // Highest stored order, -1 for zero.
    int order() const { return static_cast<int>(a_.size()) - 1; }
    TateSeries coeff(int n) const;
    const std::vector<TateSeries>& coeffs() const { return a_; }
    bool truncated() const;
    bool is_exact() const;

    // Minimal coefficient valuation; kInfValuation for zero.
    long min_valuation() const;
    // Coarsest absolute precision among coefficients.
    long abs_precision() const;

    DiffOp operator-() const;
    DiffOp scaled_p(long s) const;
    DiffOp scaled(const PadicScalar& c) const;
    // Left multiplication by a function.
    DiffOp left_times(const TateSeries& f) const;
    // Orders < n and orders >= n.
    DiffOp orders_below(int n) const;
    DiffOp orders_from(int n) const;
    DiffOp translate(const mpq_class& c) const;
    DiffOp with_abs_precision(long abs) const;
    // Norm-1 copy: p^s * H with s = min_valuation.
    DiffOp normalized() const;

    friend DiffOp operator+(const DiffOp& a, const DiffOp& b);
    friend DiffOp operator-(const DiffOp& a, const DiffOp& b);

    std::string str() const;

private:
    void trim();

    Ctx ctx_;
    int level_ = 0;
    bool truncated_ = false;
    std::vector<TateSeries> a_;

};

Magnitude op_norm(const DiffOp& h);
int nbar(const DiffOp& h);
int nk(const DiffOp& h);

DiffOp op_mul(const DiffOp& h, const DiffOp& q);
DiffOp rescale_level(const DiffOp& h, int k_target);
// [H, t] and [H, X].
DiffOp bracket_t(const DiffOp& h);
DiffOp bracket_del(const DiffOp& h);
// Right inverse in the truncated model.
DiffOp op_invert(const DiffOp& h);
// Re-express H, written in powers of p^k*base*d, in powers of p^k*(u*base)*d.
DiffOp rebase_derivation(const DiffOp& h, const TateSeries& u);
DiffOp rebase_derivation(const DiffOp& h, const TateSeries& u, const TateSeries& base);

// Lower bound on the valuation of a - b: nonzero coefficients contribute
// their valuation, zero-to-precision coefficients their absolute precision.
long residual_valuation(const DiffOp& a, const DiffOp& b);
// True when residual_valuation(a, b) >= min_valuation(b) + digits.
bool op_congruent(const DiffOp& a, const DiffOp& b, long digits);

}  // namespace dcongr
