#pragma once

// Truncated one-variable Tate series f = sum c_i t^i, i <= tdeg.
//
// Exact series hold rational coefficients. Capped series share one exponent:
// c_i = p^shift * r_i with r_i known modulo p^rel, so the whole series is
// known modulo p^(shift + rel). For a nonzero capped series shift equals the
// minimal coefficient valuation.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "dcongr/scalar.hpp"

namespace dcongr {

class TateSeries {
public:
    TateSeries() = default;
    explicit TateSeries(Ctx ctx);

    static TateSeries from_rationals(Ctx ctx, std::vector<mpq_class> coeffs);
    static TateSeries constant(Ctx ctx, const mpq_class& c);
    static TateSeries monomial(Ctx ctx, const mpq_class& c, int degree);
    static TateSeries from_scalar(Ctx ctx, const PadicScalar& c);
    // Capped series p^shift * sum r_i t^i with residues known modulo p^rel.
    static TateSeries capped(Ctx ctx, long shift, std::vector<mpz_class> residues, int rel);

    const Ctx& ctx() const { return ctx_; }
    bool is_exact() const { return exact_; }
    bool is_zero() const;
    // Highest stored index with a nonzero coefficient, -1 for zero.
    int degree() const;
    bool truncated() const { return truncated_; }

    PadicScalar coeff(int i) const;
    long coeff_valuation(int i) const;
    long min_valuation() const;
    // Absolute precision: the series is known modulo p^abs_precision().
    long abs_precision() const;
    long shift() const { return shift_; }
    int rel() const { return rel_; }
    const std::vector<mpz_class>& residues() const { return r_; }
    const std::vector<mpq_class>& rationals() const { return q_; }

    Magnitude gauss_norm() const;
    int n_index() const;

    TateSeries to_capped() const;
    TateSeries operator-() const;
    TateSeries scaled_p(long s) const;
    TateSeries scaled(const PadicScalar& c) const;
    TateSeries scaled(const mpq_class& c) const;
    TateSeries derivative() const;
    // Coefficients of degree < n.
    TateSeries low_part(int n) const;
    // (f - low_part(n)) / t^n.
    TateSeries divided_by_t(int n) const;
    TateSeries times_t(int n) const;
    // f(t + c) for c in Z_p.
    TateSeries translate(const mpq_class& c) const;
    // Residues mod p of an integral series.
    std::vector<unsigned long> reduce_mod_p() const;
    // Same data at a coarser absolute precision.
    TateSeries with_abs_precision(long abs) const;

    friend TateSeries operator+(const TateSeries& a, const TateSeries& b);
    friend TateSeries operator-(const TateSeries& a, const TateSeries& b);
    friend TateSeries operator*(const TateSeries& a, const TateSeries& b);

    std::string str() const;

private:
    void trim();
    void normalize();

    Ctx ctx_;
    bool exact_ = true;
    bool truncated_ = false;
    std::vector<mpq_class> q_;
    long shift_ = 0;
    int rel_ = 0;
    std::vector<mpz_class> r_;
};

Magnitude gauss_norm(const TateSeries& f);
int n_index(const TateSeries& f);
TateSeries series_invert(const TateSeries& f);
TateSeries series_derivative(const TateSeries& f);
// Same series up to the coarser of the two precisions.
bool series_congruent(const TateSeries& a, const TateSeries& b);

}  // namespace dcongr
