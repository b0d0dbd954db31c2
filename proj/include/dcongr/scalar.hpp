#pragma once

// p-adic scalars over Q_p and the arithmetic context shared by a session.
//
// Two storage modes coexist:
//   * exact: a rational number held in arbitrary precision (literal input);
//   * capped: valuation v plus a unit u known modulo p^rel (rel <= prec).
// Exact values stay exact under exact arithmetic and are projected to the
// capped mode as soon as they meet a capped operand.

#include <gmpxx.h>

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "dcongr/error.hpp"

namespace dcongr {

inline constexpr long kInfValuation = std::numeric_limits<long>::max();

class Context {
public:
    static std::shared_ptr<const Context> make(long prime = 5, int prec = 40,
                                               int tdeg = 64, int opmax = 64);

    long p() const { return p_; }
    int prec() const { return prec_; }
    int tdeg() const { return tdeg_; }
    int opmax() const { return opmax_; }

    // p^e for 0 <= e <= cache_limit().
    const mpz_class& pow(long e) const { return powers_[static_cast<size_t>(e)]; }
    long cache_limit() const { return static_cast<long>(powers_.size()) - 1; }
    // p^e for any e >= 0.
    mpz_class power(long e) const;
    // p^prec, the modulus of capped residues.
    const mpz_class& modulus() const { return pow(prec_); }

private:
    Context(long p, int prec, int tdeg, int opmax);

    long p_;
    int prec_;
    int tdeg_;
    int opmax_;
    std::vector<mpz_class> powers_;
};

using Ctx = std::shared_ptr<const Context>;

// Strip all factors of p from x (x != 0); returns the number removed.
long remove_p(mpz_class& x, const Context& ctx);
// p-adic valuation of a nonzero integer / rational.
long valuation_of(const mpz_class& x, const Context& ctx);
long valuation_of(const mpq_class& x, const Context& ctx);

// Absolute value |x| = p^log_p, or exact zero.
struct Magnitude {
    bool zero = true;
    long log_p = 0;

    static Magnitude of_valuation(long v) {
        if (v == kInfValuation) return Magnitude{};
        return Magnitude{false, -v};
    }
    static Magnitude one() { return Magnitude{false, 0}; }
    long valuation() const { return zero ? kInfValuation : -log_p; }

    friend bool operator==(const Magnitude& a, const Magnitude& b) {
        return a.zero == b.zero && (a.zero || a.log_p == b.log_p);
    }
    friend bool operator!=(const Magnitude& a, const Magnitude& b) { return !(a == b); }
    friend bool operator<(const Magnitude& a, const Magnitude& b) {
        if (b.zero) return false;
        if (a.zero) return true;
        return a.log_p < b.log_p;
    }
    friend bool operator<=(const Magnitude& a, const Magnitude& b) { return !(b < a); }
    friend Magnitude operator*(const Magnitude& a, const Magnitude& b) {
        if (a.zero || b.zero) return Magnitude{};
        return Magnitude{false, a.log_p + b.log_p};
    }
    std::string str() const;
};

class PadicScalar {
public:
    PadicScalar() = default;

    static PadicScalar zero(Ctx ctx);
    static PadicScalar from_rational(Ctx ctx, const mpq_class& q);
    static PadicScalar from_int(Ctx ctx, long n);
    // Capped value p^v * unit, unit coprime to p, known modulo p^rel.
    static PadicScalar capped(Ctx ctx, long v, const mpz_class& unit, int rel);

    const Ctx& ctx() const { return ctx_; }
    bool is_zero() const { return zero_; }
    bool is_exact() const { return exact_; }
    long valuation() const { return zero_ ? kInfValuation : v_; }
    Magnitude magnitude() const { return Magnitude::of_valuation(valuation()); }
    // Unit part; for exact values the unit is reduced to the context precision.
    mpz_class unit() const;
    int rel_prec() const;
    const mpq_class& exact_value() const;

    PadicScalar to_capped() const;
    // Residue in F_p of a scalar of non-negative valuation.
    unsigned long residue() const;
    // Integer representative modulo p^(v + rel) for v >= 0.
    mpz_class lift() const;
    std::string str() const;

private:
    Ctx ctx_;
    bool zero_ = true;
    bool exact_ = true;
    long v_ = 0;
    mpz_class u_;
    int rel_ = 0;
    mpq_class q_;
};

enum class ArithOp { Add, Mul, Inv, Neg };

// Field arithmetic in K; y is ignored for Inv and Neg.
PadicScalar scalar_arith(const PadicScalar& x, const PadicScalar& y, ArithOp op);
long valuation(const PadicScalar& x);

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
PadicScalar operator-(const PadicScalar& a, const PadicScalar& b);
PadicScalar operator-(const PadicScalar& a);
PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
PadicScalar inverse(const PadicScalar& a);

// True when a and b agree to the precision of the coarser one.
bool congruent(const PadicScalar& a, const PadicScalar& b);

}  // namespace dcongr
