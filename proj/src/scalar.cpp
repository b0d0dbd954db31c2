#include "dcongr/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace dcongr {

Context::Context(long p, int prec, int tdeg, int opmax)
    : p_(p), prec_(prec), tdeg_(tdeg), opmax_(opmax) {
    const long limit = 2L * prec + 64;
    powers_.reserve(static_cast<size_t>(limit + 1));
    mpz_class acc = 1;
    for (long e = 0; e <= limit; ++e) {
        powers_.push_back(acc);
        acc *= p;
    }
}

std::shared_ptr<const Context> Context::make(long prime, int prec, int tdeg, int opmax) {
    if (prime < 2 || mpz_probab_prime_p(mpz_class(prime).get_mpz_t(), 25) == 0)
        throw Error(ErrorKind::InvalidContext, "prime must be a prime number >= 2");
    if (prec < 1 || tdeg < 1 || opmax < 1)
        throw Error(ErrorKind::InvalidContext, "prec, tdeg and opmax must be positive");
    return std::shared_ptr<const Context>(new Context(prime, prec, tdeg, opmax));
}

mpz_class Context::power(long e) const {
    if (e <= cache_limit()) return powers_[static_cast<size_t>(e)];
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(e));
    return r;
}

long remove_p(mpz_class& x, const Context& ctx) {
    if (x == 0) return kInfValuation;
    mpz_class pp = ctx.p();
    return static_cast<long>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
}

long valuation_of(const mpz_class& x, const Context& ctx) {
    if (x == 0) return kInfValuation;
    if (mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(ctx.p())) == 0) return 0;
    mpz_class y = x;
    return remove_p(y, ctx);
}

long valuation_of(const mpq_class& x, const Context& ctx) {
    if (x == 0) return kInfValuation;
    return valuation_of(mpz_class(x.get_num()), ctx) - valuation_of(mpz_class(x.get_den()), ctx);
}

std::string Magnitude::str() const {
    if (zero) return "0";
    if (log_p == 0) return "1";
    return "p^" + std::to_string(log_p);
}

namespace {

// Unit part of a nonzero rational modulo p^rel.
mpz_class rational_unit(const mpq_class& q, long v, int rel, const Context& ctx) {
    mpz_class num = q.get_num();
    mpz_class den = q.get_den();
    if (v > 0) {
        mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), ctx.power(v).get_mpz_t());
    } else if (v < 0) {
        mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), ctx.power(-v).get_mpz_t());
    }
    const mpz_class& mod = ctx.pow(rel);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    mpz_class u = num * inv;
    mpz_mod(u.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
    return u;
}

}  // namespace

PadicScalar PadicScalar::zero(Ctx ctx) {
    PadicScalar s;
    s.ctx_ = std::move(ctx);
    s.zero_ = true;
    s.exact_ = true;
    s.q_ = 0;
    return s;
}

PadicScalar PadicScalar::from_rational(Ctx ctx, const mpq_class& q) {
    PadicScalar s;
    s.ctx_ = std::move(ctx);
    s.exact_ = true;
    s.q_ = q;
    s.q_.canonicalize();
    s.zero_ = (s.q_ == 0);
    if (!s.zero_) s.v_ = valuation_of(s.q_, *s.ctx_);
    return s;
}

PadicScalar PadicScalar::from_int(Ctx ctx, long n) {
    return from_rational(std::move(ctx), mpq_class(n));
}

PadicScalar PadicScalar::capped(Ctx ctx, long v, const mpz_class& unit, int rel) {
    PadicScalar s;
    s.ctx_ = std::move(ctx);
    s.exact_ = false;
    s.zero_ = false;
    s.v_ = v;
    s.rel_ = std::clamp(rel, 1, s.ctx_->prec());
    s.u_ = unit;
    mpz_mod(s.u_.get_mpz_t(), s.u_.get_mpz_t(), s.ctx_->pow(s.rel_).get_mpz_t());
    if (mpz_divisible_ui_p(s.u_.get_mpz_t(), static_cast<unsigned long>(s.ctx_->p())) != 0)
        throw Error(ErrorKind::PrecisionExhausted, "capped unit part is divisible by p");
    return s;
}

mpz_class PadicScalar::unit() const {
    if (zero_) return 0;
    if (!exact_) return u_;
    return rational_unit(q_, v_, ctx_->prec(), *ctx_);
}

int PadicScalar::rel_prec() const { return exact_ ? ctx_->prec() : rel_; }

const mpq_class& PadicScalar::exact_value() const {
    if (!exact_) throw Error(ErrorKind::PrecisionExhausted, "scalar is not exact");
    return q_;
}

PadicScalar PadicScalar::to_capped() const {
    if (!exact_ || zero_) return *this;
    return capped(ctx_, v_, rational_unit(q_, v_, ctx_->prec(), *ctx_), ctx_->prec());
}

unsigned long PadicScalar::residue() const {
    if (zero_) return 0;
    if (v_ < 0) throw Error(ErrorKind::RangeError, "residue of a scalar with negative valuation");
    if (v_ > 0) return 0;
    mpz_class u = unit();
    return mpz_fdiv_ui(u.get_mpz_t(), static_cast<unsigned long>(ctx_->p()));
}

mpz_class PadicScalar::lift() const {
    if (zero_) return 0;
    if (v_ < 0) throw Error(ErrorKind::RangeError, "lift of a scalar with negative valuation");
    return ctx_->power(v_) * unit();
}

std::string PadicScalar::str() const {
    if (zero_) return "0";
    if (exact_) return q_.get_str();
    std::ostringstream os;
    os << ctx_->p() << "^" << v_ << "*" << u_.get_str() << " + O(" << ctx_->p() << "^"
       << (v_ + rel_) << ")";
    return os.str();
}

namespace {

PadicScalar capped_add(const PadicScalar& a, const PadicScalar& b) {
    const Ctx& ctx = a.ctx();
    const long va = a.valuation();
    const long vb = b.valuation();
    const long abs_a = va + a.rel_prec();
    const long abs_b = vb + b.rel_prec();
    const long v0 = std::min(va, vb);
    const long absp = std::min(abs_a, abs_b);
    const long width = absp - v0;
    if (width <= 0)
        throw Error(ErrorKind::PrecisionExhausted, "sum has no certified digits");
    mpz_class s = ctx->power(va - v0) * a.unit() + ctx->power(vb - v0) * b.unit();
    const mpz_class mod = ctx->power(width);
    mpz_mod(s.get_mpz_t(), s.get_mpz_t(), mod.get_mpz_t());
    if (s == 0)
        throw Error(ErrorKind::PrecisionExhausted,
                    "cancellation drives the sum below the precision floor");
    const long extra = remove_p(s, *ctx);
    const long v = v0 + extra;
    return PadicScalar::capped(ctx, v, s, static_cast<int>(absp - v));
}

}  // namespace

PadicScalar scalar_arith(const PadicScalar& x, const PadicScalar& y, ArithOp op) {
    const Ctx& ctx = x.ctx();
    switch (op) {
        case ArithOp::Neg:
            if (x.is_zero()) return x;
            if (x.is_exact()) return PadicScalar::from_rational(ctx, -x.exact_value());
            return PadicScalar::capped(ctx, x.valuation(), -x.unit(), x.rel_prec());
        case ArithOp::Inv:
            if (x.is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
            if (x.is_exact()) return PadicScalar::from_rational(ctx, 1 / x.exact_value());
            {
                mpz_class inv;
                mpz_invert(inv.get_mpz_t(), x.unit().get_mpz_t(),
                           ctx->pow(x.rel_prec()).get_mpz_t());
                return PadicScalar::capped(ctx, -x.valuation(), inv, x.rel_prec());
            }
        case ArithOp::Mul:
            if (x.is_zero() || y.is_zero()) return PadicScalar::zero(ctx);
            if (x.is_exact() && y.is_exact())
                return PadicScalar::from_rational(ctx, x.exact_value() * y.exact_value());
            {
                const int rel = std::min(x.rel_prec(), y.rel_prec());
                return PadicScalar::capped(ctx, x.valuation() + y.valuation(), x.unit() * y.unit(),
                                           rel);
            }
        case ArithOp::Add:
            if (x.is_zero()) return y;
            if (y.is_zero()) return x;
            if (x.is_exact() && y.is_exact())
                return PadicScalar::from_rational(ctx, x.exact_value() + y.exact_value());
            return capped_add(x, y);
    }
    return x;
}

long valuation(const PadicScalar& x) { return x.valuation(); }

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
    return scalar_arith(a, b, ArithOp::Add);
}
PadicScalar operator-(const PadicScalar& a) { return scalar_arith(a, a, ArithOp::Neg); }
PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + (-b); }
PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
    return scalar_arith(a, b, ArithOp::Mul);
}
PadicScalar inverse(const PadicScalar& a) { return scalar_arith(a, a, ArithOp::Inv); }

bool congruent(const PadicScalar& a, const PadicScalar& b) {
    if (a.is_exact() && b.is_exact()) {
        if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
        return a.exact_value() == b.exact_value();
    }
    try {
        (void)(a - b);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::PrecisionExhausted) return true;
        throw;
    }
    return false;
}

}  // namespace dcongr
