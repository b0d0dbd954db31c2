#include "dcongr/tate.hpp"

#include <algorithm>
#include <sstream>

#include "dcongr/kernels.hpp"

namespace dcongr {

namespace {

// Residue of a p-integral rational modulo m.
mpz_class rational_mod(const mpq_class& q, const mpz_class& m) {
    mpz_class den = q.get_den();
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
        throw Error(ErrorKind::RangeError, "rational is not p-integral");
    mpz_class r = mpz_class(q.get_num()) * inv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    return r;
}

TateSeries capped_zero(const Ctx& ctx, long abs) {
    return TateSeries::capped(ctx, abs - 1, {}, 1);
}

}  // namespace

TateSeries::TateSeries(Ctx ctx) : ctx_(std::move(ctx)) {}

TateSeries TateSeries::from_rationals(Ctx ctx, std::vector<mpq_class> coeffs) {
    TateSeries f(std::move(ctx));
    f.exact_ = true;
    for (auto& c : coeffs) c.canonicalize();
    f.q_ = std::move(coeffs);
    f.trim();
    return f;
}

TateSeries TateSeries::constant(Ctx ctx, const mpq_class& c) {
    return from_rationals(std::move(ctx), {c});
}

TateSeries TateSeries::monomial(Ctx ctx, const mpq_class& c, int degree) {
    std::vector<mpq_class> q(static_cast<size_t>(degree) + 1, 0);
    q.back() = c;
    return from_rationals(std::move(ctx), std::move(q));
}

TateSeries TateSeries::from_scalar(Ctx ctx, const PadicScalar& c) {
    if (c.is_zero()) return TateSeries(std::move(ctx));
    if (c.is_exact()) return constant(std::move(ctx), c.exact_value());
    return capped(std::move(ctx), c.valuation(), {c.unit()}, c.rel_prec());
}

TateSeries TateSeries::capped(Ctx ctx, long shift, std::vector<mpz_class> residues, int rel) {
    TateSeries f(std::move(ctx));
    f.exact_ = false;
    f.shift_ = shift;
    f.rel_ = std::clamp(rel, 1, f.ctx_->prec());
    f.r_ = std::move(residues);
    const mpz_class& m = f.ctx_->pow(f.rel_);
    for (auto& r : f.r_) mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    f.trim();
    f.normalize();
    return f;
}

void TateSeries::trim() {
    const size_t cap = static_cast<size_t>(ctx_->tdeg()) + 1;
    if (exact_) {
        if (q_.size() > cap) {
            for (size_t i = cap; i < q_.size(); ++i)
                if (q_[i] != 0) truncated_ = true;
            q_.resize(cap);
        }
        while (!q_.empty() && q_.back() == 0) q_.pop_back();
    } else {
        if (r_.size() > cap) {
            for (size_t i = cap; i < r_.size(); ++i)
                if (r_[i] != 0) truncated_ = true;
            r_.resize(cap);
        }
        while (!r_.empty() && r_.back() == 0) r_.pop_back();
    }
}

void TateSeries::normalize() {
    if (exact_ || r_.empty()) return;
    const unsigned long p = static_cast<unsigned long>(ctx_->p());
    long m = rel_;
    for (const auto& r : r_) {
        if (r == 0) continue;
        if (mpz_divisible_ui_p(r.get_mpz_t(), p) == 0) return;
        m = std::min(m, valuation_of(r, *ctx_));
    }
    if (m <= 0 || m >= rel_) return;
    const mpz_class& d = ctx_->pow(m);
    for (auto& r : r_) mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), d.get_mpz_t());
    shift_ += m;
    rel_ -= static_cast<int>(m);
}

bool TateSeries::is_zero() const { return exact_ ? q_.empty() : r_.empty(); }

int TateSeries::degree() const {
    return static_cast<int>(exact_ ? q_.size() : r_.size()) - 1;
}

PadicScalar TateSeries::coeff(int i) const {
    if (i < 0 || i > degree()) return PadicScalar::zero(ctx_);
    const size_t k = static_cast<size_t>(i);
    if (exact_) return PadicScalar::from_rational(ctx_, q_[k]);
    if (r_[k] == 0) return PadicScalar::zero(ctx_);
    mpz_class u = r_[k];
    const long v = remove_p(u, *ctx_);
    return PadicScalar::capped(ctx_, shift_ + v, u, rel_ - static_cast<int>(v));
}

long TateSeries::coeff_valuation(int i) const {
    if (i < 0 || i > degree()) return kInfValuation;
    const size_t k = static_cast<size_t>(i);
    if (exact_) return valuation_of(q_[k], *ctx_);
    if (r_[k] == 0) return kInfValuation;
    return shift_ + valuation_of(r_[k], *ctx_);
}

long TateSeries::min_valuation() const {
    if (is_zero()) return kInfValuation;
    if (!exact_) return shift_;
    long m = kInfValuation;
    for (const auto& c : q_)
        if (c != 0) m = std::min(m, valuation_of(c, *ctx_));
    return m;
}

long TateSeries::abs_precision() const {
    return exact_ ? kInfValuation : shift_ + rel_;
}

Magnitude TateSeries::gauss_norm() const { return Magnitude::of_valuation(min_valuation()); }

int TateSeries::n_index() const {
    if (is_zero()) throw Error(ErrorKind::ZeroInput, "n_index of the zero series");
    const long m = min_valuation();
    for (int i = 0; i <= degree(); ++i)
        if (coeff_valuation(i) == m) return i;
    return 0;
}

TateSeries TateSeries::to_capped() const {
    if (!exact_) return *this;
    if (q_.empty()) return *this;
    const long s = min_valuation();
    const int rel = ctx_->prec();
    const mpz_class& m = ctx_->pow(rel);
    std::vector<mpz_class> r(q_.size());
    for (size_t i = 0; i < q_.size(); ++i) {
        if (q_[i] == 0) continue;
        mpq_class scaled = q_[i];
        if (s > 0) scaled /= ctx_->power(s);
        if (s < 0) scaled *= ctx_->power(-s);
        r[i] = rational_mod(scaled, m);
    }
    TateSeries f = capped(ctx_, s, std::move(r), rel);
    f.truncated_ = truncated_;
    return f;
}

TateSeries TateSeries::operator-() const {
    TateSeries f = *this;
    if (exact_) {
        for (auto& c : f.q_) c = -c;
    } else {
        const mpz_class& m = ctx_->pow(rel_);
        for (auto& r : f.r_)
            if (r != 0) r = m - r;
    }
    return f;
}

TateSeries TateSeries::scaled_p(long s) const {
    TateSeries f = *this;
    if (exact_) {
        if (s == 0) return f;
        const mpz_class pw = ctx_->power(std::labs(s));
        for (auto& c : f.q_) {
            if (s > 0) c *= pw;
            else c /= pw;
        }
    } else {
        f.shift_ += s;
    }
    return f;
}

TateSeries TateSeries::scaled(const mpq_class& c) const {
    return scaled(PadicScalar::from_rational(ctx_, c));
}

TateSeries TateSeries::scaled(const PadicScalar& c) const {
    if (c.is_zero()) return TateSeries(ctx_);
    if (exact_ && c.is_exact()) {
        TateSeries f = *this;
        for (auto& x : f.q_) x *= c.exact_value();
        return f;
    }
    const TateSeries a = to_capped();
    if (a.is_exact()) return a;  // exact zero
    const int rel = std::min(a.rel_, c.rel_prec());
    const long shift = a.shift_ + c.valuation();
    const mpz_class u = c.unit();
    std::vector<mpz_class> r(a.r_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = a.r_[i] * u;
    TateSeries f = capped(ctx_, shift, std::move(r), rel);
    f.truncated_ = truncated_;
    return f;
}

TateSeries TateSeries::derivative() const {
    TateSeries f = *this;
    if (exact_) {
        if (q_.empty()) return f;
        f.q_.assign(q_.size() - 1, 0);
        for (size_t i = 1; i < q_.size(); ++i) f.q_[i - 1] = q_[i] * static_cast<long>(i);
        f.trim();
        return f;
    }
    if (r_.empty()) return f;
    std::vector<mpz_class> r(r_.size() - 1);
    for (size_t i = 1; i < r_.size(); ++i) r[i - 1] = r_[i] * static_cast<unsigned long>(i);
    TateSeries g = capped(ctx_, shift_, std::move(r), rel_);
    g.truncated_ = truncated_;
    return g;
}

TateSeries TateSeries::low_part(int n) const {
    TateSeries f = *this;
    const size_t k = static_cast<size_t>(std::max(n, 0));
    if (exact_) {
        if (f.q_.size() > k) f.q_.resize(k);
        f.trim();
        return f;
    }
    std::vector<mpz_class> r(r_.begin(), r_.begin() + static_cast<long>(std::min(k, r_.size())));
    TateSeries g = capped(ctx_, shift_, std::move(r), rel_);
    g.truncated_ = truncated_;
    return g;
}

TateSeries TateSeries::divided_by_t(int n) const {
    TateSeries f = *this;
    const size_t k = static_cast<size_t>(std::max(n, 0));
    if (exact_) {
        if (f.q_.size() <= k) f.q_.clear();
        else f.q_.erase(f.q_.begin(), f.q_.begin() + static_cast<long>(k));
        f.trim();
        return f;
    }
    std::vector<mpz_class> r;
    if (r_.size() > k) r.assign(r_.begin() + static_cast<long>(k), r_.end());
    TateSeries g = capped(ctx_, shift_, std::move(r), rel_);
    g.truncated_ = truncated_;
    return g;
}

TateSeries TateSeries::times_t(int n) const {
    TateSeries f = *this;
    if (n <= 0 || is_zero()) return f;
    if (exact_) {
        f.q_.insert(f.q_.begin(), static_cast<size_t>(n), mpq_class(0));
        f.trim();
        return f;
    }
    std::vector<mpz_class> r(static_cast<size_t>(n));
    r.insert(r.end(), r_.begin(), r_.end());
    TateSeries g = capped(ctx_, shift_, std::move(r), rel_);
    g.truncated_ = truncated_ || g.truncated_;
    return g;
}

TateSeries TateSeries::translate(const mpq_class& c) const {
    if (c != 0 && valuation_of(c, *ctx_) < 0)
        throw Error(ErrorKind::RangeError, "translation centre must lie in Z_p");
    if (is_zero() || c == 0) return *this;
    if (exact_) {
        std::vector<mpq_class> acc;
        for (int i = degree(); i >= 0; --i) {
            std::vector<mpq_class> next(acc.size() + 1, 0);
            for (size_t j = 0; j < acc.size(); ++j) {
                next[j + 1] += acc[j];
                next[j] += acc[j] * c;
            }
            next[0] += q_[static_cast<size_t>(i)];
            acc = std::move(next);
        }
        TateSeries f = from_rationals(ctx_, std::move(acc));
        f.truncated_ = truncated_;
        return f;
    }
    const mpz_class& m = ctx_->pow(rel_);
    const mpz_class cc = rational_mod(c, m);
    std::vector<mpz_class> acc;
    for (int i = degree(); i >= 0; --i) {
        std::vector<mpz_class> next(acc.size() + 1, 0);
        for (size_t j = 0; j < acc.size(); ++j) {
            next[j + 1] += acc[j];
            mpz_addmul(next[j].get_mpz_t(), acc[j].get_mpz_t(), cc.get_mpz_t());
        }
        next[0] += r_[static_cast<size_t>(i)];
        for (auto& x : next) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
        acc = std::move(next);
    }
    TateSeries f = capped(ctx_, shift_, std::move(acc), rel_);
    f.truncated_ = truncated_;
    return f;
}

std::vector<unsigned long> TateSeries::reduce_mod_p() const {
    std::vector<unsigned long> out;
    if (is_zero()) return out;
    const long v = min_valuation();
    if (v < 0) throw Error(ErrorKind::RangeError, "reduction of a non-integral series");
    if (v > 0) return out;
    const unsigned long p = static_cast<unsigned long>(ctx_->p());
    const mpz_class pz = ctx_->p();
    out.assign(static_cast<size_t>(degree()) + 1, 0);
    for (int i = 0; i <= degree(); ++i) {
        const size_t k = static_cast<size_t>(i);
        if (exact_) {
            if (q_[k] == 0 || valuation_of(q_[k], *ctx_) > 0) continue;
            out[k] = mpz_get_ui(rational_mod(q_[k], pz).get_mpz_t());
        } else {
            out[k] = mpz_fdiv_ui(r_[k].get_mpz_t(), p);
        }
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

TateSeries TateSeries::with_abs_precision(long abs) const {
    const TateSeries a = to_capped();
    if (a.is_exact()) return capped_zero(ctx_, abs);
    if (abs >= a.abs_precision()) return a;
    const long rel = abs - a.shift_;
    if (rel <= 0) return capped_zero(ctx_, abs);
    TateSeries f = capped(ctx_, a.shift_, a.r_, static_cast<int>(rel));
    f.truncated_ = truncated_;
    return f;
}

TateSeries operator+(const TateSeries& a, const TateSeries& b) {
    if (a.exact_ && a.q_.empty()) {
        TateSeries f = b;
        f.truncated_ = a.truncated_ || b.truncated_;
        return f;
    }
    if (b.exact_ && b.q_.empty()) {
        TateSeries f = a;
        f.truncated_ = a.truncated_ || b.truncated_;
        return f;
    }
    const Ctx& ctx = a.ctx_;
    if (a.exact_ && b.exact_) {
        std::vector<mpq_class> q(std::max(a.q_.size(), b.q_.size()), 0);
        for (size_t i = 0; i < a.q_.size(); ++i) q[i] += a.q_[i];
        for (size_t i = 0; i < b.q_.size(); ++i) q[i] += b.q_[i];
        TateSeries f = TateSeries::from_rationals(ctx, std::move(q));
        f.truncated_ = a.truncated_ || b.truncated_;
        return f;
    }
    const TateSeries A = a.to_capped();
    const TateSeries B = b.to_capped();
    const long abs = std::min(A.abs_precision(), B.abs_precision());
    const long shift = std::min(A.shift_, B.shift_);
    const long rel = abs - shift;
    if (rel <= 0) {
        TateSeries z = capped_zero(ctx, abs);
        z.truncated_ = a.truncated_ || b.truncated_;
        return z;
    }
    const mpz_class& m = ctx->pow(rel);
    std::vector<mpz_class> r(std::max(A.r_.size(), B.r_.size()));
    auto accumulate = [&](const TateSeries& S) {
        const long d = S.shift_ - shift;
        if (d >= rel) return;
        const mpz_class& scale = ctx->pow(d);
        for (size_t i = 0; i < S.r_.size(); ++i)
            mpz_addmul(r[i].get_mpz_t(), S.r_[i].get_mpz_t(), scale.get_mpz_t());
    };
    accumulate(A);
    accumulate(B);
    for (auto& x : r) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    TateSeries f = TateSeries::capped(ctx, shift, std::move(r), static_cast<int>(rel));
    f.truncated_ = a.truncated_ || b.truncated_;
    return f;
}

TateSeries operator-(const TateSeries& a, const TateSeries& b) { return a + (-b); }

TateSeries operator*(const TateSeries& a, const TateSeries& b) {
    const Ctx& ctx = a.ctx_;
    const bool trunc = a.truncated_ || b.truncated_;
    if ((a.exact_ && a.q_.empty()) || (b.exact_ && b.q_.empty())) {
        TateSeries z(ctx);
        z.truncated_ = trunc;
        return z;
    }
    if (a.exact_ && b.exact_) {
        std::vector<mpq_class> q(a.q_.size() + b.q_.size() - 1, 0);
        for (size_t i = 0; i < a.q_.size(); ++i) {
            if (a.q_[i] == 0) continue;
            for (size_t j = 0; j < b.q_.size(); ++j) q[i + j] += a.q_[i] * b.q_[j];
        }
        TateSeries f = TateSeries::from_rationals(ctx, std::move(q));
        f.truncated_ = f.truncated_ || trunc;
        return f;
    }
    const TateSeries A = a.to_capped();
    const TateSeries B = b.to_capped();
    if (A.is_zero() || B.is_zero()) {
        const long abs = std::min(A.abs_precision() + B.shift_, B.abs_precision() + A.shift_);
        TateSeries z = capped_zero(ctx, abs);
        z.truncated_ = trunc;
        return z;
    }
    const int rel = std::min(A.rel_, B.rel_);
    const mpz_class& m = ctx->pow(rel);
    const size_t full = A.r_.size() + B.r_.size() - 1;
    auto reduced = [&](const TateSeries& s) {
        std::vector<mpz_class> v = s.r_;
        if (s.rel_ > rel)
            for (auto& x : v) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
        return v;
    };
    std::vector<mpz_class> r;
    kernels::convolve_mod(reduced(A), reduced(B), full, m, r);
    TateSeries f = TateSeries::capped(ctx, A.shift_ + B.shift_, std::move(r), rel);
    f.truncated_ = f.truncated_ || trunc;
    return f;
}

std::string TateSeries::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= degree(); ++i) {
        const PadicScalar c = coeff(i);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (i > 0) os << "*t^" << i;
    }
    return os.str();
}

Magnitude gauss_norm(const TateSeries& f) { return f.gauss_norm(); }
int n_index(const TateSeries& f) { return f.n_index(); }
TateSeries series_derivative(const TateSeries& f) { return f.derivative(); }

TateSeries series_invert(const TateSeries& f) {
    if (f.is_zero()) throw Error(ErrorKind::NotAUnit, "zero series is not a unit");
    if (f.n_index() != 0) throw Error(ErrorKind::NotAUnit, "series with N(f) > 0 is not a unit");
    const Ctx& ctx = f.ctx();
    if (f.is_exact() && f.degree() == 0)
        return TateSeries::constant(ctx, 1 / f.rationals()[0]);
    const TateSeries F = f.to_capped();
    const int rel = F.rel();
    const mpz_class& m = ctx->pow(rel);
    const auto& r = F.residues();
    const size_t len = static_cast<size_t>(ctx->tdeg()) + 1;
    std::vector<mpz_class> g(len);
    mpz_class g0;
    mpz_invert(g0.get_mpz_t(), r[0].get_mpz_t(), m.get_mpz_t());
    g[0] = g0;
    mpz_class acc;
    for (size_t n = 1; n < len; ++n) {
        acc = 0;
        const size_t top = std::min(n, r.size() - 1);
        for (size_t i = 1; i <= top; ++i)
            mpz_addmul(acc.get_mpz_t(), r[i].get_mpz_t(), g[n - i].get_mpz_t());
        mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
        acc *= g0;
        mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
        g[n] = acc == 0 ? mpz_class(0) : mpz_class(m - acc);
    }
    TateSeries inv = TateSeries::capped(ctx, -F.shift(), std::move(g), rel);
    return inv;
}

bool series_congruent(const TateSeries& a, const TateSeries& b) {
    return (a - b).is_zero();
}

}  // namespace dcongr
