#include "dcongr/dop.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace dcongr {

namespace {

using Derivation = std::function<TateSeries(const TateSeries&)>;

Derivation standard_derivation(const Ctx& ctx, int level, const TateSeries& base) {
    const bool trivial = base.is_exact() && base.degree() == 0 && base.rationals()[0] == 1;
    (void)ctx;
    if (trivial)
        return [level](const TateSeries& f) { return f.derivative().scaled_p(level); };
    return [level, base](const TateSeries& f) { return (base * f.derivative()).scaled_p(level); };
}

mpq_class binomial(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return mpq_class(r);
}

// Product in the Ore algebra with X f = f X + delta(f); orders > opmax dropped.
std::vector<TateSeries> ore_product(const Ctx& ctx, const std::vector<TateSeries>& a,
                                    const std::vector<TateSeries>& b, const Derivation& delta,
                                    bool& truncated) {
    const int da = static_cast<int>(a.size()) - 1;
    const int db = static_cast<int>(b.size()) - 1;
    const int opmax = ctx->opmax();
    // derivs[j][l] = delta^l(b_j), stopping at the first zero.
    std::vector<std::vector<TateSeries>> derivs(b.size());
    for (int j = 0; j <= db; ++j) {
        derivs[j].push_back(b[j]);
        for (int l = 1; l <= da; ++l) {
            if (derivs[j].back().is_zero()) break;
            derivs[j].push_back(delta(derivs[j].back()));
        }
    }
    const int top = da + db;
    std::vector<TateSeries> out(static_cast<size_t>(std::min(top, opmax) + 1), TateSeries(ctx));
    for (int i = 0; i <= da; ++i) {
        if (a[i].is_zero()) continue;
        for (int s = -i; s <= db; ++s) {
            const int u = i + s;
            // S = sum_l C(i, l) delta^l(b_{s + l}).
            TateSeries acc(ctx);
            bool any = false;
            for (int l = std::max(0, -s); l <= i && s + l <= db; ++l) {
                const auto& chain = derivs[static_cast<size_t>(s + l)];
                if (static_cast<size_t>(l) >= chain.size()) continue;
                const TateSeries& d = chain[static_cast<size_t>(l)];
                if (d.is_zero()) continue;
                acc = acc + (l == 0 ? d : d.scaled(binomial(i, l)));
                any = true;
            }
            if (!any) continue;
            TateSeries term = a[i] * acc;
            if (u > opmax) {
                if (!term.is_zero()) truncated = true;
                continue;
            }
            out[static_cast<size_t>(u)] = out[static_cast<size_t>(u)] + term;
        }
    }
    return out;
}

}  // namespace

DiffOp::DiffOp(Ctx ctx, int level) : ctx_(std::move(ctx)), level_(level) {
    if (level < 0) throw Error(ErrorKind::RangeError, "level must be non-negative");
}

DiffOp DiffOp::from_coeffs(Ctx ctx, int level, std::vector<TateSeries> coeffs, bool truncated) {
    DiffOp h(std::move(ctx), level);
    h.a_ = std::move(coeffs);
    h.truncated_ = truncated;
    h.trim();
    return h;
}

DiffOp DiffOp::function(const TateSeries& f, int level) {
    return from_coeffs(f.ctx(), level, {f});
}

DiffOp DiffOp::constant(Ctx ctx, int level, const mpq_class& c) {
    TateSeries f = TateSeries::constant(ctx, c);
    return from_coeffs(std::move(ctx), level, {f});
}

DiffOp DiffOp::monomial(Ctx ctx, int level, const mpq_class& c, int n) {
    std::vector<TateSeries> a(static_cast<size_t>(n) + 1, TateSeries(ctx));
    a.back() = TateSeries::constant(ctx, c);
    return from_coeffs(std::move(ctx), level, std::move(a));
}

void DiffOp::trim() {
    const size_t cap = static_cast<size_t>(ctx_->opmax()) + 1;
    if (a_.size() > cap) {
        for (size_t i = cap; i < a_.size(); ++i)
            if (!a_[i].is_zero()) truncated_ = true;
        a_.resize(cap);
    }
    while (!a_.empty() && a_.back().is_zero()) a_.pop_back();
}

TateSeries DiffOp::coeff(int n) const {
    if (n < 0 || n > order()) return TateSeries(ctx_);
    return a_[static_cast<size_t>(n)];
}

bool DiffOp::truncated() const {
    if (truncated_) return true;
    return std::any_of(a_.begin(), a_.end(), [](const TateSeries& f) { return f.truncated(); });
}

bool DiffOp::is_exact() const {
    return std::all_of(a_.begin(), a_.end(), [](const TateSeries& f) { return f.is_exact(); });
}

long DiffOp::min_valuation() const {
    long m = kInfValuation;
    for (const auto& f : a_) m = std::min(m, f.min_valuation());
    return m;
}

long DiffOp::abs_precision() const {
    long m = kInfValuation;
    for (const auto& f : a_) m = std::min(m, f.abs_precision());
    return m;
}

DiffOp DiffOp::operator-() const {
    DiffOp h = *this;
    for (auto& f : h.a_) f = -f;
    return h;
}

DiffOp DiffOp::scaled_p(long s) const {
    DiffOp h = *this;
    for (auto& f : h.a_) f = f.scaled_p(s);
    return h;
}

DiffOp DiffOp::scaled(const PadicScalar& c) const {
    DiffOp h = *this;
    for (auto& f : h.a_) f = f.scaled(c);
    h.trim();
    return h;
}

DiffOp DiffOp::left_times(const TateSeries& f) const {
    DiffOp h = *this;
    for (auto& g : h.a_) g = f * g;
    h.trim();
    return h;
}

DiffOp DiffOp::orders_below(int n) const {
    DiffOp h = *this;
    if (n < 0) n = 0;
    if (h.a_.size() > static_cast<size_t>(n)) h.a_.resize(static_cast<size_t>(n));
    h.trim();
    return h;
}

DiffOp DiffOp::orders_from(int n) const {
    DiffOp h = *this;
    for (int i = 0; i < std::min(n, order() + 1); ++i) h.a_[static_cast<size_t>(i)] = TateSeries(ctx_);
    h.trim();
    return h;
}

DiffOp DiffOp::translate(const mpq_class& c) const {
    DiffOp h = *this;
    for (auto& f : h.a_) f = f.translate(c);
    return h;
}

DiffOp DiffOp::with_abs_precision(long abs) const {
    DiffOp h = *this;
    for (auto& f : h.a_) f = f.with_abs_precision(abs);
    h.trim();
    return h;
}

DiffOp DiffOp::normalized() const {
    if (is_zero()) throw Error(ErrorKind::ZeroOperator, "cannot normalize the zero operator");
    return scaled_p(-min_valuation());
}

DiffOp operator+(const DiffOp& a, const DiffOp& b) {
    if (a.level_ != b.level_) throw Error(ErrorKind::LevelMismatch, "operators at different levels");
    DiffOp h(a.ctx_, a.level_);
    const size_t n = std::max(a.a_.size(), b.a_.size());
    h.a_.assign(n, TateSeries(a.ctx_));
    for (size_t i = 0; i < n; ++i) {
        if (i < a.a_.size() && i < b.a_.size()) h.a_[i] = a.a_[i] + b.a_[i];
        else if (i < a.a_.size()) h.a_[i] = a.a_[i];
        else h.a_[i] = b.a_[i];
    }
    h.truncated_ = a.truncated_ || b.truncated_;
    h.trim();
    return h;
}

DiffOp operator-(const DiffOp& a, const DiffOp& b) { return a + (-b); }

std::string DiffOp::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int n = 0; n <= order(); ++n) {
        if (a_[static_cast<size_t>(n)].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "[" << a_[static_cast<size_t>(n)].str() << "]";
        if (n > 0) os << "*X^" << n;
    }
    return os.str();
}

Magnitude op_norm(const DiffOp& h) { return Magnitude::of_valuation(h.min_valuation()); }

int nbar(const DiffOp& h) {
    if (h.is_zero()) throw Error(ErrorKind::ZeroOperator, "nbar of the zero operator");
    const long m = h.min_valuation();
    for (int n = h.order(); n >= 0; --n)
        if (h.coeffs()[static_cast<size_t>(n)].min_valuation() == m) return n;
    return 0;
}

int nk(const DiffOp& h) { return h.coeffs()[static_cast<size_t>(nbar(h))].n_index(); }

DiffOp op_mul(const DiffOp& h, const DiffOp& q) {
    if (h.level() != q.level())
        throw Error(ErrorKind::LevelMismatch, "operators at different levels");
    const Ctx& ctx = h.ctx();
    if (h.is_zero() || q.is_zero())
        return DiffOp::from_coeffs(ctx, h.level(), {}, h.truncated() || q.truncated());
    bool truncated = h.truncated() || q.truncated();
    const int k = h.level();
    auto out = ore_product(ctx, h.coeffs(), q.coeffs(),
                           [k](const TateSeries& f) { return f.derivative().scaled_p(k); },
                           truncated);
    return DiffOp::from_coeffs(ctx, k, std::move(out), truncated);
}

DiffOp rescale_level(const DiffOp& h, int k_target) {
    if (k_target < 0) throw Error(ErrorKind::RangeError, "level must be non-negative");
    const long diff = h.level() - k_target;
    std::vector<TateSeries> a = h.coeffs();
    for (size_t n = 0; n < a.size(); ++n) a[n] = a[n].scaled_p(static_cast<long>(n) * diff);
    DiffOp r = DiffOp::from_coeffs(h.ctx(), k_target, std::move(a), h.truncated());
    if (!r.is_zero() && r.min_valuation() < -static_cast<long>(h.ctx()->prec()))
        throw Error(ErrorKind::NormOverflow, "rescaled norm exceeds p^prec");
    return r;
}

DiffOp bracket_t(const DiffOp& h) {
    const int k = h.level();
    std::vector<TateSeries> a;
    for (int i = 1; i <= h.order(); ++i)
        a.push_back(h.coeffs()[static_cast<size_t>(i)].scaled(mpq_class(i)).scaled_p(k));
    return DiffOp::from_coeffs(h.ctx(), k, std::move(a), h.truncated());
}

DiffOp bracket_del(const DiffOp& h) {
    const int k = h.level();
    std::vector<TateSeries> a;
    for (const auto& f : h.coeffs()) a.push_back(-f.derivative().scaled_p(k));
    return DiffOp::from_coeffs(h.ctx(), k, std::move(a), h.truncated());
}

DiffOp op_invert(const DiffOp& h) {
    if (h.is_zero()) throw Error(ErrorKind::NotInvertible, "zero operator is not invertible");
    if (nbar(h) != 0 || nk(h) != 0)
        throw Error(ErrorKind::NotInvertible, "invertibility requires nbar = nk = 0");
    const Ctx& ctx = h.ctx();
    const int k = h.level();
    const int d = h.order();
    if (d == 0 && h.is_exact())
        return DiffOp::from_coeffs(ctx, k, {series_invert(h.coeffs()[0])}, h.truncated());
    // Contractions converge only p-adically, so the solve runs in capped arithmetic.
    std::vector<TateSeries> a = h.coeffs();
    for (auto& f : a) f = f.to_capped();
    const TateSeries a0_inv = series_invert(a[0]);
    auto delta = [k](const TateSeries& f) { return f.derivative().scaled_p(k); };

    // (H G)_u = sum_m L_m(g_{u-m}), L_m(g) = sum_{i >= m} C(i, i-m) a_i delta^{i-m}(g).
    auto apply_l = [&](int m, const TateSeries& g) {
        TateSeries acc(ctx);
        TateSeries dg = g;
        for (int i = m; i <= d; ++i) {
            if (i > m) dg = delta(dg);
            if (dg.is_zero()) break;
            if (a[static_cast<size_t>(i)].is_zero()) continue;
            acc = acc + a[static_cast<size_t>(i)] * dg.scaled(binomial(i, i - m));
        }
        return acc;
    };

    const long rhs_floor = h.min_valuation() + ctx->prec();
    const long g_floor = ctx->prec() - h.min_valuation();
    const int opmax = ctx->opmax();
    const int max_iter = ctx->prec() + ctx->tdeg() + 4;
    std::vector<TateSeries> g;
    for (int u = 0; u <= opmax; ++u) {
        TateSeries rhs = u == 0 ? TateSeries::constant(ctx, 1) : TateSeries(ctx);
        for (int m = 1; m <= std::min(u, d); ++m)
            rhs = rhs - apply_l(m, g[static_cast<size_t>(u - m)]);
        rhs = rhs.with_abs_precision(rhs_floor);
        // Solve a_0 g + sum_{i >= 1} a_i delta^i(g) = rhs by contraction.
        TateSeries gu = (a0_inv * rhs).with_abs_precision(g_floor);
        if (!rhs.is_zero()) {
            bool done = false;
            for (int it = 0; it < max_iter; ++it) {
                TateSeries tail(ctx);
                TateSeries dg = gu;
                for (int i = 1; i <= d; ++i) {
                    dg = delta(dg);
                    if (dg.is_zero()) break;
                    tail = tail + a[static_cast<size_t>(i)] * dg;
                }
                TateSeries next = (a0_inv * (rhs - tail)).with_abs_precision(g_floor);
                if ((next - gu).is_zero()) {
                    gu = next;
                    done = true;
                    break;
                }
                gu = next;
            }
            if (!done) throw Error(ErrorKind::PrecisionExhausted, "inverse iteration stalled");
        }
        g.push_back(gu);
    }
    return DiffOp::from_coeffs(ctx, k, std::move(g), h.truncated());
}

DiffOp rebase_derivation(const DiffOp& h, const TateSeries& u) {
    return rebase_derivation(h, u, TateSeries::constant(u.ctx(), 1));
}

DiffOp rebase_derivation(const DiffOp& h, const TateSeries& u, const TateSeries& base) {
    if (u.is_zero() || u.n_index() != 0 || u.min_valuation() != 0)
        throw Error(ErrorKind::NotAUnit, "rebase needs a unit of norm one");
    const Ctx& ctx = h.ctx();
    const int k = h.level();
    const TateSeries v = series_invert(u);
    const Derivation delta_new = standard_derivation(ctx, k, u * base);
    bool truncated = h.truncated();
    // X_old = v * X_new; accumulate sum_n a_n (v X_new)^n.
    const std::vector<TateSeries> step = {TateSeries(ctx), v};
    std::vector<TateSeries> power = {TateSeries::constant(ctx, 1)};
    std::vector<TateSeries> acc;
    for (int n = 0; n <= h.order(); ++n) {
        if (n > 0) power = ore_product(ctx, power, step, delta_new, truncated);
        const TateSeries& an = h.coeffs()[static_cast<size_t>(n)];
        if (an.is_zero()) continue;
        if (acc.size() < power.size()) acc.resize(power.size(), TateSeries(ctx));
        for (size_t j = 0; j < power.size(); ++j) acc[j] = acc[j] + an * power[j];
    }
    return DiffOp::from_coeffs(ctx, k, std::move(acc), truncated);
}

long residual_valuation(const DiffOp& a, const DiffOp& b) {
    const int top = std::max(a.order(), b.order());
    long m = kInfValuation;
    for (int n = 0; n <= top; ++n) {
        const TateSeries d = a.coeff(n) - b.coeff(n);
        m = std::min(m, d.is_zero() ? d.abs_precision() : d.min_valuation());
    }
    return m;
}

bool op_congruent(const DiffOp& a, const DiffOp& b, long digits) {
    const long r = residual_valuation(a, b);
    if (r == kInfValuation) return true;
    const long ref = b.is_zero() ? a.min_valuation() : b.min_valuation();
    if (ref == kInfValuation) return r == kInfValuation;
    return r >= ref + digits;
}

}  // namespace dcongr
