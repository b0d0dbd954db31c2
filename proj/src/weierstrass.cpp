#include "dcongr/weierstrass.hpp"

#include <algorithm>

namespace dcongr {

namespace {

// Drop every coefficient digit at or above p^floor.
DiffOp floor_precision(const DiffOp& h, long floor) {
    if (h.is_exact()) return h;
    return h.with_abs_precision(floor);
}

std::vector<TateSeries> to_capped(const DiffOp& h) {
    std::vector<TateSeries> a = h.coeffs();
    for (auto& f : a) f = f.to_capped();
    return a;
}

}  // namespace

bool is_dominant(const DiffOp& h) { return !h.is_zero() && nbar(h) == h.order(); }

DivisionResult divide(const DiffOp& h, const DiffOp& p) {
    if (p.is_zero()) throw Error(ErrorKind::ZeroDivisor, "division by the zero operator");
    if (h.level() != p.level()) throw Error(ErrorKind::LevelMismatch, "operators at different levels");
    const Ctx& ctx = h.ctx();
    const int k = h.level();
    const long s = p.min_valuation();
    const DiffOp pn = p.scaled_p(-s);
    const int d = nbar(pn);
    const TateSeries& lead = pn.coeffs()[static_cast<size_t>(d)];
    const int n = lead.n_index();
    for (int i = 0; i < n; ++i)
        if (!lead.coeff(i).is_zero())
            throw Error(ErrorKind::NonNormalizedLead, "dominant coefficient is not t^N times a unit");
    const TateSeries w_inv = series_invert(lead.divided_by_t(n));
    const bool upper = pn.order() > d;

    DivisionResult out;
    out.truncated = h.truncated() || p.truncated();
    if (h.is_zero()) {
        out.quotient = out.remainder = out.tail = DiffOp(ctx, k);
        return out;
    }
    const long floor = h.min_valuation() + ctx->prec();
    DiffOp work = upper ? DiffOp::from_coeffs(ctx, k, to_capped(h), h.truncated()) : h;
    std::vector<TateSeries> q, tail;
    auto add_at = [&](std::vector<TateSeries>& v, int idx, const TateSeries& f) {
        if (static_cast<int>(v.size()) <= idx) v.resize(static_cast<size_t>(idx) + 1, TateSeries(ctx));
        v[static_cast<size_t>(idx)] = v[static_cast<size_t>(idx)] + f;
    };

    // X^j * P, built on demand.
    std::vector<DiffOp> xp = {pn};
    auto shifted = [&](int j) -> const DiffOp& {
        while (static_cast<int>(xp.size()) <= j)
            xp.push_back(op_mul(DiffOp::monomial(ctx, k, 1, 1), xp.back()));
        return xp[static_cast<size_t>(j)];
    };

    const int max_sweeps = ctx->prec() + 4;
    int sweeps = 0;
    while (work.order() >= d) {
        if (sweeps++ >= max_sweeps)
            throw Error(ErrorKind::PrecisionExhausted, "division sweeps do not contract");
        for (int m = work.order(); m >= d; --m) {
            const TateSeries hm = work.coeff(m);
            if (hm.is_zero()) continue;
            const TateSeries low = hm.low_part(n);
            if (!low.is_zero()) add_at(tail, m, low);
            const TateSeries g = hm.divided_by_t(n);
            std::vector<TateSeries> a = work.coeffs();
            a[static_cast<size_t>(m)] = TateSeries(ctx);
            work = DiffOp::from_coeffs(ctx, k, std::move(a), work.truncated());
            if (g.is_zero()) continue;
            const TateSeries c = g * w_inv;
            add_at(q, m - d, c);
            const DiffOp sub = shifted(m - d).left_times(c);
            std::vector<TateSeries> sa = sub.coeffs();
            // The t^n part of order m cancels exactly; upper orders of P leave a smaller residue.
            if (static_cast<int>(sa.size()) > m)
                sa[static_cast<size_t>(m)] = sa[static_cast<size_t>(m)] - g.times_t(n);
            out.truncated = out.truncated || sub.truncated();
            work = work - DiffOp::from_coeffs(ctx, k, std::move(sa));
            work = floor_precision(work, floor);
        }
    }
    out.sweeps = sweeps;
    out.quotient = DiffOp::from_coeffs(ctx, k, std::move(q)).scaled_p(-s);
    out.remainder = work;
    out.tail = DiffOp::from_coeffs(ctx, k, std::move(tail));
    out.quotient = floor_precision(out.quotient, floor - s);
    out.tail = floor_precision(out.tail, floor);
    return out;
}

HenselResult hensel_factor(const DiffOp& h) {
    if (h.is_zero()) throw Error(ErrorKind::ZeroOperator, "hensel_factor of the zero operator");
    const Ctx& ctx = h.ctx();
    const int k = h.level();
    HenselResult out;
    out.truncated = h.truncated();
    if (is_dominant(h)) {
        out.unit = DiffOp::constant(ctx, k, 1);
        out.dominant = h;
        return out;
    }
    const long s = h.min_valuation();
    const DiffOp hn = DiffOp::from_coeffs(ctx, k, to_capped(h.scaled_p(-s)), h.truncated());
    const int d = nbar(hn);
    if (hn.coeffs()[static_cast<size_t>(d)].n_index() != 0)
        throw Error(ErrorKind::LeadNotUnitAtOrigin,
                    "dominant coefficient vanishes at the origin of a non-dominant operator");
    DiffOp pj = hn.orders_below(d + 1);
    const int max_iter = ctx->prec() + 4;
    for (int it = 0; it < max_iter; ++it) {
        DivisionResult div = divide(hn, pj);
        out.truncated = out.truncated || div.truncated;
        out.iterations = it + 1;
        if (div.remainder.is_zero()) {
            out.unit = div.quotient;
            out.dominant = pj.scaled_p(s);
            return out;
        }
        pj = pj + div.remainder;
    }
    throw Error(ErrorKind::PrecisionExhausted, "Hensel iteration does not converge");
}

WitnessResult simplicity_witness(const DiffOp& h) {
    if (h.is_zero()) throw Error(ErrorKind::ZeroOperator, "witness of the zero operator");
    WitnessResult out;
    out.t_brackets = nbar(h);
    out.d_brackets = nk(h);
    DiffOp w = h.normalized();
    for (int i = 0; i < out.t_brackets; ++i) {
        w = bracket_t(w).normalized();
        out.word += 't';
    }
    for (int i = 0; i < out.d_brackets; ++i) {
        w = bracket_del(w).normalized();
        out.word += 'D';
    }
    out.op = w;
    return out;
}

}  // namespace dcongr
