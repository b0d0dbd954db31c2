#include "dcongr/ideals.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dcongr/fp_poly.hpp"
#include "dcongr/weierstrass.hpp"

namespace dcongr {

Staircase::Staircase(std::vector<Exponent> exps) {
    std::sort(exps.begin(), exps.end(), [](const Exponent& a, const Exponent& b) {
        return a.d != b.d ? a.d < b.d : a.v < b.v;
    });
    for (const auto& e : exps) {
        bool dominated = false;
        for (const auto& m : min_)
            if (m.divides(e)) dominated = true;
        if (!dominated) min_.push_back(e);
    }
}

bool Staircase::contains(const Exponent& e) const {
    return std::any_of(min_.begin(), min_.end(), [&](const Exponent& m) { return m.divides(e); });
}

long Staircase::d_min() const {
    long r = kInfValuation;
    for (const auto& m : min_) r = std::min(r, m.d);
    return r;
}

long Staircase::v_min() const {
    long r = kInfValuation;
    for (const auto& m : min_) r = std::min(r, m.v);
    return r;
}

std::string Staircase::str() const {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < min_.size(); ++i) {
        if (i) os << ", ";
        os << "(" << min_[i].v << "," << min_[i].d << ")";
    }
    os << "}";
    return os.str();
}

std::string Staircase::ascii(long rows, long cols) const {
    long maxd = 0, maxv = 0;
    for (const auto& m : min_) {
        maxd = std::max(maxd, m.d);
        maxv = std::max(maxv, m.v);
    }
    if (rows < 0) rows = maxd + 2;
    if (cols < 0) cols = maxv + 2;
    std::ostringstream os;
    for (long d = rows - 1; d >= 0; --d) {
        os << (d < 10 ? " " : "") << d << " |";
        for (long v = 0; v < cols; ++v) {
            const Exponent e{v, d};
            char c = '.';
            if (std::find(min_.begin(), min_.end(), e) != min_.end()) c = 'o';
            else if (contains(e)) c = '#';
            os << ' ' << c;
        }
        os << '\n';
    }
    os << "   +";
    for (long v = 0; v < cols; ++v) os << "--";
    os << "\n    ";
    for (long v = 0; v < cols; ++v) os << ' ' << (v % 10);
    os << "  (v)\n";
    return os.str();
}

Exponent exponent(const DiffOp& h) {
    if (h.is_zero()) throw Error(ErrorKind::ZeroOperator, "exponent of the zero operator");
    return Exponent{nk(h), nbar(h)};
}

namespace {

DiffOp capped_copy(const DiffOp& h) {
    std::vector<TateSeries> a = h.coeffs();
    for (auto& f : a) f = f.to_capped();
    return DiffOp::from_coeffs(h.ctx(), h.level(), std::move(a), h.truncated());
}

// (coefficient of X^d) / t^v: a unit series when e is the exponent of a norm-one operator.
TateSeries lead_part(const DiffOp& h, const Exponent& e) {
    return h.coeff(static_cast<int>(e.d)).divided_by_t(static_cast<int>(e.v));
}

// Series multiplier making lam * b agree with a on the norm-one part of the lead order.
TateSeries lead_ratio(const DiffOp& a, const DiffOp& b, const Exponent& e) {
    return lead_part(a, e) * series_invert(lead_part(b, e));
}

// t^a X^c M.
DiffOp shifted_multiple(const DiffOp& m, long a, long c) {
    const Ctx& ctx = m.ctx();
    DiffOp r = c > 0 ? op_mul(DiffOp::monomial(ctx, m.level(), 1, static_cast<int>(c)), m) : m;
    if (a > 0) r = r.left_times(TateSeries::monomial(ctx, 1, static_cast<int>(a)));
    return r;
}

struct Normalized {
    DiffOp op;
    long scale = 0;  // original = p^scale * op
};

Normalized renormalize(const DiffOp& h) {
    if (h.is_zero()) return {h, 0};
    const long s = h.min_valuation();
    return {h.scaled_p(-s), s};
}

struct Reducer {
    DiffOp op;
    Exponent e;
};

Normalized reduce_full(const DiffOp& h_in, const std::vector<Reducer>& red, const IdealOptions& opt) {
    Normalized cur = renormalize(capped_copy(h_in));
    if (red.size() == 1 && !cur.op.is_zero() && red.front().e.divides(exponent(cur.op))) {
        // One reducer: a single division clears every divisible exponent.
        try {
            const DivisionResult d = divide(cur.op, red.front().op);
            Normalized rest = renormalize(d.remainder + d.tail);
            return {rest.op, cur.scale + rest.scale};
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NonNormalizedLead) throw;
        }
    }
    long scale = cur.scale;
    DiffOp h = cur.op;
    // X^c * reducer and the inverse of its lead part, per (reducer, c).
    struct Shifted {
        DiffOp op;
        TateSeries inv_lead;
    };
    std::map<std::pair<size_t, long>, Shifted> cache;
    int steps = 0;
    while (!h.is_zero()) {
        const Exponent eh = exponent(h);
        size_t pick = red.size();
        for (size_t i = 0; i < red.size(); ++i)
            if (red[i].e.divides(eh)) {
                pick = i;
                break;
            }
        if (pick == red.size()) break;
        if (++steps > opt.reduction_budget)
            throw Error(ErrorKind::CapExceeded, "normal form exceeded the reduction budget");
        const Reducer& r = red[pick];
        const long c = eh.d - r.e.d;
        auto it = cache.find({pick, c});
        if (it == cache.end()) {
            DiffOp m = shifted_multiple(r.op, 0, c);
            TateSeries inv = series_invert(lead_part(m, Exponent{r.e.v, eh.d}));
            it = cache.emplace(std::make_pair(pick, c), Shifted{std::move(m), std::move(inv)}).first;
        }
        const TateSeries ratio = lead_part(h, eh) * it->second.inv_lead;
        const DiffOp mult = it->second.op.left_times(ratio.times_t(static_cast<int>(eh.v - r.e.v)));
        Normalized next = renormalize(h - mult);
        h = next.op;
        scale += next.scale;
    }
    return {h, scale};
}

std::vector<Reducer> as_reducers(const std::vector<DiffOp>& ops) {
    std::vector<Reducer> red;
    for (const auto& g : ops) {
        if (g.is_zero()) continue;
        DiffOp n = capped_copy(g.normalized());
        red.push_back({n, exponent(n)});
    }
    return red;
}

}  // namespace

DiffOp normal_form(const DiffOp& h, const std::vector<DiffOp>& reducers, const IdealOptions& opt) {
    if (h.is_zero()) return h;
    Normalized r = reduce_full(h, as_reducers(reducers), opt);
    return r.op.is_zero() ? r.op : r.op.scaled_p(r.scale);
}

DiffOp normal_form(const DiffOp& h, const DivisionBasis& b, const IdealOptions& opt) {
    return normal_form(h, b.standard.empty() ? b.ops : b.standard, opt);
}

IdealResult division_basis(const std::vector<DiffOp>& gens, int level, const IdealOptions& opt) {
    IdealResult out;
    out.basis.level = level;
    std::vector<Reducer> basis;
    std::vector<bool> alive;
    std::vector<std::pair<size_t, size_t>> pairs;
    std::vector<DiffOp> pending;
    for (const auto& g : gens) {
        if (g.level() != level) throw Error(ErrorKind::LevelMismatch, "generator at another level");
        if (!g.is_zero()) pending.push_back(g);
    }
    if (pending.empty()) throw Error(ErrorKind::ZeroOperator, "all generators are zero");
    const Ctx ctx = pending.front().ctx();

    auto live_reducers = [&]() {
        std::vector<Reducer> r;
        for (size_t i = 0; i < basis.size(); ++i)
            if (alive[i]) r.push_back(basis[i]);
        return r;
    };
    bool unit = false;
    // Insert a reduced element, retiring the ones it dominates.
    auto insert = [&](const DiffOp& g) {
        const Exponent e = exponent(g);
        if (e.v == 0 && e.d == 0) unit = true;
        for (size_t i = 0; i < basis.size(); ++i) {
            if (alive[i] && e.divides(basis[i].e)) {
                alive[i] = false;
                pending.push_back(basis[i].op);
            }
        }
        basis.push_back({g, e});
        alive.push_back(true);
        for (size_t i = 0; i + 1 < basis.size(); ++i)
            if (alive[i]) pairs.emplace_back(i, basis.size() - 1);
    };
    auto process_pending = [&]() {
        while (!pending.empty() && !unit) {
            DiffOp g = pending.back();
            pending.pop_back();
            Normalized r = reduce_full(g, live_reducers(), opt);
            if (!r.op.is_zero()) insert(r.op);
        }
    };

    process_pending();
    size_t next_pair = 0;
    while (!unit && next_pair < pairs.size()) {
        const auto [i, j] = pairs[next_pair++];
        if (!alive[i] || !alive[j]) continue;
        if (++out.basis.pairs_processed > opt.pair_budget)
            throw Error(ErrorKind::CapExceeded, "standard basis completion exceeded the pair budget");
        const Exponent ei = basis[i].e, ej = basis[j].e;
        const Exponent l{std::max(ei.v, ej.v), std::max(ei.d, ej.d)};
        const DiffOp mi = shifted_multiple(basis[i].op, l.v - ei.v, l.d - ei.d);
        const DiffOp mj = shifted_multiple(basis[j].op, l.v - ej.v, l.d - ej.d);
        const DiffOp s = mi - mj.left_times(lead_ratio(mi, mj, l));
        if (s.is_zero()) continue;
        pending.push_back(s);
        process_pending();
    }

    if (unit) {
        out.unit = true;
        DiffOp one = DiffOp::constant(ctx, level, 1);
        out.basis.ops = {one};
        out.basis.standard = {one};
        out.basis.staircase = Staircase({Exponent{0, 0}});
        return out;
    }
    std::vector<Exponent> exps;
    for (size_t i = 0; i < basis.size(); ++i)
        if (alive[i]) {
            out.basis.standard.push_back(basis[i].op);
            exps.push_back(basis[i].e);
        }
    out.basis.staircase = Staircase(exps);
    const auto& mins = out.basis.staircase.minimals();
    const long dlo = mins.front().d, dhi = mins.back().d;
    for (long d = dlo; d <= dhi; ++d) {
        const Reducer* best = nullptr;
        for (size_t i = 0; i < basis.size(); ++i) {
            if (!alive[i] || basis[i].e.d > d) continue;
            if (!best || basis[i].e.v < best->e.v) best = &basis[i];
        }
        out.basis.ops.push_back(shifted_multiple(best->op, 0, d - best->e.d));
    }
    return out;
}

Staircase oracle_staircase(const std::vector<DiffOp>& gens, int level, int box_t, int box_d) {
    if (level < 1) throw Error(ErrorKind::RangeError, "the mod-p oracle needs level >= 1");
    if (gens.empty()) throw Error(ErrorKind::ZeroOperator, "no generators");
    const Ctx ctx = gens.front().ctx();
    const fp::Field F{static_cast<std::uint64_t>(ctx->p())};
    // Reduced generators: rows of F_p[t] polynomials indexed by xi-degree.
    std::vector<std::vector<fp::Poly>> reduced;
    int max_tdeg = 0;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        if (g.level() != level) throw Error(ErrorKind::LevelMismatch, "generator at another level");
        const DiffOp n = g.normalized();
        std::vector<fp::Poly> rows;
        for (const auto& f : n.coeffs()) {
            std::vector<unsigned long> r = f.reduce_mod_p();
            rows.emplace_back(r.begin(), r.end());
            max_tdeg = std::max(max_tdeg, fp::degree(rows.back()));
        }
        while (!rows.empty() && rows.back().empty()) rows.pop_back();
        reduced.push_back(std::move(rows));
    }
    const int width_t = box_t + max_tdeg;
    // Column order: xi-degree descending, then t-exponent ascending.
    auto col = [&](int a, int b) { return static_cast<size_t>((box_d - 1 - b) * width_t + a); };
    const size_t ncols = static_cast<size_t>(box_d * width_t);
    std::vector<std::vector<std::uint64_t>> rows;
    for (const auto& g : reduced) {
        const int dg = static_cast<int>(g.size()) - 1;
        for (int j = 0; j + dg < box_d; ++j)
            for (int i = 0; i < box_t; ++i) {
                std::vector<std::uint64_t> row(ncols, 0);
                for (int b = 0; b <= dg; ++b)
                    for (size_t a = 0; a < g[static_cast<size_t>(b)].size(); ++a)
                        row[col(static_cast<int>(a) + i, b + j)] = g[static_cast<size_t>(b)][a];
                rows.push_back(std::move(row));
            }
    }
    std::vector<Exponent> leads;
    size_t r0 = 0;
    for (size_t c = 0; c < ncols && r0 < rows.size(); ++c) {
        size_t piv = r0;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r0]);
        const std::uint64_t inv = F.inv(rows[r0][c]);
        for (auto& x : rows[r0]) x = F.mul(x, inv);
        for (size_t r = r0 + 1; r < rows.size(); ++r) {
            const std::uint64_t f = rows[r][c];
            if (f == 0) continue;
            for (size_t cc = c; cc < ncols; ++cc)
                if (rows[r0][cc]) rows[r][cc] = F.sub(rows[r][cc], F.mul(f, rows[r0][cc]));
        }
        const long b = box_d - 1 - static_cast<long>(c) / width_t;
        const long a = static_cast<long>(c) % width_t;
        if (a < box_t) leads.push_back(Exponent{a, b});
        ++r0;
    }
    Staircase st(leads);
    if (st.empty()) throw Error(ErrorKind::BoxTooSmall, "no exponent inside the monomial box");
    for (const auto& m : st.minimals())
        if (m.v >= box_t - 1 || m.d >= box_d - 1)
            throw Error(ErrorKind::BoxTooSmall, "a minimal exponent touches the box boundary");
    return st;
}

}  // namespace dcongr
