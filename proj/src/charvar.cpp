#include "dcongr/charvar.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

#include "dcongr/fp_poly.hpp"
#include "dcongr/weierstrass.hpp"

namespace dcongr {

namespace {

void sort_vertical(std::vector<VerticalComponent>& v) {
    std::sort(v.begin(), v.end(), [](const VerticalComponent& a, const VerticalComponent& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return a.point < b.point;
    });
}

std::string point_name(const fp::Field& F, const fp::Poly& f) {
    if (fp::degree(f) == 1) return "t=" + std::to_string((F.p - f[0]) % F.p);
    return fp::to_string(f);
}

fp::Poly reduced(const TateSeries& f) {
    std::vector<unsigned long> r = f.reduce_mod_p();
    return fp::Poly(r.begin(), r.end());
}

std::vector<VerticalComponent> factor_components(const fp::Field& F, const fp::Poly& lead) {
    std::vector<VerticalComponent> out;
    for (const auto& fac : fp::factor(F, lead))
        out.push_back({point_name(F, fac.poly), fp::degree(fac.poly), fac.mult});
    return out;
}

fp::Field field_of(const Ctx& ctx) {
    if (ctx->p() >= (1L << 31)) throw Error(ErrorKind::RangeError, "prime too large for F_p factorization");
    return fp::Field{static_cast<std::uint64_t>(ctx->p())};
}

}  // namespace

long CharCycle::total() const {
    long m = horizontal;
    for (const auto& v : vertical) m += v.mult;
    return m;
}

bool CharCycle::zero_dimensional() const {
    return kind == CycleKind::ProperCycle && horizontal == 0 && vertical.empty();
}

std::string kind_name(CycleKind k) {
    switch (k) {
        case CycleKind::FullCotangent: return "FullCotangent";
        case CycleKind::ProperCycle: return "ProperCycle";
        case CycleKind::Empty: return "Empty";
    }
    return "Empty";
}

std::string CharCycle::json() const {
    nlohmann::ordered_json j;
    j["kind"] = kind_name(kind);
    j["horizontal"] = horizontal;
    j["vertical"] = nlohmann::ordered_json::array();
    for (const auto& v : vertical)
        j["vertical"].push_back({{"point", v.point}, {"degree", v.degree}, {"mult", v.mult}});
    return j.dump();
}

CharCycle operator+(const CharCycle& a, const CharCycle& b) {
    CharCycle r;
    if (a.kind == CycleKind::FullCotangent || b.kind == CycleKind::FullCotangent) {
        r.kind = CycleKind::FullCotangent;
        return r;
    }
    if (a.kind == CycleKind::Empty) return b;
    if (b.kind == CycleKind::Empty) return a;
    r.kind = CycleKind::ProperCycle;
    r.horizontal = a.horizontal + b.horizontal;
    std::map<std::pair<int, std::string>, long> acc;
    for (const auto* c : {&a, &b})
        for (const auto& v : c->vertical) acc[{v.degree, v.point}] += v.mult;
    for (const auto& [key, m] : acc) r.vertical.push_back({key.second, key.first, m});
    sort_vertical(r.vertical);
    return r;
}

ModuleDescriptor ModuleDescriptor::cyclic(std::vector<DiffOp> gens, int level) {
    ModuleDescriptor m;
    m.summands.push_back({std::move(gens), level});
    return m;
}

CharCycle principal_cycle(const DiffOp& p) {
    CharCycle c;
    if (p.is_zero()) {
        c.kind = CycleKind::FullCotangent;
        return c;
    }
    const DiffOp n = p.normalized();
    const int d = nbar(n);
    const fp::Poly lead = reduced(n.coeff(d));
    if (d == 0 && fp::degree(lead) == 0) return c;  // unit: empty cycle
    c.kind = CycleKind::ProperCycle;
    c.horizontal = d;
    c.vertical = factor_components(field_of(p.ctx()), lead);
    sort_vertical(c.vertical);
    return c;
}

CharCycle char_cycle(const CyclicQuotient& m, const IdealOptions& opt) {
    std::vector<DiffOp> gens;
    for (const auto& g : m.gens)
        if (!g.is_zero()) gens.push_back(g);
    CharCycle c;
    if (gens.empty()) {
        c.kind = CycleKind::FullCotangent;
        return c;
    }
    if (gens.size() == 1) return principal_cycle(gens.front());

    const IdealResult res = division_basis(gens, m.level, opt);
    if (res.unit) return c;
    const Staircase& st = res.basis.staircase;
    c.kind = CycleKind::ProperCycle;
    c.horizontal = st.d_min();
    const Ctx ctx = gens.front().ctx();
    const fp::Field F = field_of(ctx);
    // Candidate points: closed points where the first basis element's lead vanishes.
    const DiffOp& p1 = res.basis.ops.front();
    const fp::Poly lead = reduced(p1.coeff(nbar(p1)));
    for (const auto& fac : fp::factor(F, lead)) {
        if (fp::degree(fac.poly) == 1) {
            const long cpt = static_cast<long>((F.p - fac.poly[0]) % F.p);
            long v = 0;
            if (cpt == 0) {
                v = st.v_min();
            } else {
                std::vector<DiffOp> moved;
                for (const auto& g : gens) moved.push_back(g.translate(mpq_class(cpt)));
                const IdealResult local = division_basis(moved, m.level, opt);
                v = local.unit ? 0 : local.basis.staircase.v_min();
            }
            if (v > 0) c.vertical.push_back({point_name(F, fac.poly), 1, v});
        } else {
            c.vertical.push_back({point_name(F, fac.poly), fp::degree(fac.poly), fac.mult});
        }
    }
    sort_vertical(c.vertical);
    return c;
}

CharCycle char_cycle(const ModuleDescriptor& m, const IdealOptions& opt) {
    CharCycle total;
    for (const auto& s : m.summands) total = total + char_cycle(s, opt);
    return total;
}

bool is_holonomic(const ModuleDescriptor& m, const IdealOptions& opt) {
    return char_cycle(m, opt).kind != CycleKind::FullCotangent;
}

long length_bound(const ModuleDescriptor& m, const IdealOptions& opt) {
    const CharCycle c = char_cycle(m, opt);
    if (c.kind == CycleKind::FullCotangent)
        throw Error(ErrorKind::RangeError, "length bound of a non-holonomic module");
    return c.total();
}

std::optional<long> connection_rank(const ModuleDescriptor& m, const IdealOptions& opt) {
    const CharCycle c = char_cycle(m, opt);
    if (c.kind == CycleKind::FullCotangent || !c.vertical.empty()) return std::nullopt;
    if (c.kind == CycleKind::Empty) return 0;
    for (const auto& s : m.summands) {
        if (s.gens.size() != 1) continue;
        const HenselResult h = hensel_factor(s.gens.front());
        if (h.dominant.order() != nbar(s.gens.front())) return std::nullopt;
    }
    return c.horizontal;
}

}  // namespace dcongr
