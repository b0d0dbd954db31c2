#include "dcongr/tower.hpp"

#include <algorithm>

#include "dcongr/weierstrass.hpp"
#include "json.hpp"

namespace dcongr {

TowerElement TowerElement::finite(const DiffOp& op_level0) {
    TowerElement e;
    e.kind = Kind::FiniteOp;
    e.op = op_level0.level() == 0 ? op_level0 : rescale_level(op_level0, 0);
    e.ctx = op_level0.ctx();
    return e;
}

TowerElement TowerElement::product(Ctx ctx, long slope, std::optional<int> depth_cap) {
    TowerElement e;
    e.kind = Kind::ProductFamily;
    e.ctx = std::move(ctx);
    e.slope = slope;
    e.depth_cap = depth_cap;
    return e;
}

DiffOp truncated_product(const Ctx& ctx, long slope, int depth) {
    DiffOp acc = DiffOp::constant(ctx, 0, 1);
    const DiffOp d = DiffOp::monomial(ctx, 0, 1, 1);
    for (int n = 1; n <= depth; ++n)
        acc = op_mul(acc, DiffOp::constant(ctx, 0, 1) - d.scaled_p(slope * n));
    return acc;
}

namespace {

int required_depth(const TowerElement& e, int k) {
    const int need = k + kTowerGuard;
    if (e.depth_cap && *e.depth_cap < need)
        throw Error(ErrorKind::TruncationInsufficient,
                    "level " + std::to_string(k) + " needs " + std::to_string(need) + " factors");
    return need;
}

long log_p_norm(const DiffOp& h) { return h.is_zero() ? 0 : -h.min_valuation(); }

// m(M_k) for the cyclic module D_k / (P_k).
long level_multiplicity(const DiffOp& pk) {
    if (pk.is_zero()) return -1;
    DiffOp dom = pk;
    try {
        dom = hensel_factor(pk).dominant;
    } catch (const Error& err) {
        if (err.kind() != ErrorKind::LeadNotUnitAtOrigin) throw;
    }
    return principal_cycle(dom).total();
}

}  // namespace

DiffOp realize(const TowerElement& e, int k) {
    if (e.kind == TowerElement::Kind::FiniteOp) return rescale_level(e.op, k);
    return rescale_level(truncated_product(e.ctx, e.slope, required_depth(e, k)), k);
}

std::vector<int> nbar_profile(const TowerElement& e, int k_max) {
    std::vector<int> out;
    for (int k = 0; k <= k_max; ++k) {
        const DiffOp h = realize(e, k);
        if (h.is_zero()) throw Error(ErrorKind::ZeroOperator, "profile of the zero operator");
        out.push_back(nbar(h));
    }
    return out;
}

TowerReport tower_report(const TowerElement& e, int k_max) {
    TowerReport r;
    r.horizon = k_max;
    bool any_zero = false;
    for (int k = 0; k <= k_max; ++k) {
        const DiffOp h = realize(e, k);
        TowerRow row;
        row.k = k;
        if (h.is_zero()) {
            any_zero = true;
            row.m_k = -1;
        } else {
            row.nbar = nbar(h);
            row.log_p_norm = log_p_norm(h);
            row.m_k = level_multiplicity(h);
        }
        r.rows.push_back(row);
    }
    if (any_zero) {
        r.classification = "not-holonomic";
        r.member = false;
        return r;
    }
    r.k_m = 0;
    const int g = std::min(kTowerGuard, k_max + 1);
    const auto& last = r.rows.back();
    r.stationary = true;
    for (int i = 0; i < g; ++i) {
        const auto& row = r.rows[r.rows.size() - 1 - static_cast<size_t>(i)];
        if (row.m_k != last.m_k || row.nbar != last.nbar) r.stationary = false;
    }
    if (r.stationary) {
        r.m = last.m_k;
        r.member = true;
        r.classification = last.m_k == 0 ? "zero-module" : "finite-order";
    } else {
        r.member = false;
        r.classification = "unbounded-at-horizon";
    }
    return r;
}

std::string TowerReport::json() const {
    nlohmann::ordered_json j;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : rows)
        j["rows"].push_back({{"k", row.k}, {"nbar", row.nbar}, {"log_p_norm", row.log_p_norm},
                             {"m_k", row.m_k}});
    j["k_M"] = k_m ? nlohmann::ordered_json(*k_m) : nlohmann::ordered_json(nullptr);
    j["m"] = m ? nlohmann::ordered_json(*m) : nlohmann::ordered_json(nullptr);
    j["member"] = member;
    j["stationary"] = stationary;
    j["classification"] = classification;
    j["horizon"] = horizon;
    return j.dump();
}

std::vector<NormSuiteRow> level_norm_suite(const TowerElement& family, int k_lo, int k_hi,
                                           int m_lo, int m_hi) {
    if (family.kind != TowerElement::Kind::ProductFamily)
        throw Error(ErrorKind::RangeError, "norm suite needs a product family");
    if (k_lo < 0 || k_hi < k_lo || m_lo < 0 || m_hi < m_lo)
        throw Error(ErrorKind::RangeError, "empty level range");
    if (k_hi < m_lo + 1) throw Error(ErrorKind::RangeError, "||P - P_k||_m needs k >= m + 1");
    const Ctx& ctx = family.ctx;
    const DiffOp full = truncated_product(ctx, family.slope, required_depth(family, k_hi));
    std::vector<NormSuiteRow> rows;
    for (int k = k_lo; k <= k_hi; ++k) {
        NormSuiteRow row;
        row.k = k;
        const DiffOp pk = truncated_product(ctx, family.slope, k);
        row.log_p_pk = log_p_norm(rescale_level(pk, k));
        for (int m = m_lo; m <= m_hi; ++m) {
            if (k < m + 1) continue;
            row.diff.emplace_back(m, log_p_norm(rescale_level(full - pk, m)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string norm_suite_json(const std::vector<NormSuiteRow>& rows) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json d = nlohmann::ordered_json::array();
        for (const auto& [m, v] : r.diff) d.push_back({{"m", m}, {"log_p_norm", v}});
        j.push_back({{"k", r.k}, {"log_p_norm_pk", r.log_p_pk}, {"diff", d}});
    }
    return j.dump();
}

bool units_check(const TowerElement& e, int k_max) {
    for (int k = 0; k <= k_max; ++k) {
        const DiffOp h = realize(e, k);
        if (h.is_zero() || nbar(h) != 0) return false;
        const TateSeries a0 = h.coeff(0);
        if (a0.is_zero()) return false;
        // Unit of the disk algebra: the normalized reduction is a nonzero constant.
        const auto red = a0.scaled_p(-a0.min_valuation()).reduce_mod_p();
        for (size_t i = 1; i < red.size(); ++i)
            if (red[i] != 0) return false;
    }
    return true;
}

}  // namespace dcongr
