#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcongr/charvar.hpp"

namespace dcongr {

// Either a finite operator written at level 0, or prod_{n>=1} (1 - p^(slope*n) d)
// realized by truncation.
struct TowerElement {
    enum class Kind { FiniteOp, ProductFamily } kind = Kind::FiniteOp;
    DiffOp op;                    // FiniteOp, level 0
    Ctx ctx;                      // ProductFamily
    long slope = 1;               // ProductFamily: c_n = p^(slope*n)
    std::optional<int> depth_cap; // ProductFamily: available factors

    static TowerElement finite(const DiffOp& op_level0);
    static TowerElement product(Ctx ctx, long slope = 1, std::optional<int> depth_cap = {});
};

inline constexpr int kTowerGuard = 3;

// Level-k realization; product families use factors n <= k + kTowerGuard.
DiffOp realize(const TowerElement& e, int k);
// prod_{n=1..depth} (1 - p^(slope*n) d) at level 0.
DiffOp truncated_product(const Ctx& ctx, long slope, int depth);

std::vector<int> nbar_profile(const TowerElement& e, int k_max);

struct TowerRow {
    int k = 0;
    int nbar = 0;
    long log_p_norm = 0;
    long m_k = 0;
};

struct TowerReport {
    std::vector<TowerRow> rows;
    std::optional<int> k_m;    // least level from which every M_k is holonomic
    std::optional<long> m;     // stationary value when detected
    bool stationary = false;   // m_k and nbar constant over the last kTowerGuard levels
    bool member = false;
    int horizon = 0;
    std::string classification;  // "finite-order", "unbounded-at-horizon", "zero-module"
    std::string json() const;
};

TowerReport tower_report(const TowerElement& e, int k_max);

struct NormSuiteRow {
    int k = 0;
    long log_p_pk = 0;                           // log_p ||P_k||_k
    std::vector<std::pair<int, long>> diff;      // (m, log_p ||P - P_k||_m)
};

std::vector<NormSuiteRow> level_norm_suite(const TowerElement& family, int k_lo, int k_hi,
                                           int m_lo, int m_hi);
std::string norm_suite_json(const std::vector<NormSuiteRow>& rows);

bool units_check(const TowerElement& e, int k_max);

}  // namespace dcongr
