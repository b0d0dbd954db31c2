#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcongr/dop.hpp"

namespace dcongr {

struct Exponent {
    long v = 0;  // valuation component N_k
    long d = 0;  // order component nbar_k
    friend bool operator==(const Exponent& a, const Exponent& b) = default;
    friend auto operator<=>(const Exponent& a, const Exponent& b) = default;
    // Componentwise order.
    bool divides(const Exponent& o) const { return v <= o.v && d <= o.d; }
};

class Staircase {
public:
    Staircase() = default;
    explicit Staircase(std::vector<Exponent> exps);

    // Sorted antichain of minimal exponents.
    const std::vector<Exponent>& minimals() const { return min_; }
    bool contains(const Exponent& e) const;
    bool empty() const { return min_.empty(); }
    long d_min() const;
    long v_min() const;
    friend bool operator==(const Staircase& a, const Staircase& b) = default;
    std::string str() const;
    // Rows = order (top row highest), columns = valuation; '#' region, 'o' minimal.
    std::string ascii(long rows = -1, long cols = -1) const;

private:
    std::vector<Exponent> min_;
};

struct DivisionBasis {
    int level = 0;
    std::vector<DiffOp> ops;            // echeloned, norm one
    std::vector<DiffOp> standard;       // completed generating set, norm one
    Staircase staircase;
    int pairs_processed = 0;
};

struct IdealResult {
    bool unit = false;  // UnitIdeal
    DivisionBasis basis;
};

struct IdealOptions {
    int pair_budget = 400;
    int reduction_budget = 20000;
};

Exponent exponent(const DiffOp& h);
IdealResult division_basis(const std::vector<DiffOp>& gens, int level,
                           const IdealOptions& opt = {});
// Lead-only reduction; zero iff H reduces into the ideal to precision.
DiffOp normal_form(const DiffOp& h, const DivisionBasis& b, const IdealOptions& opt = {});
DiffOp normal_form(const DiffOp& h, const std::vector<DiffOp>& reducers,
                   const IdealOptions& opt = {});

// Mod-p staircase over F_p[[t]][xi] on the box a < box_t, b < box_d (level >= 1).
Staircase oracle_staircase(const std::vector<DiffOp>& gens, int level, int box_t, int box_d);

}  // namespace dcongr
