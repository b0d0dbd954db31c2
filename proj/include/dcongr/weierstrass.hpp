#pragma once

#include <string>

#include "dcongr/dop.hpp"

namespace dcongr {

// H = Q*P + R + S.
struct DivisionResult {
    DiffOp quotient;
    DiffOp remainder;  // orders < nbar(P)
    DiffOp tail;       // orders >= nbar(P), t-degree < nk(P)
    int sweeps = 0;
    bool truncated = false;
};

// H = Q*P with Q a unit of norm one and P dominant of order nbar(H).
struct HenselResult {
    DiffOp unit;
    DiffOp dominant;
    int iterations = 0;
    bool truncated = false;
};

struct WitnessResult {
    DiffOp op;
    int t_brackets = 0;
    int d_brackets = 0;
    // "t" for each [., t] step, "D" for each [., p^k d] step.
    std::string word;
};

DivisionResult divide(const DiffOp& h, const DiffOp& p);
HenselResult hensel_factor(const DiffOp& h);
WitnessResult simplicity_witness(const DiffOp& h);

// Order = nbar and the top coefficient attains the norm.
bool is_dominant(const DiffOp& h);

}  // namespace dcongr
