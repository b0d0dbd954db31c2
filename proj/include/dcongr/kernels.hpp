#pragma once

#include <gmpxx.h>

#include <vector>

namespace dcongr::kernels {

// out[j] = sum_{i} a[i] * b[j - i] mod m for j < out_len.
// Inputs are residues in [0, m). Large operands go through Kronecker
// substitution on GMP limb arrays; short ones use schoolbook accumulation.
void convolve_mod(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                  size_t out_len, const mpz_class& m, std::vector<mpz_class>& out);

// Reference schoolbook version, kept for equivalence tests.
void convolve_mod_schoolbook(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                             size_t out_len, const mpz_class& m, std::vector<mpz_class>& out);

}  // namespace dcongr::kernels
