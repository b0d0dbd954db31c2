#pragma once

// Dense univariate polynomials over F_p (p < 2^31), low degree first.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dcongr::fp {

using Poly = std::vector<std::uint64_t>;

struct Field {
    std::uint64_t p;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const;
};

void trim(Poly& f);
int degree(const Poly& f);
Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly mul(const Field& F, const Poly& a, const Poly& b);
// a = q*b + r.
void divmod(const Field& F, const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly rem(const Field& F, const Poly& a, const Poly& b);
Poly monic(const Field& F, const Poly& a);
Poly gcd(const Field& F, Poly a, Poly b);
Poly derivative(const Field& F, const Poly& a);
Poly powmod(const Field& F, const Poly& base, const std::string& exponent_decimal, const Poly& m);
int t_valuation(const Poly& f);

struct Factor {
    Poly poly;  // monic irreducible
    int mult;
};

// Monic irreducible factorization, sorted by (degree, coefficients).
std::vector<Factor> factor(const Field& F, const Poly& f);

std::string to_string(const Poly& f, const char* var = "t");

}  // namespace dcongr::fp
