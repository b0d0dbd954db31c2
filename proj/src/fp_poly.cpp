#include "dcongr/fp_poly.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <random>
#include <sstream>

namespace dcongr::fp {

std::uint64_t Field::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t Field::inv(std::uint64_t a) const { return pow(a, p - 2); }

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly add(const Field& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

Poly sub(const Field& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

void divmod(const Field& F, const Poly& a, const Poly& b, Poly& q, Poly& r) {
    r = a;
    trim(r);
    q.clear();
    const int db = degree(b);
    if (db < 0) return;
    const std::uint64_t lead_inv = F.inv(b.back());
    if (degree(r) < db) return;
    q.assign(static_cast<size_t>(degree(r) - db + 1), 0);
    for (int i = degree(r); i >= db; --i) {
        const std::uint64_t c = F.mul(r[static_cast<size_t>(i)], lead_inv);
        if (c == 0) continue;
        q[static_cast<size_t>(i - db)] = c;
        for (int j = 0; j <= db; ++j)
            r[static_cast<size_t>(i - db + j)] =
                F.sub(r[static_cast<size_t>(i - db + j)], F.mul(c, b[static_cast<size_t>(j)]));
    }
    trim(r);
    trim(q);
}

Poly rem(const Field& F, const Poly& a, const Poly& b) {
    Poly q, r;
    divmod(F, a, b, q, r);
    return r;
}

Poly monic(const Field& F, const Poly& a) {
    if (a.empty()) return a;
    const std::uint64_t c = F.inv(a.back());
    Poly r = a;
    for (auto& x : r) x = F.mul(x, c);
    return r;
}

Poly gcd(const Field& F, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

Poly derivative(const Field& F, const Poly& a) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.p);
    trim(r);
    return r;
}

Poly powmod(const Field& F, const Poly& base, const std::string& exponent_decimal, const Poly& m) {
    mpz_class e(exponent_decimal);
    Poly result = {1};
    Poly b = rem(F, base, m);
    const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        result = rem(F, mul(F, result, result), m);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(F, mul(F, result, b), m);
    }
    return result;
}

int t_valuation(const Poly& f) {
    for (size_t i = 0; i < f.size(); ++i)
        if (f[i] != 0) return static_cast<int>(i);
    return -1;
}

namespace {

// f(t) = g(t)^p when f' = 0.
Poly pth_root(const Field& F, const Poly& f) {
    Poly r;
    for (size_t i = 0; i < f.size(); i += F.p) r.push_back(f[i]);
    trim(r);
    return r;
}

// Square-free decomposition of a monic polynomial: pairs (square-free part, multiplicity).
void squarefree(const Field& F, const Poly& f, int scale, std::vector<std::pair<Poly, int>>& out) {
    if (degree(f) <= 0) return;
    const Poly df = derivative(F, f);
    if (df.empty()) {
        squarefree(F, pth_root(F, f), scale * static_cast<int>(F.p), out);
        return;
    }
    Poly c = gcd(F, f, df);
    Poly q, r;
    divmod(F, f, c, q, r);
    Poly w = monic(F, q);
    int i = 1;
    while (degree(w) > 0) {
        Poly y = gcd(F, w, c);
        Poly z;
        divmod(F, w, y, z, r);
        if (degree(z) > 0) out.emplace_back(monic(F, z), i * scale);
        w = y;
        divmod(F, c, y, q, r);
        c = q;
        ++i;
    }
    if (degree(c) > 0) squarefree(F, pth_root(F, monic(F, c)), scale * static_cast<int>(F.p), out);
}

// Equal-degree splitting of a square-free product of degree-e irreducibles.
void equal_degree(const Field& F, const Poly& f, int e, std::mt19937_64& rng, std::vector<Poly>& out) {
    const int n = degree(f);
    if (n <= e) {
        out.push_back(monic(F, f));
        return;
    }
    std::uniform_int_distribution<std::uint64_t> coef(0, F.p - 1);
    while (true) {
        Poly a(static_cast<size_t>(n), 0);
        for (auto& x : a) x = coef(rng);
        trim(a);
        if (degree(a) <= 0) continue;
        Poly g;
        if (F.p == 2) {
            // Trace map a + a^2 + ... + a^(2^(e-1)).
            Poly acc = a, cur = a;
            for (int i = 1; i < e; ++i) {
                cur = rem(F, mul(F, cur, cur), f);
                acc = add(F, acc, cur);
            }
            g = gcd(F, f, acc);
        } else {
            mpz_class q;
            mpz_ui_pow_ui(q.get_mpz_t(), F.p, static_cast<unsigned long>(e));
            q = (q - 1) / 2;
            Poly b = powmod(F, a, q.get_str(), f);
            g = gcd(F, f, sub(F, b, Poly{1}));
        }
        if (degree(g) > 0 && degree(g) < n) {
            Poly h, r;
            divmod(F, f, g, h, r);
            equal_degree(F, g, e, rng, out);
            equal_degree(F, monic(F, h), e, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<Factor> factor(const Field& F, const Poly& f_in) {
    Poly f = f_in;
    trim(f);
    std::vector<Factor> result;
    if (degree(f) <= 0) return result;
    std::vector<std::pair<Poly, int>> sf;
    squarefree(F, monic(F, f), 1, sf);
    std::mt19937_64 rng(0x5eedULL);
    for (const auto& [g0, mult] : sf) {
        Poly g = g0;
        int e = 1;
        Poly xp = {0, 1};
        while (degree(g) >= 2 * e) {
            // x^(p^e) mod g; distinct-degree step.
            xp = powmod(F, xp, std::to_string(F.p), g);
            Poly h = gcd(F, g, sub(F, xp, Poly{0, 1}));
            if (degree(h) > 0) {
                std::vector<Poly> parts;
                equal_degree(F, h, e, rng, parts);
                for (auto& part : parts) result.push_back({part, mult});
                Poly q, r;
                divmod(F, g, h, q, r);
                g = monic(F, q);
                xp = rem(F, xp, g);
            }
            ++e;
        }
        if (degree(g) > 0) result.push_back({monic(F, g), mult});
    }
    // Merge identical factors arising from different square-free layers.
    std::sort(result.begin(), result.end(), [](const Factor& a, const Factor& b) {
        if (a.poly.size() != b.poly.size()) return a.poly.size() < b.poly.size();
        return a.poly < b.poly;
    });
    std::vector<Factor> merged;
    for (auto& fac : result) {
        if (!merged.empty() && merged.back().poly == fac.poly) merged.back().mult += fac.mult;
        else merged.push_back(fac);
    }
    return merged;
}

std::string to_string(const Poly& f, const char* var) {
    if (f.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(f); i >= 0; --i) {
        const std::uint64_t c = f[static_cast<size_t>(i)];
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << c;
            continue;
        }
        if (c != 1) os << c << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

}  // namespace dcongr::fp
