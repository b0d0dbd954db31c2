#include "dcongr/kernels.hpp"

#include <algorithm>
#include <cstring>

namespace dcongr::kernels {

void convolve_mod_schoolbook(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                             size_t out_len, const mpz_class& m, std::vector<mpz_class>& out) {
    out.assign(out_len, 0);
    for (size_t i = 0; i < a.size() && i < out_len; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size() && i + j < out_len; ++j) {
            if (b[j] == 0) continue;
            mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
    for (auto& c : out) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
}

namespace {

void pack(const std::vector<mpz_class>& v, size_t n, size_t slot, std::vector<mp_limb_t>& dst) {
    dst.assign(n * slot, 0);
    for (size_t i = 0; i < n; ++i) {
        const mpz_srcptr z = v[i].get_mpz_t();
        const size_t sz = mpz_size(z);
        if (sz == 0) continue;
        std::memcpy(dst.data() + i * slot, mpz_limbs_read(z), sz * sizeof(mp_limb_t));
    }
}

}  // namespace

void convolve_mod(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                  size_t out_len, const mpz_class& m, std::vector<mpz_class>& out) {
    const size_t na = std::min(a.size(), out_len);
    const size_t nb = std::min(b.size(), out_len);
    if (na == 0 || nb == 0) {
        out.assign(out_len, 0);
        return;
    }
    if (std::min(na, nb) <= 4) {
        convolve_mod_schoolbook(a, b, out_len, m, out);
        return;
    }
    const size_t bits = 2 * mpz_sizeinbase(m.get_mpz_t(), 2) +
                        static_cast<size_t>(64 - __builtin_clzll(std::min(na, nb))) + 1;
    const size_t slot = (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;

    std::vector<mp_limb_t> pa, pb;
    pack(a, na, slot, pa);
    pack(b, nb, slot, pb);
    std::vector<mp_limb_t> prod(pa.size() + pb.size(), 0);
    if (pa.size() >= pb.size())
        mpn_mul(prod.data(), pa.data(), static_cast<mp_size_t>(pa.size()), pb.data(),
                static_cast<mp_size_t>(pb.size()));
    else
        mpn_mul(prod.data(), pb.data(), static_cast<mp_size_t>(pb.size()), pa.data(),
                static_cast<mp_size_t>(pa.size()));

    const size_t produced = std::min(out_len, na + nb - 1);
    out.assign(out_len, 0);
    mpz_t view;
    for (size_t j = 0; j < produced; ++j) {
        mpz_roinit_n(view, prod.data() + j * slot, static_cast<mp_size_t>(slot));
        mpz_mod(out[j].get_mpz_t(), view, m.get_mpz_t());
    }
}

}  // namespace dcongr::kernels
