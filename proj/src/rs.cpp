#include "linkenh/rs.hpp"

#include <cstring>
#include <stdexcept>

namespace linkenh {

RsCodeParams rs_make_params(int n, int k, int m) {
    if (m < 2 || m > 16)
        throw std::invalid_argument("rs_make_params: m out of range");
    const int limit = (1 << m) + 2;
    if (!(0 < k && k < n && n < limit))
        throw std::invalid_argument("rs_make_params: need 0 < k < n < 2^m + 2");
    if (n > (1 << m) - 1)
        throw std::invalid_argument("rs_make_params: extended codes (n > 2^m - 1) unsupported");
    RsCodeParams p;
    p.m = m;
    p.n = n;
    p.k = k;
    p.t = (n - k) / 2;
    p.d_min = n - k + 1;
    return p;
}

RsCodec::RsCodec(RsCodeParams params, const GaloisField& field)
    : params_(params), gf_(field) {
    if (field.m() != params.m)
        throw std::invalid_argument("RsCodec: field/params symbol size mismatch");
    // g(x) = prod_{i=0}^{2t-1} (x - alpha^i)
    const int nparity = params_.n - params_.k;
    gen_.assign(1, 1);
    for (int i = 0; i < nparity; ++i) {
        const unsigned root = gf_.pow_alpha(static_cast<unsigned>(i));
        std::vector<uint8_t> next(gen_.size() + 1, 0);
        for (size_t j = 0; j < gen_.size(); ++j) {
            next[j] ^= static_cast<uint8_t>(gf_.mul(gen_[j], root));
            next[j + 1] ^= gen_[j];
        }
        gen_ = std::move(next);
    }
}

std::vector<uint8_t> RsCodec::encode(std::span<const uint8_t> data) const {
    const int k = params_.k;
    const int nparity = params_.n - params_.k;
    if (static_cast<int>(data.size()) != k)
        throw std::invalid_argument("RsCodec::encode: data length != k");
    std::vector<uint8_t> out(params_.n, 0);
    std::memcpy(out.data(), data.data(), data.size());
    // parity = x^(2t) * d(x) mod g(x), LFSR division
    uint8_t* parity = out.data() + k;
    for (int i = 0; i < k; ++i) {
        const unsigned fb = data[i] ^ parity[0];
        std::memmove(parity, parity + 1, nparity - 1);
        parity[nparity - 1] = 0;
        if (fb != 0) {
            for (int j = 0; j < nparity; ++j)
                parity[j] ^= static_cast<uint8_t>(
                    gf_.mul(gen_[nparity - 1 - j], fb));
        }
    }
    return out;
}

std::vector<uint8_t> RsCodec::syndromes(std::span<const uint8_t> word) const {
    const int nparity = params_.n - params_.k;
    std::vector<uint8_t> s(nparity, 0);
    for (int j = 0; j < nparity; ++j) {
        const unsigned a = gf_.pow_alpha(static_cast<unsigned>(j));
        unsigned acc = 0;
        for (int i = 0; i < params_.n; ++i)
            acc = gf_.mul(acc, a) ^ word[i];
        s[j] = static_cast<uint8_t>(acc);
    }
    return s;
}

int RsCodec::decode_in_place(uint8_t* received) const {
    const int n = params_.n;
    const int nparity = n - params_.k;
    const int t = params_.t;

    // syndromes; S_j = r(alpha^j) with received[0] the highest-degree coeff
    unsigned synd[256];
    bool all_zero = true;
    for (int j = 0; j < nparity; ++j) {
        const unsigned a = gf_.pow_alpha(static_cast<unsigned>(j));
        unsigned acc = 0;
        for (int i = 0; i < n; ++i)
            acc = gf_.mul(acc, a) ^ received[i];
        synd[j] = acc;
        if (acc != 0) all_zero = false;
    }
    if (all_zero) return 0;

    // Berlekamp-Massey (Massey's formulation): error locator lambda(x)
    unsigned lambda[256] = {1}, b[256] = {1}, tmp[256];
    int deg_lambda = 0, deg_b = 0, l = 0, shift = 1;
    unsigned bd = 1;
    for (int r = 0; r < nparity; ++r) {
        unsigned delta = 0;
        for (int i = 0; i <= deg_lambda && i <= r; ++i)
            delta ^= gf_.mul(lambda[i], synd[r - i]);
        if (delta == 0) {
            ++shift;
            continue;
        }
        const unsigned coef = gf_.div(delta, bd);
        const int deg_tmp =
            deg_lambda > deg_b + shift ? deg_lambda : deg_b + shift;
        for (int i = 0; i <= deg_tmp; ++i)
            tmp[i] = i <= deg_lambda ? lambda[i] : 0;
        for (int i = 0; i <= deg_b; ++i)
            tmp[i + shift] ^= gf_.mul(coef, b[i]);
        if (2 * l <= r) {
            std::memcpy(b, lambda, (deg_lambda + 1) * sizeof(unsigned));
            deg_b = deg_lambda;
            bd = delta;
            l = r + 1 - l;
            shift = 1;
        } else {
            ++shift;
        }
        std::memcpy(lambda, tmp, (deg_tmp + 1) * sizeof(unsigned));
        deg_lambda = deg_tmp;
        while (deg_lambda > 0 && lambda[deg_lambda] == 0) --deg_lambda;
    }
    if (deg_lambda > t) return -1;

    // Chien search over valid degrees [0, n)
    int err_deg[256];
    unsigned err_loc[256];
    int nerr = 0;
    for (int i = 0; i < n; ++i) {
        // evaluate lambda at alpha^(-i)
        const unsigned xinv = gf_.pow_alpha(
            static_cast<unsigned>((gf_.order() - i % gf_.order()) % gf_.order()));
        unsigned acc = 0;
        for (int j = deg_lambda; j >= 0; --j)
            acc = gf_.mul(acc, xinv) ^ lambda[j];
        if (acc == 0) {
            if (nerr >= deg_lambda) return -1;
            err_deg[nerr] = i;
            err_loc[nerr] = gf_.pow_alpha(static_cast<unsigned>(i));
            ++nerr;
        }
    }
    if (nerr != deg_lambda) return -1;

    // omega(x) = S(x) * lambda(x) mod x^(2t)
    unsigned omega[64] = {0};
    for (int i = 0; i < nparity; ++i) {
        unsigned acc = 0;
        for (int j = 0; j <= deg_lambda && j <= i; ++j)
            acc ^= gf_.mul(lambda[j], synd[i - j]);
        omega[i] = acc;
    }

    // Forney with b = 0: e = X * omega(X^-1) / lambda'(X^-1)
    for (int e = 0; e < nerr; ++e) {
        const unsigned x = err_loc[e];
        const unsigned xinv = gf_.inv(x);
        unsigned num = 0;
        for (int j = nparity - 1; j >= 0; --j)
            num = gf_.mul(num, xinv) ^ omega[j];
        unsigned den = 0; // lambda'(xinv): odd-degree terms
        for (int j = 1; j <= deg_lambda; j += 2) {
            unsigned term = lambda[j];
            for (int p = 0; p < j - 1; ++p) term = gf_.mul(term, xinv);
            den ^= term;
        }
        if (den == 0) return -1;
        const unsigned magnitude = gf_.mul(x, gf_.div(num, den));
        if (magnitude == 0) return -1;
        received[n - 1 - err_deg[e]] ^= static_cast<uint8_t>(magnitude);
    }
    return nerr;
}

RsDecodeResult RsCodec::decode(std::span<const uint8_t> received) const {
    if (static_cast<int>(received.size()) != params_.n)
        throw std::invalid_argument("RsCodec::decode: received length != n");
    std::vector<uint8_t> work(received.begin(), received.end());
    const int corrected = decode_in_place(work.data());
    RsDecodeResult res;
    if (corrected < 0) return res;
    res.ok = true;
    res.symbols_corrected = corrected;
    res.data.assign(work.begin(), work.begin() + params_.k);
    return res;
}

} // namespace linkenh
