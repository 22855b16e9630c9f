#pragma once

#include <cstdint>
#include <vector>

namespace linkenh {

// GF(2^m) arithmetic with log/antilog tables, generator element alpha = 2.
// Default field is GF(256) under x^8+x^4+x^3+x^2+1 (0x11D).
class GaloisField {
public:
    GaloisField(int m, unsigned prim_poly);

    int m() const { return m_; }
    unsigned size() const { return q_; }          // 2^m
    unsigned order() const { return q_ - 1; }     // multiplicative group order

    unsigned add(unsigned a, unsigned b) const { return a ^ b; }

    unsigned mul(unsigned a, unsigned b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }

    unsigned div(unsigned a, unsigned b) const {
        if (a == 0) return 0;
        return exp_[log_[a] + order() - log_[b]];
    }

    unsigned inv(unsigned a) const { return exp_[order() - log_[a]]; }

    // alpha^e, e may be any non-negative exponent
    unsigned pow_alpha(unsigned e) const { return exp_[e % order()]; }

    unsigned log(unsigned a) const { return log_[a]; }

    // Shared GF(256) instance (0x11D); tables are immutable once built.
    static const GaloisField& gf256();

private:
    int m_;
    unsigned q_;
    std::vector<unsigned> exp_;   // length 2*(q-1) to skip the mod in mul
    std::vector<unsigned> log_;   // log_[0] unused
};

} // namespace linkenh
