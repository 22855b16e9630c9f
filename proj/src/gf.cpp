#include "linkenh/gf.hpp"

#include <stdexcept>

namespace linkenh {

GaloisField::GaloisField(int m, unsigned prim_poly)
    : m_(m), q_(1u << m) {
    if (m < 2 || m > 16)
        throw std::invalid_argument("GaloisField: m out of range");
    exp_.assign(2 * (q_ - 1), 0);
    log_.assign(q_, 0);
    unsigned x = 1;
    for (unsigned i = 0; i < q_ - 1; ++i) {
        exp_[i] = x;
        log_[x] = i;
        x <<= 1;
        if (x & q_) x ^= prim_poly;
        if (x >= q_ || (x == 1 && i + 1 != q_ - 1))
            throw std::invalid_argument("GaloisField: polynomial is not primitive");
    }
    if (x != 1)
        throw std::invalid_argument("GaloisField: polynomial is not primitive");
    for (unsigned i = q_ - 1; i < 2 * (q_ - 1); ++i)
        exp_[i] = exp_[i - (q_ - 1)];
}

const GaloisField& GaloisField::gf256() {
    static const GaloisField field(8, 0x11D);
    return field;
}

} // namespace linkenh
