#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "linkenh/gf.hpp"

namespace linkenh {

struct RsCodeParams {
    int m = 8;      // bits per symbol
    int n = 255;    // codeword length in symbols
    int k = 235;    // data symbols
    int t = 10;     // correctable symbol errors
    int d_min = 21; // n - k + 1
};

// Validates the existence condition 0 < k < n < 2^m + 2 and derives t, d_min.
// Extended codes (n > 2^m - 1) are rejected as unsupported.
RsCodeParams rs_make_params(int n, int k, int m = 8);

struct RsDecodeResult {
    bool ok = false;                 // false: detected uncorrectable
    std::vector<uint8_t> data;       // k corrected data symbols (when ok)
    int symbols_corrected = 0;
};

// Systematic Reed-Solomon codec. Generator polynomial roots alpha^0..alpha^(2t-1).
// Decoding: syndromes -> Berlekamp-Massey -> Chien search -> Forney.
class RsCodec {
public:
    explicit RsCodec(RsCodeParams params,
                     const GaloisField& field = GaloisField::gf256());

    const RsCodeParams& params() const { return params_; }
    const GaloisField& field() const { return gf_; }

    // data.size() == k; returns k data symbols followed by n-k parity symbols
    std::vector<uint8_t> encode(std::span<const uint8_t> data) const;

    // received.size() == n
    RsDecodeResult decode(std::span<const uint8_t> received) const;

    // Corrects `received` (n symbols) in place. Returns the number of symbols
    // corrected, or -1 on detected decode failure (buffer left untouched).
    int decode_in_place(uint8_t* received) const;

    // Syndromes of an n-symbol word; all zero iff it is a codeword.
    std::vector<uint8_t> syndromes(std::span<const uint8_t> word) const;

private:
    RsCodeParams params_;
    const GaloisField& gf_;
    std::vector<uint8_t> gen_;       // generator poly, ascending powers, deg 2t
};

} // namespace linkenh
