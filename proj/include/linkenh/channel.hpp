#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace linkenh {

struct ChannelConfig {
    enum class Mode { Bsc, GilbertElliott };
    Mode mode = Mode::Bsc;
    double p_e = 0.0;      // BSC bit-error probability
    double p_good = 0.0;   // Gilbert-Elliott: BER in the good state
    double p_bad = 0.0;    // BER in the bad state
    double p_g2b = 0.0;    // good->bad transition probability per bit
    double p_b2g = 0.0;    // bad->good transition probability per bit
    uint64_t seed = 1;

    void validate() const; // throws on probabilities outside [0,1]
};

// Seeded bit-error process. A single instance advances its PRNG state
// across push calls, so chunking does not change the output stream.
class Channel {
public:
    explicit Channel(ChannelConfig config);

    // Flip bits in place, MSB-first bit order.
    void corrupt(std::span<uint8_t> bytes);

    uint64_t bits_processed() const { return bits_processed_; }
    uint64_t bits_flipped() const { return bits_flipped_; }

private:
    void corrupt_bsc(std::span<uint8_t> bytes);
    void corrupt_ge(std::span<uint8_t> bytes);
    uint64_t next_gap();

    ChannelConfig cfg_;
    std::mt19937_64 rng_;
    uint64_t gap_ = 0;      // BSC: clean bits remaining before the next flip
    bool bad_state_ = false;
    uint64_t bits_processed_ = 0;
    uint64_t bits_flipped_ = 0;
};

// One-shot form: deterministic function of (bytes, config).
void corrupt(std::span<uint8_t> bytes, const ChannelConfig& config);

// hamming distance / bit length; throws on length mismatch
double empirical_ber(std::span<const uint8_t> a, std::span<const uint8_t> b);

// Long-run BER of a Gilbert-Elliott process: stationary mixture of the
// per-state error rates.
double gilbert_elliott_stationary_ber(const ChannelConfig& config);

} // namespace linkenh
