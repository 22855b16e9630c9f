#include "linkenh/channel.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace linkenh {

namespace {
void check_prob(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string("ChannelConfig: ") + name +
                                    " outside [0,1]");
}
} // namespace

void ChannelConfig::validate() const {
    check_prob(p_e, "p_e");
    check_prob(p_good, "p_good");
    check_prob(p_bad, "p_bad");
    check_prob(p_g2b, "p_g2b");
    check_prob(p_b2g, "p_b2g");
}

Channel::Channel(ChannelConfig config) : cfg_(config), rng_(config.seed) {
    cfg_.validate();
    if (cfg_.mode == ChannelConfig::Mode::Bsc && cfg_.p_e > 0.0 &&
        cfg_.p_e < 1.0)
        gap_ = next_gap();
}

uint64_t Channel::next_gap() {
    std::geometric_distribution<uint64_t> d(cfg_.p_e);
    return d(rng_);
}

void Channel::corrupt(std::span<uint8_t> bytes) {
    if (cfg_.mode == ChannelConfig::Mode::Bsc)
        corrupt_bsc(bytes);
    else
        corrupt_ge(bytes);
}

void Channel::corrupt_bsc(std::span<uint8_t> bytes) {
    const uint64_t nbits = bytes.size() * 8;
    bits_processed_ += nbits;
    if (cfg_.p_e <= 0.0) return;
    if (cfg_.p_e >= 1.0) {
        for (auto& b : bytes) b = static_cast<uint8_t>(~b);
        bits_flipped_ += nbits;
        return;
    }
    // geometric gaps between flips
    uint64_t pos = gap_;
    while (pos < nbits) {
        bytes[pos >> 3] ^= static_cast<uint8_t>(0x80u >> (pos & 7));
        ++bits_flipped_;
        pos += 1 + next_gap();
    }
    gap_ = pos - nbits;
}

void Channel::corrupt_ge(std::span<uint8_t> bytes) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (size_t i = 0; i < bytes.size(); ++i) {
        uint8_t b = bytes[i];
        for (int j = 0; j < 8; ++j) {
            if (bad_state_) {
                if (u(rng_) < cfg_.p_b2g) bad_state_ = false;
            } else {
                if (u(rng_) < cfg_.p_g2b) bad_state_ = true;
            }
            const double p = bad_state_ ? cfg_.p_bad : cfg_.p_good;
            if (p > 0.0 && u(rng_) < p) {
                b ^= static_cast<uint8_t>(0x80u >> j);
                ++bits_flipped_;
            }
        }
        bytes[i] = b;
        bits_processed_ += 8;
    }
}

void corrupt(std::span<uint8_t> bytes, const ChannelConfig& config) {
    Channel ch(config);
    ch.corrupt(bytes);
}

double empirical_ber(std::span<const uint8_t> a, std::span<const uint8_t> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("empirical_ber: length mismatch");
    if (a.empty()) return 0.0;
    uint64_t dist = 0;
    for (size_t i = 0; i < a.size(); ++i)
        dist += std::popcount(static_cast<unsigned>(a[i] ^ b[i]));
    return static_cast<double>(dist) / (8.0 * static_cast<double>(a.size()));
}

double gilbert_elliott_stationary_ber(const ChannelConfig& config) {
    const double denom = config.p_g2b + config.p_b2g;
    if (denom <= 0.0) return config.p_good; // chain never leaves good
    const double pi_bad = config.p_g2b / denom;
    return config.p_good * (1.0 - pi_bad) + config.p_bad * pi_bad;
}

} // namespace linkenh
