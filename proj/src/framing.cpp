#include "linkenh/framing.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace linkenh {

std::vector<uint8_t> frame_encode(std::span<const uint8_t> codeword,
                                  const FramingParams& params) {
    std::vector<uint8_t> out;
    out.reserve(params.frame_bytes());
    frame_encode_append(codeword, params, out);
    return out;
}

void frame_encode_append(std::span<const uint8_t> codeword,
                         const FramingParams& params,
                         std::vector<uint8_t>& out) {
    if (static_cast<int>(codeword.size()) != params.n)
        throw std::invalid_argument("frame_encode: codeword length != n");
    out.push_back(static_cast<uint8_t>(params.marker >> 24));
    out.push_back(static_cast<uint8_t>(params.marker >> 16));
    out.push_back(static_cast<uint8_t>(params.marker >> 8));
    out.push_back(static_cast<uint8_t>(params.marker));
    out.insert(out.end(), codeword.begin(), codeword.end());
}

FrameSynchronizer::FrameSynchronizer(FramingParams params) : params_(params) {
    if (params.l_loss < 1 || params.m_confirm < 1 || params.h_tol < 0)
        throw std::invalid_argument("FrameSynchronizer: bad parameters");
}

uint8_t FrameSynchronizer::byte_at(uint64_t bitpos) const {
    const size_t i = bitpos >> 3;
    const int s = static_cast<int>(bitpos & 7);
    if (s == 0) return buf_[i];
    return static_cast<uint8_t>((buf_[i] << s) | (buf_[i + 1] >> (8 - s)));
}

bool FrameSynchronizer::marker_at(uint64_t bitpos, int tol) const {
    const uint32_t w = (static_cast<uint32_t>(byte_at(bitpos)) << 24) |
                       (static_cast<uint32_t>(byte_at(bitpos + 8)) << 16) |
                       (static_cast<uint32_t>(byte_at(bitpos + 16)) << 8) |
                       static_cast<uint32_t>(byte_at(bitpos + 24));
    return std::popcount(w ^ params_.marker) <= tol;
}

void FrameSynchronizer::compact() {
    const uint64_t keep_from =
        state_ == State::Presync && candidate_ < pos_ ? candidate_ : pos_;
    const uint64_t drop_bytes = keep_from >> 3;
    if (drop_bytes < 65536) return;
    buf_.erase(buf_.begin(), buf_.begin() + static_cast<long>(drop_bytes));
    base_bits_ += drop_bytes * 8;
    pos_ -= drop_bytes * 8;
    candidate_ -= candidate_ >= drop_bytes * 8 ? drop_bytes * 8 : candidate_;
}

void FrameSynchronizer::push(std::span<const uint8_t> bytes,
                             std::vector<uint8_t>& out) {
    buf_.insert(buf_.end(), bytes.begin(), bytes.end());
    const uint64_t avail = bits_available();
    const uint64_t frame_bits = static_cast<uint64_t>(params_.frame_bits());
    const uint64_t cw_bits = static_cast<uint64_t>(params_.n) * 8;

    for (;;) {
        switch (state_) {
        case State::Hunt: {
            if (pos_ + 32 > avail) {
                compact();
                return;
            }
            if (!have_window_) {
                window_ = (static_cast<uint32_t>(byte_at(pos_)) << 24) |
                          (static_cast<uint32_t>(byte_at(pos_ + 8)) << 16) |
                          (static_cast<uint32_t>(byte_at(pos_ + 16)) << 8) |
                          static_cast<uint32_t>(byte_at(pos_ + 24));
                have_window_ = true;
            }
            bool found = false;
            for (;;) {
                if (window_ == params_.marker) {
                    found = true;
                    break;
                }
                if (pos_ + 33 > avail) break;
                const uint64_t nb = pos_ + 32;
                const uint32_t bit =
                    (buf_[nb >> 3] >> (7 - (nb & 7))) & 1u;
                window_ = (window_ << 1) | bit;
                ++pos_;
            }
            if (!found) {
                compact();
                return;
            }
            candidate_ = pos_;
            pos_ = candidate_ + frame_bits; // next marker to confirm
            have_window_ = false;
            state_ = State::Presync;
            confirmations_ = 0;
            break;
        }
        case State::Presync: {
            if (pos_ + 32 > avail) {
                compact();
                return;
            }
            if (!marker_at(pos_, params_.h_tol)) {
                ++events_.false_candidate;
                state_ = State::Hunt;
                pos_ = candidate_ + 1;
                have_window_ = false;
                break;
            }
            if (++confirmations_ >= params_.m_confirm) {
                state_ = State::Lock; // re-examines this marker and emits
                miss_count_ = 0;
                ++events_.acquired;
            } else {
                pos_ += frame_bits;
            }
            break;
        }
        case State::Lock: {
            if (pos_ + 32 + cw_bits > avail) {
                compact();
                return;
            }
            if (marker_at(pos_, params_.h_tol)) {
                miss_count_ = 0;
                const uint64_t cw_start = pos_ + 32;
                const size_t off = out.size();
                out.resize(off + params_.n);
                if ((cw_start & 7) == 0) {
                    std::memcpy(out.data() + off, buf_.data() + (cw_start >> 3),
                                params_.n);
                } else {
                    for (int i = 0; i < params_.n; ++i)
                        out[off + i] = byte_at(cw_start + i * 8);
                }
                pos_ += frame_bits;
            } else {
                ++events_.marker_misses;
                if (++miss_count_ >= params_.l_loss) {
                    ++events_.lost;
                    state_ = State::Hunt;
                    ++pos_;
                    have_window_ = false;
                } else {
                    pos_ += frame_bits; // alignment kept, frame discarded
                }
            }
            break;
        }
        }
    }
}

namespace {
double binom_cdf(int n, int k, double p) {
    // P(X <= k) for X ~ Binomial(n, p), log-domain terms
    if (k >= n) return 1.0;
    if (p <= 0.0) return 1.0;
    double sum = 0.0;
    for (int i = 0; i <= k; ++i) {
        const double lt = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) -
                          std::lgamma(n - i + 1.0) + i * std::log(p) +
                          (n - i) * std::log1p(-p);
        sum += std::exp(lt);
    }
    return sum > 1.0 ? 1.0 : sum;
}
} // namespace

SyncBudget sync_budget(double line_rate_bps, int marker_bits, int h_tol,
                       int m_confirm, int /*l_loss*/, double ber, int n) {
    SyncBudget b;
    // tolerant patterns within h_tol bits of the marker
    double tolerant = 0.0;
    for (int i = 0; i <= h_tol; ++i)
        tolerant += std::exp(std::lgamma(marker_bits + 1.0) -
                             std::lgamma(i + 1.0) -
                             std::lgamma(marker_bits - i + 1.0));
    const double bits_10_days = line_rate_bps * 86400.0 * 10.0;
    const double p_exact = std::pow(2.0, -marker_bits);
    const double p_tolerant = tolerant * p_exact;
    b.expected_false_locks_per_10_days =
        bits_10_days * p_exact * std::pow(p_tolerant, m_confirm);
    b.per_frame_detection_prob = binom_cdf(marker_bits, h_tol, ber);
    b.overhead_fraction =
        static_cast<double>(marker_bits) / (marker_bits + 8.0 * n);
    return b;
}

} // namespace linkenh
