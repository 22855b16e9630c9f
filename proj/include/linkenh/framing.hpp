#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace linkenh {

struct FramingParams {
    uint32_t marker = 0x1ACFFC1D; // 32-bit attached sync marker
    int n = 255;                  // codeword bytes per frame
    int h_tol = 2;                // tolerated marker bit errors in PRESYNC/LOCK
    int m_confirm = 2;            // confirmations to reach LOCK
    int l_loss = 3;               // consecutive misses before LOCK is dropped

    int marker_bytes() const { return 4; }
    int frame_bytes() const { return 4 + n; }
    int frame_bits() const { return frame_bytes() * 8; }
};

// marker prepended to the codeword; output length 4 + n
std::vector<uint8_t> frame_encode(std::span<const uint8_t> codeword,
                                  const FramingParams& params);
void frame_encode_append(std::span<const uint8_t> codeword,
                         const FramingParams& params,
                         std::vector<uint8_t>& out);

struct SyncEvents {
    uint64_t acquired = 0;
    uint64_t lost = 0;
    uint64_t false_candidate = 0;
    uint64_t marker_misses = 0; // tolerated misses while locked
};

// Block synchronizer over a bit stream. HUNT scans bit-by-bit for an exact
// 32-bit marker match; PRESYNC re-checks the marker at frame-period offsets
// with <= h_tol mismatches; LOCK emits one n-byte codeword per passing
// marker check and drops to HUNT after l_loss consecutive misses.
class FrameSynchronizer {
public:
    enum class State { Hunt, Presync, Lock };

    explicit FrameSynchronizer(FramingParams params);

    // Feed link bytes (MSB-first bit order). Aligned codewords are appended
    // to `out` as consecutive n-byte blocks.
    void push(std::span<const uint8_t> bytes, std::vector<uint8_t>& out);

    State state() const { return state_; }
    const SyncEvents& events() const { return events_; }
    uint64_t bit_offset() const { return base_bits_ + pos_; }

private:
    bool marker_at(uint64_t bitpos, int tol) const;
    uint8_t byte_at(uint64_t bitpos) const;
    uint64_t bits_available() const { return buf_.size() * 8; }
    void compact();

    FramingParams params_;
    State state_ = State::Hunt;
    SyncEvents events_;
    int confirmations_ = 0;
    int miss_count_ = 0;
    std::vector<uint8_t> buf_;
    uint64_t base_bits_ = 0;      // bits discarded from the front of buf_
    uint64_t pos_ = 0;            // current bit position within buf_
    uint64_t candidate_ = 0;      // HUNT candidate start, for rewind
    bool have_window_ = false;
    uint32_t window_ = 0;         // HUNT shift register, bits [pos_-32, pos_)
};

struct SyncBudget {
    double expected_false_locks_per_10_days = 0.0;
    double per_frame_detection_prob = 0.0;
    double overhead_fraction = 0.0;
};

// Closed-form design-target check: false-lock rate over 10 days at the given
// line rate, per-frame tolerant-marker detection probability at `ber`, and
// marker overhead for an n-byte codeword.
SyncBudget sync_budget(double line_rate_bps, int marker_bits, int h_tol,
                       int m_confirm, int l_loss, double ber = 1e-3,
                       int n = 255);

} // namespace linkenh
