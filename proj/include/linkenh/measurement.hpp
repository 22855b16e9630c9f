#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "linkenh/atm.hpp"

namespace linkenh {

// CRC-CCITT (poly 0x1021, init 0xFFFF, no reflection)
uint16_t crc16_ccitt(std::span<const uint8_t> data, uint16_t init = 0xFFFF);

// Test cell payload layout (48 bytes):
//   bytes 0-3   sequence number, big-endian
//   bytes 4-11  timestamp, virtual nanoseconds, big-endian
//   bytes 12-45 pad 0x55
//   bytes 46-47 CRC-CCITT over bytes 0-45
void fill_test_payload(uint32_t seq, uint64_t ts_ns, uint8_t* payload);
bool test_payload_crc_ok(const uint8_t* payload);
uint32_t test_payload_seq(const uint8_t* payload);
uint64_t test_payload_timestamp(const uint8_t* payload);

AtmCell make_test_cell(uint32_t seq, uint64_t ts_ns,
                       const std::array<uint8_t, 4>& header);

struct TrafficConfig {
    double utilization = 0.5;       // fraction of cell slots carrying test cells
    double line_rate_bps = 2.048e6;
    std::array<uint8_t, 4> header = {0x03, 0x33, 0x33, 0x30}; // VPI 51, VCI 0x3333

    double cell_slot_seconds() const { return kCellSize * 8.0 / line_rate_bps; }
    uint64_t slots_for_duration(double seconds) const;
};

// CBR test-cell source: test cells at utilization x line cell rate on evenly
// spaced slots, idle cells elsewhere; seq strictly increasing from 0.
class CbrGenerator {
public:
    explicit CbrGenerator(TrafficConfig config);

    // Emit `slots` cell slots (53 bytes each) appended to `out`.
    void generate(uint64_t slots, std::vector<uint8_t>& out);

    // Idle-only slots, used to flush a pipeline after the traffic ends.
    void generate_idle(uint64_t slots, std::vector<uint8_t>& out);

    uint64_t test_cells_sent() const { return seq_; }
    uint64_t slots_done() const { return slot_; }

    // Byte image of every test cell sent, kept only when recording is on
    // (transparency checks); off by default.
    void record_sent(bool on) { record_ = on; }
    const std::vector<uint8_t>& sent_cells() const { return sent_; }

private:
    TrafficConfig cfg_;
    uint64_t slot_ = 0;
    uint32_t seq_ = 0;
    double acc_ = 0.0;
    bool record_ = false;
    std::vector<uint8_t> sent_;
};

struct LinkMetrics {
    uint64_t total_tx = 0;
    uint64_t total_rx = 0;     // received cells attributed to the test stream
    uint64_t errored = 0;
    uint64_t lost = 0;
    uint64_t misinserted = 0;
    double cer = 0.0;
    double clr = 0.0;
    double secbr = 0.0;
    uint64_t block_size = 16384;
    uint64_t secb_threshold = 32;
    double mean_latency = 0.0;   // seconds
    double latency_p99 = 0.0;    // seconds
    uint64_t severely_errored_blocks = 0;
    uint64_t total_blocks = 0;
    uint64_t warmup_skipped = 0; // tx cells before the verifier's first lock-on
};

void write_metrics_csv(std::ostream& os, const LinkMetrics& m,
                       bool header = true);
// Line-oriented summary with analyzer-style row labels.
void write_metrics_summary(std::ostream& os, const LinkMetrics& m,
                           double line_rate_bps, double utilization);

struct VerifierConfig {
    std::array<uint8_t, 4> header = {0x03, 0x33, 0x33, 0x30};
    double line_rate_bps = 2.048e6;
    uint64_t block_size = 16384;
    uint64_t secb_threshold = 32;
    uint64_t misinsert_window = 65536;
};

// O.191-style receive verifier. Consumes 53-byte cell slots in order,
// classifies each as filler / good / errored / misinserted, and tracks
// losses from sequence gaps. The expected sequence number is baselined at
// the first correctly received test cell, so acquisition warm-up is
// reported separately rather than as loss.
class StreamVerifier {
public:
    explicit StreamVerifier(VerifierConfig config);

    void push_cells(std::span<const uint8_t> cell_bytes); // multiple of 53

    // total_tx: number of test cells actually transmitted
    LinkMetrics finish(uint64_t total_tx);

private:
    void account_block(uint64_t seq_pos);

    VerifierConfig cfg_;
    std::array<uint8_t, 5> test_ref_;   // header + hec
    std::array<uint8_t, 5> idle_ref_;
    std::array<uint8_t, 5> unassigned_ref_;
    bool baselined_ = false;
    uint64_t first_seq_ = 0;
    uint64_t expected_ = 0;
    uint64_t rx_slot_ = 0;
    uint64_t good_ = 0, errored_ = 0, lost_ = 0, misinserted_ = 0;
    double latency_sum_ = 0.0;
    uint64_t latency_count_ = 0;
    std::map<int64_t, uint64_t> latency_hist_; // nanoseconds -> count
    std::map<uint64_t, uint64_t> block_impairments_;
};

} // namespace linkenh
