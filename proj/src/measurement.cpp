#include "linkenh/measurement.hpp"

#include <bit>
#include <cstring>
#include <ostream>
#include <stdexcept>

namespace linkenh {

uint16_t crc16_ccitt(std::span<const uint8_t> data, uint16_t init) {
    uint16_t crc = init;
    for (uint8_t b : data) {
        crc ^= static_cast<uint16_t>(b) << 8;
        for (int i = 0; i < 8; ++i)
            crc = (crc & 0x8000) ? static_cast<uint16_t>((crc << 1) ^ 0x1021)
                                 : static_cast<uint16_t>(crc << 1);
    }
    return crc;
}

void fill_test_payload(uint32_t seq, uint64_t ts_ns, uint8_t* p) {
    p[0] = static_cast<uint8_t>(seq >> 24);
    p[1] = static_cast<uint8_t>(seq >> 16);
    p[2] = static_cast<uint8_t>(seq >> 8);
    p[3] = static_cast<uint8_t>(seq);
    for (int i = 0; i < 8; ++i)
        p[4 + i] = static_cast<uint8_t>(ts_ns >> (56 - 8 * i));
    std::memset(p + 12, 0x55, 34);
    const uint16_t crc = crc16_ccitt(std::span<const uint8_t>(p, 46));
    p[46] = static_cast<uint8_t>(crc >> 8);
    p[47] = static_cast<uint8_t>(crc);
}

bool test_payload_crc_ok(const uint8_t* p) {
    const uint16_t crc = crc16_ccitt(std::span<const uint8_t>(p, 46));
    return p[46] == static_cast<uint8_t>(crc >> 8) &&
           p[47] == static_cast<uint8_t>(crc);
}

uint32_t test_payload_seq(const uint8_t* p) {
    return static_cast<uint32_t>(p[0]) << 24 | static_cast<uint32_t>(p[1]) << 16 |
           static_cast<uint32_t>(p[2]) << 8 | static_cast<uint32_t>(p[3]);
}

uint64_t test_payload_timestamp(const uint8_t* p) {
    uint64_t ts = 0;
    for (int i = 0; i < 8; ++i) ts = ts << 8 | p[4 + i];
    return ts;
}

AtmCell make_test_cell(uint32_t seq, uint64_t ts_ns,
                       const std::array<uint8_t, 4>& header) {
    AtmCell c;
    c.header = header;
    c.hec = compute_hec(header.data());
    fill_test_payload(seq, ts_ns, c.payload.data());
    return c;
}

uint64_t TrafficConfig::slots_for_duration(double seconds) const {
    return static_cast<uint64_t>(seconds * line_rate_bps / (kCellSize * 8.0));
}

CbrGenerator::CbrGenerator(TrafficConfig config) : cfg_(config) {
    if (!(cfg_.utilization > 0.0 && cfg_.utilization <= 1.0))
        throw std::invalid_argument("CbrGenerator: utilization outside (0,1]");
}

void CbrGenerator::generate(uint64_t slots, std::vector<uint8_t>& out) {
    static const AtmCell idle = make_idle_cell();
    const double slot_ns = kCellSize * 8.0 * 1e9 / cfg_.line_rate_bps;
    out.reserve(out.size() + slots * kCellSize);
    for (uint64_t i = 0; i < slots; ++i, ++slot_) {
        acc_ += cfg_.utilization;
        if (acc_ >= 1.0 - 1e-12) {
            acc_ -= 1.0;
            const uint64_t ts =
                static_cast<uint64_t>(static_cast<double>(slot_) * slot_ns);
            const AtmCell cell = make_test_cell(seq_++, ts, cfg_.header);
            const size_t off = out.size();
            out.resize(off + kCellSize);
            cell.serialize(out.data() + off);
            if (record_)
                sent_.insert(sent_.end(), out.begin() + off, out.end());
        } else {
            const size_t off = out.size();
            out.resize(off + kCellSize);
            idle.serialize(out.data() + off);
        }
    }
}

void CbrGenerator::generate_idle(uint64_t slots, std::vector<uint8_t>& out) {
    static const AtmCell idle = make_idle_cell();
    for (uint64_t i = 0; i < slots; ++i, ++slot_) {
        const size_t off = out.size();
        out.resize(off + kCellSize);
        idle.serialize(out.data() + off);
    }
}

StreamVerifier::StreamVerifier(VerifierConfig config) : cfg_(config) {
    std::memcpy(test_ref_.data(), cfg_.header.data(), 4);
    test_ref_[4] = compute_hec(cfg_.header.data());
    const AtmCell idle = make_idle_cell();
    std::memcpy(idle_ref_.data(), idle.header.data(), 4);
    idle_ref_[4] = idle.hec;
    unassigned_ref_ = {0, 0, 0, 0, 0};
    unassigned_ref_[4] = compute_hec(unassigned_ref_.data());
}

void StreamVerifier::account_block(uint64_t seq_pos) {
    ++block_impairments_[seq_pos / cfg_.block_size];
}

void StreamVerifier::push_cells(std::span<const uint8_t> cell_bytes) {
    if (cell_bytes.size() % kCellSize != 0)
        throw std::invalid_argument("StreamVerifier: not a whole cell stream");
    const double slot_ns = kCellSize * 8.0 * 1e9 / cfg_.line_rate_bps;
    for (size_t off = 0; off < cell_bytes.size(); off += kCellSize, ++rx_slot_) {
        const uint8_t* cell = cell_bytes.data() + off;
        // exact filler match: not part of the measured stream
        if (std::memcmp(cell, idle_ref_.data(), 5) == 0 ||
            std::memcmp(cell, unassigned_ref_.data(), 5) == 0)
            continue;
        const uint8_t* payload = cell + 5;
        if (test_payload_crc_ok(payload)) {
            const uint64_t seq = test_payload_seq(payload);
            if (!baselined_) {
                baselined_ = true;
                first_seq_ = seq;
                expected_ = seq;
            }
            if (seq == expected_) {
                ++good_;
                ++expected_;
            } else if (seq > expected_) {
                const uint64_t gap = seq - expected_;
                lost_ += gap;
                for (uint64_t g = 0; g < gap; ++g) account_block(expected_ + g);
                ++good_;
                expected_ = seq + 1;
            } else if (expected_ - seq <= cfg_.misinsert_window) {
                ++misinserted_;
                account_block(seq);
                continue; // does not consume an expected slot
            } else {
                ++misinserted_;
                account_block(expected_);
                continue;
            }
            const uint64_t ts = test_payload_timestamp(payload);
            const double rx_ns = static_cast<double>(rx_slot_) * slot_ns;
            const double lat_ns = rx_ns - static_cast<double>(ts);
            latency_sum_ += lat_ns;
            ++latency_count_;
            ++latency_hist_[static_cast<int64_t>(lat_ns)];
        } else {
            // corrupted cell: attribute to the nearer reference header
            int d_test = 0, d_fill = 0;
            for (int i = 0; i < 5; ++i) {
                d_test += std::popcount(
                    static_cast<unsigned>(cell[i] ^ test_ref_[i]));
                const int di = std::popcount(
                    static_cast<unsigned>(cell[i] ^ idle_ref_[i]));
                const int du = std::popcount(
                    static_cast<unsigned>(cell[i] ^ unassigned_ref_[i]));
                d_fill += di < du ? di : du;
            }
            if (d_fill < d_test) continue; // corrupted filler, not measured
            if (!baselined_) continue;     // cannot attribute before lock-on
            ++errored_;
            account_block(expected_);
            ++expected_; // assume it occupied the next expected slot
        }
    }
}

LinkMetrics StreamVerifier::finish(uint64_t total_tx) {
    LinkMetrics m;
    m.block_size = cfg_.block_size;
    m.secb_threshold = cfg_.secb_threshold;
    m.warmup_skipped = first_seq_;
    // tail: transmitted cells never seen by the verifier
    if (baselined_ && total_tx > expected_) {
        const uint64_t tail = total_tx - expected_;
        lost_ += tail;
        for (uint64_t g = 0; g < tail; ++g) account_block(expected_ + g);
    }
    const uint64_t effective_tx = baselined_ ? total_tx - first_seq_ : total_tx;
    m.total_tx = effective_tx;
    m.total_rx = good_ + errored_ + misinserted_;
    m.errored = errored_;
    m.lost = baselined_ ? lost_ : effective_tx;
    m.misinserted = misinserted_;
    if (effective_tx > 0) {
        m.cer = static_cast<double>(m.errored) / static_cast<double>(effective_tx);
        m.clr = static_cast<double>(m.lost) / static_cast<double>(effective_tx);
    }
    m.total_blocks =
        effective_tx == 0 ? 0 : (effective_tx + cfg_.block_size - 1) / cfg_.block_size;
    for (const auto& [blk, count] : block_impairments_)
        if (count > cfg_.secb_threshold) ++m.severely_errored_blocks;
    if (m.total_blocks > 0)
        m.secbr = static_cast<double>(m.severely_errored_blocks) /
                  static_cast<double>(m.total_blocks);
    if (latency_count_ > 0) {
        m.mean_latency = latency_sum_ / static_cast<double>(latency_count_) * 1e-9;
        const uint64_t target =
            static_cast<uint64_t>(0.99 * static_cast<double>(latency_count_));
        uint64_t seen = 0;
        for (const auto& [ns, count] : latency_hist_) {
            seen += count;
            if (seen >= target) {
                m.latency_p99 = static_cast<double>(ns) * 1e-9;
                break;
            }
        }
    }
    return m;
}

void write_metrics_csv(std::ostream& os, const LinkMetrics& m, bool header) {
    if (header)
        os << "total_tx,total_rx,errored,lost,misinserted,cer,clr,secbr,"
              "block_size,secb_threshold,mean_latency,latency_p99\n";
    os.precision(9);
    os << m.total_tx << ',' << m.total_rx << ',' << m.errored << ',' << m.lost
       << ',' << m.misinserted << ',' << m.cer << ',' << m.clr << ','
       << m.secbr << ',' << m.block_size << ',' << m.secb_threshold << ','
       << m.mean_latency << ',' << m.latency_p99 << '\n';
}

void write_metrics_summary(std::ostream& os, const LinkMetrics& m,
                           double line_rate_bps, double utilization) {
    const double cells_per_sec =
        utilization * line_rate_bps / (kCellSize * 8.0);
    os.precision(6);
    os << "Cells/Sec                      " << cells_per_sec << '\n'
       << "Mbps                           "
       << utilization * line_rate_bps / 1e6 << '\n'
       << "Total                          " << m.total_tx << '\n'
       << "Cells Lost                     " << m.lost << '\n'
       << "Cell Loss Ratio                " << m.clr << '\n'
       << "Errored Cells                  " << m.errored << '\n'
       << "Cell Error Rate                " << m.cer << '\n'
       << "Misinserted Cells              " << m.misinserted << '\n'
       << "Severely Errored Blocks        " << m.severely_errored_blocks << '\n'
       << "Severely Errored Blocks Ratio  " << m.secbr << '\n'
       << "Mean Latency (s)               " << m.mean_latency << '\n'
       << "Latency p99 (s)                " << m.latency_p99 << '\n';
}

} // namespace linkenh
