#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "linkenh/atm.hpp"
#include "linkenh/channel.hpp"
#include "linkenh/framing.hpp"
#include "linkenh/rs.hpp"

namespace linkenh {

struct PipelineParams {
    RsCodeParams rs;        // default RS(255,235)
    FramingParams framing;  // framing.n must equal rs.n
    int alpha = 7;
    int delta = 6;
    size_t fifo_depth = 64; // assigned-cell queue, cells

    void validate() const;
};

struct EncoderCounters {
    uint64_t idle_dropped = 0;
    uint64_t assigned_dropped_overflow = 0;
    uint64_t frames_emitted = 0;
    uint64_t hec_invalid_in = 0; // switch-side cells with bad HEC, dropped
    uint64_t fill_cells_inserted = 0;
};

// Encoder path: delineate -> drop filler -> pack assigned cells into a
// continuous byte pipe -> slice into k-byte RS payloads -> encode -> frame.
// One frame is emitted per frame_bytes() of switch input, so the line rate
// is conserved.
class LinkEncoder {
public:
    explicit LinkEncoder(const PipelineParams& params);

    void push(std::span<const uint8_t> switch_bytes,
              std::vector<uint8_t>& link_out);

    const EncoderCounters& counters() const { return counters_; }

private:
    void ingest(std::span<const uint8_t> switch_bytes);
    void fill_pipe_to(size_t target);

    PipelineParams params_;
    RsCodec codec_;
    Delineator delineator_;
    std::deque<AtmCell> fifo_;
    std::vector<uint8_t> pipe_; // partial payload, < k bytes at rest
    uint64_t byte_credit_ = 0;
    std::vector<AtmCell> scratch_cells_;
    EncoderCounters counters_;
};

struct DecoderCounters {
    uint64_t blocks_ok = 0;
    uint64_t blocks_failed = 0;
    uint64_t symbols_corrected = 0;
    uint64_t cells_recovered = 0; // assigned cells out of re-delineation
    uint64_t filler_dropped = 0;
    uint64_t idle_minted = 0;
    uint64_t cells_emitted = 0;
};

// Decoder path: frame sync -> RS decode (failures pass through uncorrected)
// -> re-delineate the byte pipe -> emit one cell per output cell slot,
// minting idle cells on underrun.
class LinkDecoder {
public:
    explicit LinkDecoder(const PipelineParams& params);

    void push(std::span<const uint8_t> link_bytes,
              std::vector<uint8_t>& switch_out);

    const DecoderCounters& counters() const { return counters_; }
    const SyncEvents& sync_events() const { return sync_.events(); }

private:
    void ingest(std::span<const uint8_t> link_bytes);

    PipelineParams params_;
    RsCodec codec_;
    FrameSynchronizer sync_;
    Delineator out_delineator_;
    std::deque<AtmCell> outq_;
    uint64_t byte_credit_ = 0;
    std::vector<uint8_t> codewords_;
    size_t cw_pos_ = 0;
    std::vector<AtmCell> scratch_cells_;
    DecoderCounters counters_;
};

} // namespace linkenh
