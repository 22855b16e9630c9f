#include "linkenh/pipeline.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace linkenh {

void PipelineParams::validate() const {
    if (framing.n != rs.n)
        throw std::invalid_argument("PipelineParams: framing.n != rs.n");
    if (fifo_depth < 1)
        throw std::invalid_argument("PipelineParams: fifo_depth must be >= 1");
}

LinkEncoder::LinkEncoder(const PipelineParams& params)
    : params_(params), codec_(params.rs),
      delineator_(params.alpha, params.delta) {
    params_.validate();
}

void LinkEncoder::fill_pipe_to(size_t target) {
    while (pipe_.size() < target && !fifo_.empty()) {
        const size_t off = pipe_.size();
        pipe_.resize(off + kCellSize);
        fifo_.front().serialize(pipe_.data() + off);
        fifo_.pop_front();
    }
    static const AtmCell idle = make_idle_cell();
    while (pipe_.size() < target) {
        const size_t off = pipe_.size();
        pipe_.resize(off + kCellSize);
        idle.serialize(pipe_.data() + off);
        ++counters_.fill_cells_inserted;
    }
}

void LinkEncoder::ingest(std::span<const uint8_t> switch_bytes) {
    scratch_cells_.clear();
    delineator_.push(switch_bytes, scratch_cells_);
    for (auto& cell : scratch_cells_) {
        if (!cell.hec_valid) {
            ++counters_.hec_invalid_in;
        } else if (is_filler(cell)) {
            ++counters_.idle_dropped;
        } else if (fifo_.size() >= params_.fifo_depth) {
            ++counters_.assigned_dropped_overflow;
        } else {
            fifo_.push_back(cell);
        }
    }
}

void LinkEncoder::push(std::span<const uint8_t> switch_bytes,
                       std::vector<uint8_t>& link_out) {
    const size_t k = static_cast<size_t>(params_.rs.k);
    const uint64_t frame_bytes =
        static_cast<uint64_t>(params_.framing.frame_bytes());
    // interleave input with frame emission so the fifo drains at line rate
    // regardless of how the caller chunks its pushes
    size_t pos = 0;
    while (pos < switch_bytes.size()) {
        const size_t take = static_cast<size_t>(
            std::min<uint64_t>(switch_bytes.size() - pos,
                               frame_bytes - byte_credit_));
        ingest(switch_bytes.subspan(pos, take));
        byte_credit_ += take;
        pos += take;
        if (byte_credit_ < frame_bytes) break;
        byte_credit_ -= frame_bytes;
        fill_pipe_to(k);
        const auto codeword =
            codec_.encode(std::span<const uint8_t>(pipe_.data(), k));
        frame_encode_append(codeword, params_.framing, link_out);
        pipe_.erase(pipe_.begin(), pipe_.begin() + static_cast<long>(k));
        ++counters_.frames_emitted;
    }
}

LinkDecoder::LinkDecoder(const PipelineParams& params)
    : params_(params), codec_(params.rs), sync_(params.framing),
      out_delineator_(params.alpha, params.delta) {
    params_.validate();
}

void LinkDecoder::ingest(std::span<const uint8_t> link_bytes) {
    sync_.push(link_bytes, codewords_);
    const size_t n = static_cast<size_t>(params_.rs.n);
    const size_t k = static_cast<size_t>(params_.rs.k);
    while (cw_pos_ + n <= codewords_.size()) {
        uint8_t* block = codewords_.data() + cw_pos_;
        cw_pos_ += n;
        const int corrected = codec_.decode_in_place(block);
        if (corrected < 0) {
            ++counters_.blocks_failed; // payload passes through uncorrected
        } else {
            ++counters_.blocks_ok;
            counters_.symbols_corrected += static_cast<uint64_t>(corrected);
        }
        scratch_cells_.clear();
        out_delineator_.push(std::span<const uint8_t>(block, k),
                             scratch_cells_);
        for (auto& cell : scratch_cells_) {
            if (cell.hec_valid && is_filler(cell)) {
                ++counters_.filler_dropped;
            } else {
                ++counters_.cells_recovered;
                outq_.push_back(cell);
            }
        }
    }
    if (cw_pos_ == codewords_.size()) {
        codewords_.clear();
        cw_pos_ = 0;
    } else if (cw_pos_ >= 4096) {
        codewords_.erase(codewords_.begin(),
                         codewords_.begin() + static_cast<long>(cw_pos_));
        cw_pos_ = 0;
    }
}

void LinkDecoder::push(std::span<const uint8_t> link_bytes,
                       std::vector<uint8_t>& switch_out) {
    static const AtmCell idle = make_idle_cell();
    // one output cell per 53 link bytes, interleaved with ingestion so the
    // emitted stream does not depend on push chunking
    size_t pos = 0;
    while (pos < link_bytes.size()) {
        const size_t take = static_cast<size_t>(
            std::min<uint64_t>(link_bytes.size() - pos,
                               kCellSize - byte_credit_));
        ingest(link_bytes.subspan(pos, take));
        byte_credit_ += take;
        pos += take;
        if (byte_credit_ < kCellSize) break;
        byte_credit_ = 0;
        const size_t off = switch_out.size();
        switch_out.resize(off + kCellSize);
        if (!outq_.empty()) {
            outq_.front().serialize(switch_out.data() + off);
            outq_.pop_front();
        } else {
            idle.serialize(switch_out.data() + off);
            ++counters_.idle_minted;
        }
        ++counters_.cells_emitted;
    }
}

} // namespace linkenh
