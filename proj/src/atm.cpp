#include "linkenh/atm.hpp"

#include <cstring>
#include <stdexcept>

namespace linkenh {

namespace {

constexpr uint8_t kHecCoset = 0x55;

struct HecTable {
    uint8_t tab[256];
    HecTable() {
        for (int b = 0; b < 256; ++b) {
            uint8_t crc = static_cast<uint8_t>(b);
            for (int i = 0; i < 8; ++i)
                crc = (crc & 0x80) ? static_cast<uint8_t>((crc << 1) ^ 0x07)
                                   : static_cast<uint8_t>(crc << 1);
            tab[b] = crc;
        }
    }
};
const HecTable hec_table;

constexpr std::array<uint8_t, 4> kIdleHeader = {0x00, 0x00, 0x00, 0x01};
constexpr std::array<uint8_t, 4> kUnassignedHeader = {0x00, 0x00, 0x00, 0x00};

} // namespace

uint8_t compute_hec(const uint8_t* header) {
    uint8_t crc = 0;
    for (int i = 0; i < 4; ++i)
        crc = hec_table.tab[crc ^ header[i]];
    return crc ^ kHecCoset;
}

bool verify_hec(const uint8_t* header, uint8_t hec) {
    return compute_hec(header) == hec;
}

void AtmCell::serialize(uint8_t* out) const {
    std::memcpy(out, header.data(), 4);
    out[4] = hec;
    std::memcpy(out + 5, payload.data(), kCellPayloadSize);
}

std::array<uint8_t, kCellSize> AtmCell::serialize() const {
    std::array<uint8_t, kCellSize> out;
    serialize(out.data());
    return out;
}

AtmCell AtmCell::parse(std::span<const uint8_t> bytes) {
    if (bytes.size() != kCellSize)
        throw std::invalid_argument("AtmCell::parse: need 53 bytes");
    AtmCell c;
    std::memcpy(c.header.data(), bytes.data(), 4);
    c.hec = bytes[4];
    std::memcpy(c.payload.data(), bytes.data() + 5, kCellPayloadSize);
    c.hec_valid = verify_hec(c.header.data(), c.hec);
    return c;
}

CellClass classify(const AtmCell& cell) {
    if (!verify_hec(cell.header.data(), cell.hec)) return CellClass::HecInvalid;
    if (cell.header == kIdleHeader) return CellClass::Idle;
    return CellClass::Assigned;
}

bool is_filler(const AtmCell& cell) {
    if (!verify_hec(cell.header.data(), cell.hec)) return false;
    return cell.header == kIdleHeader || cell.header == kUnassignedHeader;
}

AtmCell make_idle_cell() {
    AtmCell c;
    c.header = kIdleHeader;
    c.hec = compute_hec(c.header.data());
    c.payload.fill(0x6A);
    return c;
}

std::array<uint8_t, 4> make_uni_header(uint8_t gfc, uint8_t vpi, uint16_t vci,
                                       uint8_t pti, uint8_t clp) {
    std::array<uint8_t, 4> h;
    h[0] = static_cast<uint8_t>((gfc & 0x0F) << 4 | (vpi >> 4));
    h[1] = static_cast<uint8_t>((vpi & 0x0F) << 4 | (vci >> 12));
    h[2] = static_cast<uint8_t>(vci >> 4);
    h[3] = static_cast<uint8_t>((vci & 0x0F) << 4 | (pti & 0x07) << 1 |
                                (clp & 0x01));
    return h;
}

Delineator::Delineator(int alpha, int delta) : alpha_(alpha), delta_(delta) {
    if (alpha < 1 || delta < 1)
        throw std::invalid_argument("Delineator: alpha/delta must be >= 1");
}

void Delineator::push(std::span<const uint8_t> bytes,
                      std::vector<AtmCell>& out) {
    buf_.insert(buf_.end(), bytes.begin(), bytes.end());
    for (;;) {
        switch (state_) {
        case State::Hunt: {
            bool found = false;
            while (buf_.size() - pos_ >= 5) {
                if (verify_hec(buf_.data() + pos_, buf_[pos_ + 4])) {
                    found = true;
                    break;
                }
                ++pos_;
                ++discarded_bytes_;
            }
            if (!found) {
                compact();
                return;
            }
            if (buf_.size() - pos_ < kCellSize) {
                compact();
                return;
            }
            // consume the first valid cell, not emitted yet
            pos_ += kCellSize;
            discarded_bytes_ += kCellSize;
            state_ = State::Presync;
            presync_count_ = 0;
            break;
        }
        case State::Presync: {
            if (buf_.size() - pos_ < kCellSize) {
                compact();
                return;
            }
            if (!verify_hec(buf_.data() + pos_, buf_[pos_ + 4])) {
                state_ = State::Hunt;
                break;
            }
            pos_ += kCellSize;
            discarded_bytes_ += kCellSize;
            if (++presync_count_ >= delta_) {
                state_ = State::Sync;
                sync_error_count_ = 0;
            }
            break;
        }
        case State::Sync: {
            if (buf_.size() - pos_ < kCellSize) {
                compact();
                return;
            }
            AtmCell cell = AtmCell::parse(
                std::span<const uint8_t>(buf_.data() + pos_, kCellSize));
            pos_ += kCellSize;
            if (cell.hec_valid) {
                sync_error_count_ = 0;
            } else if (++sync_error_count_ >= alpha_) {
                state_ = State::Hunt;
            }
            out.push_back(cell);
            break;
        }
        }
    }
}

void Delineator::compact() {
    if (pos_ >= 4096) {
        buf_.erase(buf_.begin(), buf_.begin() + static_cast<long>(pos_));
        pos_ = 0;
    }
}

} // namespace linkenh
