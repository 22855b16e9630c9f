#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace linkenh {

inline constexpr size_t kCellSize = 53;
inline constexpr size_t kCellPayloadSize = 48;

// 53-byte ATM cell: 4 header bytes, HEC, 48-byte payload.
struct AtmCell {
    std::array<uint8_t, 4> header{};
    uint8_t hec = 0;
    std::array<uint8_t, kCellPayloadSize> payload{};
    bool hec_valid = true; // set by the delineator on receive

    void serialize(uint8_t* out) const;
    std::array<uint8_t, kCellSize> serialize() const;
    static AtmCell parse(std::span<const uint8_t> bytes); // 53 bytes
};

enum class CellClass { Assigned, Idle, HecInvalid };

// CRC-8 over the 4 header bytes (poly x^8+x^2+x+1), coset 0x55.
uint8_t compute_hec(const uint8_t* header);
bool verify_hec(const uint8_t* header, uint8_t hec);

CellClass classify(const AtmCell& cell);

// Idle and unassigned cells are both regenerable filler.
bool is_filler(const AtmCell& cell);

// header 00 00 00 01, hec 0x52, payload filled with 0x6A
AtmCell make_idle_cell();

// UNI header bit packing: GFC | VPI | VCI | PTI | CLP, MSB first.
std::array<uint8_t, 4> make_uni_header(uint8_t gfc, uint8_t vpi, uint16_t vci,
                                       uint8_t pti = 0, uint8_t clp = 0);

// HEC-based cell delineation: HUNT slides byte-by-byte until a valid HEC,
// PRESYNC demands `delta` consecutive valid cells, SYNC emits cells and
// drops back to HUNT after `alpha` consecutive HEC failures.
class Delineator {
public:
    enum class State { Hunt, Presync, Sync };

    explicit Delineator(int alpha = 7, int delta = 6);

    // Feed bytes; cells recognized while in SYNC are appended to `out`.
    void push(std::span<const uint8_t> bytes, std::vector<AtmCell>& out);

    State state() const { return state_; }
    uint64_t discarded_bytes() const { return discarded_bytes_; }

private:
    void compact();

    int alpha_;
    int delta_;
    State state_ = State::Hunt;
    int presync_count_ = 0;
    int sync_error_count_ = 0;
    std::vector<uint8_t> buf_;
    size_t pos_ = 0; // current candidate alignment within buf_
    uint64_t discarded_bytes_ = 0;
};

} // namespace linkenh
