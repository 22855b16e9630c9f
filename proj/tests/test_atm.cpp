#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "linkenh/atm.hpp"

using namespace linkenh;

namespace {

// bitwise long-division CRC-8 oracle, poly x^8+x^2+x+1
uint8_t crc8_oracle(const uint8_t* data, size_t len) {
    // dividend = data bits followed by 8 zero bits
    std::vector<int> bits(len * 8 + 8, 0);
    for (size_t i = 0; i < len; ++i)
        for (int j = 0; j < 8; ++j)
            bits[i * 8 + j] = (data[i] >> (7 - j)) & 1;
    const int poly[9] = {1, 0, 0, 0, 0, 0, 1, 1, 1};
    for (size_t i = 0; i + 8 < bits.size(); ++i)
        if (bits[i])
            for (int j = 0; j < 9; ++j) bits[i + j] ^= poly[j];
    uint8_t rem = 0;
    for (int j = 0; j < 8; ++j)
        rem = static_cast<uint8_t>(rem << 1 | bits[bits.size() - 8 + j]);
    return rem;
}

std::vector<uint8_t> cells_to_bytes(const std::vector<AtmCell>& cells) {
    std::vector<uint8_t> out;
    for (const auto& c : cells) {
        auto b = c.serialize();
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

} // namespace

TEST_CASE("compute_hec known values") {
    const uint8_t zero[4] = {0, 0, 0, 0};
    CHECK(compute_hec(zero) == 0x55);
    const uint8_t idle[4] = {0, 0, 0, 1};
    CHECK(compute_hec(idle) == 0x52); // CRC 0x07 xor coset 0x55
}

TEST_CASE("compute_hec agrees with the long-division oracle") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> d(0, 255);
    for (int trial = 0; trial < 10000; ++trial) {
        uint8_t h[4];
        for (auto& b : h) b = static_cast<uint8_t>(d(rng));
        CHECK(compute_hec(h) == (crc8_oracle(h, 4) ^ 0x55));
        CHECK(verify_hec(h, compute_hec(h)));
    }
}

TEST_CASE("classification") {
    AtmCell idle = make_idle_cell();
    CHECK(classify(idle) == CellClass::Idle);
    CHECK(idle.hec == 0x52);
    CHECK(is_filler(idle));

    AtmCell bad = idle;
    bad.hec = 0x00;
    CHECK(classify(bad) == CellClass::HecInvalid);

    AtmCell assigned;
    assigned.header = {0x00, 0x01, 0x00, 0x10};
    assigned.hec = compute_hec(assigned.header.data());
    CHECK(classify(assigned) == CellClass::Assigned);
    CHECK_FALSE(is_filler(assigned));

    AtmCell unassigned;
    unassigned.header = {0, 0, 0, 0};
    unassigned.hec = compute_hec(unassigned.header.data());
    CHECK(is_filler(unassigned));

    // idle classification ignores payload content
    AtmCell corrupted_payload = make_idle_cell();
    corrupted_payload.payload[10] = 0xFF;
    CHECK(classify(corrupted_payload) == CellClass::Idle);
}

TEST_CASE("make_idle_cell is deterministic and 53 bytes") {
    auto a = make_idle_cell().serialize();
    auto b = make_idle_cell().serialize();
    CHECK(a == b);
    CHECK(a.size() == 53);
    for (int i = 5; i < 53; ++i) CHECK(a[i] == 0x6A);
}

TEST_CASE("delineation locks on an aligned stream after 1 + DELTA cells") {
    std::vector<AtmCell> cells(20, make_idle_cell());
    auto bytes = cells_to_bytes(cells);
    Delineator d;
    std::vector<AtmCell> out;
    d.push(bytes, out);
    CHECK(d.state() == Delineator::State::Sync);
    CHECK(out.size() == 20 - 7); // 1 hunt cell + 6 presync cells consumed
}

TEST_CASE("delineation converges from any byte offset within the bound") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> db(0, 255);
    std::vector<AtmCell> cells;
    for (int i = 0; i < 24; ++i) {
        AtmCell c;
        c.header = make_uni_header(0, 3, 0x21 + i % 5);
        c.hec = compute_hec(c.header.data());
        for (auto& b : c.payload) b = static_cast<uint8_t>(db(rng));
        cells.push_back(c);
    }
    auto bytes = cells_to_bytes(cells);
    for (size_t offset = 0; offset < 53; ++offset) {
        Delineator d;
        std::vector<AtmCell> out;
        d.push(std::span<const uint8_t>(bytes.data() + offset,
                                        bytes.size() - offset),
               out);
        CHECK(d.state() == Delineator::State::Sync);
        // bound: at most 53 hunt bytes + first cell + DELTA presync cells
        CHECK(d.discarded_bytes() <= 53 + 53 + 6 * 53);
        // every emitted cell is genuine
        for (const auto& c : out) CHECK(c.hec_valid);
    }
}

TEST_CASE("random bytes keep the delineator out of SYNC") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> db(0, 255);
    std::vector<uint8_t> noise(100000);
    for (auto& b : noise) b = static_cast<uint8_t>(db(rng));
    Delineator d;
    std::vector<AtmCell> out;
    d.push(noise, out);
    // P(one alignment passes a HEC check) = 2^-8; surviving DELTA consecutive
    // checks is ~2^-56, so no cells should be emitted
    CHECK(out.empty());
}

TEST_CASE("one corrupted HEC in SYNC is flagged but does not drop sync") {
    std::vector<AtmCell> cells(30, make_idle_cell());
    cells[15].hec = 0x00; // corrupt one cell past the lock point
    auto bytes = cells_to_bytes(cells);
    Delineator d;
    std::vector<AtmCell> out;
    d.push(bytes, out);
    CHECK(d.state() == Delineator::State::Sync);
    int flagged = 0;
    for (const auto& c : out) flagged += !c.hec_valid;
    CHECK(flagged == 1);
    CHECK(out.size() == 30 - 7);
}

TEST_CASE("ALPHA consecutive bad HECs drop back to HUNT") {
    std::vector<AtmCell> cells(30, make_idle_cell());
    for (int i = 10; i < 17; ++i) cells[i].hec = 0x00; // 7 = ALPHA failures
    auto bytes = cells_to_bytes(cells);
    Delineator d;
    std::vector<AtmCell> out;
    d.push(bytes, out);
    // re-acquires on the clean tail
    CHECK(d.state() == Delineator::State::Sync);
    bool saw_invalid = false;
    for (const auto& c : out) saw_invalid |= !c.hec_valid;
    CHECK(saw_invalid);
}

TEST_CASE("incremental push equals one-shot push") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> db(0, 255);
    std::vector<AtmCell> cells;
    for (int i = 0; i < 40; ++i) {
        AtmCell c;
        c.header = make_uni_header(0, 1, 42);
        c.hec = compute_hec(c.header.data());
        for (auto& b : c.payload) b = static_cast<uint8_t>(db(rng));
        cells.push_back(c);
    }
    auto bytes = cells_to_bytes(cells);

    Delineator one;
    std::vector<AtmCell> out_one;
    one.push(bytes, out_one);

    Delineator inc;
    std::vector<AtmCell> out_inc;
    for (size_t pos = 0; pos < bytes.size();) {
        const size_t chunk = std::min<size_t>(17, bytes.size() - pos);
        inc.push(std::span<const uint8_t>(bytes.data() + pos, chunk), out_inc);
        pos += chunk;
    }
    CHECK(cells_to_bytes(out_one) == cells_to_bytes(out_inc));
}
