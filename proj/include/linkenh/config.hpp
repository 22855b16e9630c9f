#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "linkenh/channel.hpp"

namespace linkenh {

// Full run configuration. File format: line-oriented key=value with dotted
// section keys ('#' comments); CLI flags override file values.
struct RunConfig {
    std::string mode = "baseline"; // baseline | enhanced | duplex
    double line_rate = 2.048e6;

    int rs_n = 255;
    int rs_k = 235;

    uint32_t sync_marker = 0x1ACFFC1D;
    int sync_h_tol = 2;
    int sync_m_confirm = 2;
    int sync_l_loss = 3;

    ChannelConfig channel;       // forward direction
    ChannelConfig channel_rev;   // reverse direction (duplex)

    double utilization = 0.5;
    double duration = 0.0;       // seconds of line time; 0 = use `cells`
    uint64_t cells = 0;          // test cells to transmit

    uint64_t block_size = 16384;
    uint64_t secb_threshold = 32;

    uint8_t vpi = 51;
    uint16_t vci = 0x3333;

    size_t fifo_depth = 64;
    std::string output_path;     // metrics CSV destination ("" = stdout)
    bool summary = false;        // also print the human-readable summary

    void validate() const; // field-precise messages
    std::array<uint8_t, 4> test_header() const;
};

// Apply one "key=value" assignment; throws on unknown key or bad value.
void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value);

// Parse a config file stream (key=value lines).
void load_config(std::istream& is, RunConfig& cfg);
void load_config_file(const std::string& path, RunConfig& cfg);

} // namespace linkenh
