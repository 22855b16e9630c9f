#include "linkenh/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "linkenh/atm.hpp"
#include "linkenh/rs.hpp"

namespace linkenh {

std::array<uint8_t, 4> RunConfig::test_header() const {
    return make_uni_header(0, vpi, vci);
}

void RunConfig::validate() const {
    if (mode != "baseline" && mode != "enhanced" && mode != "duplex")
        throw std::invalid_argument(
            "mode: must be baseline, enhanced or duplex (got '" + mode + "')");
    if (!(line_rate > 0))
        throw std::invalid_argument("line_rate: must be > 0");
    rs_make_params(rs_n, rs_k); // throws with the existence condition message
    if (sync_h_tol < 0 || sync_h_tol > 32)
        throw std::invalid_argument("sync.h_tol: must be in [0,32]");
    if (sync_m_confirm < 1)
        throw std::invalid_argument("sync.m_confirm: must be >= 1");
    if (sync_l_loss < 1)
        throw std::invalid_argument("sync.l_loss: must be >= 1");
    channel.validate();
    channel_rev.validate();
    if (!(utilization > 0.0 && utilization <= 1.0))
        throw std::invalid_argument("traffic.utilization: must be in (0,1]");
    if (duration == 0.0 && cells == 0)
        throw std::invalid_argument(
            "traffic: set traffic.duration or traffic.cells");
    if (block_size < 1)
        throw std::invalid_argument("metrics.block_size: must be >= 1");
    if (fifo_depth < 1)
        throw std::invalid_argument("fifo_depth: must be >= 1");
}

namespace {

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t idx = 0;
        const double d = std::stod(v, &idx);
        if (idx != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw std::invalid_argument(key + ": not a number ('" + v + "')");
    }
}

uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        size_t idx = 0;
        const uint64_t u = std::stoull(v, &idx, 0);
        if (idx != v.size()) throw std::invalid_argument("");
        return u;
    } catch (...) {
        throw std::invalid_argument(key + ": not an integer ('" + v + "')");
    }
}

void apply_channel_entry(ChannelConfig& ch, const std::string& key,
                         const std::string& field, const std::string& value) {
    if (field == "mode") {
        if (value == "bsc")
            ch.mode = ChannelConfig::Mode::Bsc;
        else if (value == "ge" || value == "gilbert-elliott")
            ch.mode = ChannelConfig::Mode::GilbertElliott;
        else
            throw std::invalid_argument(key + ": must be bsc or ge");
    } else if (field == "ber") {
        ch.p_e = parse_double(key, value);
    } else if (field == "p_good") {
        ch.p_good = parse_double(key, value);
    } else if (field == "p_bad") {
        ch.p_bad = parse_double(key, value);
    } else if (field == "p_g2b") {
        ch.p_g2b = parse_double(key, value);
    } else if (field == "p_b2g") {
        ch.p_b2g = parse_double(key, value);
    } else if (field == "seed") {
        ch.seed = parse_u64(key, value);
    } else {
        throw std::invalid_argument("unknown config key: " + key);
    }
}

} // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value) {
    if (key == "mode") cfg.mode = value;
    else if (key == "line_rate") cfg.line_rate = parse_double(key, value);
    else if (key == "rs.n") cfg.rs_n = static_cast<int>(parse_u64(key, value));
    else if (key == "rs.k") cfg.rs_k = static_cast<int>(parse_u64(key, value));
    else if (key == "sync.marker")
        cfg.sync_marker = static_cast<uint32_t>(parse_u64(key, value));
    else if (key == "sync.h_tol")
        cfg.sync_h_tol = static_cast<int>(parse_u64(key, value));
    else if (key == "sync.m_confirm")
        cfg.sync_m_confirm = static_cast<int>(parse_u64(key, value));
    else if (key == "sync.l_loss")
        cfg.sync_l_loss = static_cast<int>(parse_u64(key, value));
    else if (key.rfind("channel2.", 0) == 0)
        apply_channel_entry(cfg.channel_rev, key, key.substr(9), value);
    else if (key.rfind("channel.", 0) == 0)
        apply_channel_entry(cfg.channel, key, key.substr(8), value);
    else if (key == "traffic.utilization")
        cfg.utilization = parse_double(key, value);
    else if (key == "traffic.duration")
        cfg.duration = parse_double(key, value);
    else if (key == "traffic.cells") cfg.cells = parse_u64(key, value);
    else if (key == "traffic.vpi")
        cfg.vpi = static_cast<uint8_t>(parse_u64(key, value));
    else if (key == "traffic.vci")
        cfg.vci = static_cast<uint16_t>(parse_u64(key, value));
    else if (key == "metrics.block_size")
        cfg.block_size = parse_u64(key, value);
    else if (key == "metrics.secb_threshold")
        cfg.secb_threshold = parse_u64(key, value);
    else if (key == "fifo_depth")
        cfg.fifo_depth = static_cast<size_t>(parse_u64(key, value));
    else if (key == "io.output") cfg.output_path = value;
    else
        throw std::invalid_argument("unknown config key: " + key);
}

void load_config(std::istream& is, RunConfig& cfg) {
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t'))
            key.pop_back();
        while (!value.empty() && (value.front() == ' ' || value.front() == '\t'))
            value.erase(value.begin());
        apply_config_entry(cfg, key, value);
    }
}

void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    load_config(f, cfg);
}

} // namespace linkenh
