// linkenh: forward-error-correcting link enhancer for ATM cell streams.
// Subcommands: run, analyze, filter, traffic, verify.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "linkenh/analysis.hpp"
#include "linkenh/config.hpp"
#include "linkenh/measurement.hpp"
#include "linkenh/pipeline.hpp"
#include "linkenh/runner.hpp"

using namespace linkenh;

namespace {

void apply_overrides(RunConfig& cfg, const std::vector<std::string>& sets) {
    for (const auto& kv : sets) {
        const size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects key=value, got '" + kv +
                                        "'");
        apply_config_entry(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
}

void apply_env(RunConfig& cfg) {
    if (const char* seed = std::getenv("LINKENH_SEED")) {
        apply_config_entry(cfg, "channel.seed", seed);
        apply_config_entry(cfg, "channel2.seed", seed);
    }
    if (const char* out = std::getenv("LINKENH_OUT")) cfg.output_path = out;
}

RunConfig build_config(const std::string& config_path,
                       const std::vector<std::string>& sets) {
    RunConfig cfg;
    if (!config_path.empty()) load_config_file(config_path, cfg);
    apply_overrides(cfg, sets);
    apply_env(cfg);
    return cfg;
}

// output stream selection: file when a path is set, stdout otherwise
class OutStream {
public:
    explicit OutStream(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

int cmd_run(const RunConfig& cfg, bool summary) {
    OutStream out(cfg.output_path);
    if (cfg.mode == "duplex") {
        auto [fwd, rev] = run_duplex(cfg);
        write_metrics_csv(out.get(), fwd.metrics);
        write_metrics_csv(out.get(), rev.metrics, /*header=*/false);
        if (summary) {
            std::cout << "--- forward ---\n";
            write_metrics_summary(std::cout, fwd.metrics, cfg.line_rate,
                                  cfg.utilization);
            std::cout << "--- reverse ---\n";
            write_metrics_summary(std::cout, rev.metrics, cfg.line_rate,
                                  cfg.utilization);
        }
    } else {
        const RunResult r =
            cfg.mode == "baseline" ? run_baseline(cfg) : run_enhanced(cfg);
        write_metrics_csv(out.get(), r.metrics);
        if (summary)
            write_metrics_summary(std::cout, r.metrics, cfg.line_rate,
                                  cfg.utilization);
    }
    return 0; // measurement outcomes never fail the process
}

int cmd_analyze(const std::string& kind, std::vector<double> bers,
                std::vector<int> ts, const std::string& out_path) {
    OutStream out(out_path);
    if (kind == "cer_table") {
        if (bers.empty()) bers = {1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
        write_cer_table_csv(out.get(), bers);
    } else if (kind == "pe_curves") {
        if (bers.empty())
            bers = {1e-6, 3e-6, 1e-5, 3e-5, 1e-4, 3e-4, 1e-3, 3e-3, 1e-2};
        if (ts.empty()) ts = {0, 1, 2, 4, 8, 10, 16};
        auto rows = redundancy_curves(bers, ts);
        write_curves_csv(out.get(), rows);
    } else {
        throw std::invalid_argument("analyze: kind must be cer_table or "
                                    "pe_curves (got '" + kind + "')");
    }
    return 0;
}

int cmd_filter(const std::string& stage, const RunConfig& cfg) {
    cfg.validate();
    const PipelineParams pp = pipeline_params(cfg);
    LinkEncoder encoder(pp);
    LinkDecoder decoder(pp);
    Channel channel(cfg.channel);

    std::vector<uint8_t> in(1 << 16), out;
    uint64_t bytes_in = 0, bytes_out = 0;
    for (;;) {
        const size_t got = std::fread(in.data(), 1, in.size(), stdin);
        if (got == 0) break;
        bytes_in += got;
        std::span<uint8_t> chunk(in.data(), got);
        out.clear();
        if (stage == "encode") {
            encoder.push(chunk, out);
        } else if (stage == "decode") {
            decoder.push(chunk, out);
        } else { // channel
            channel.corrupt(chunk);
            out.assign(chunk.begin(), chunk.end());
        }
        if (!out.empty() &&
            std::fwrite(out.data(), 1, out.size(), stdout) != out.size())
            throw std::runtime_error("filter: short write to stdout");
        bytes_out += out.size();
    }
    std::fflush(stdout);
    if (bytes_out < bytes_in) // partial cell/frame retained at end of stream
        std::cerr << "filter " << stage << ": " << (bytes_in - bytes_out)
                  << " bytes still buffered at end of input\n";
    return 0;
}

int cmd_traffic(uint64_t slots, uint64_t cells, double utilization,
                double line_rate, uint64_t idle_flush) {
    TrafficConfig tc;
    tc.utilization = utilization;
    tc.line_rate_bps = line_rate;
    CbrGenerator gen(tc);
    std::vector<uint8_t> buf;
    while (slots > 0 ? gen.slots_done() < slots
                     : gen.test_cells_sent() < cells) {
        uint64_t chunk = 4096;
        if (slots > 0) {
            if (slots - gen.slots_done() < chunk)
                chunk = slots - gen.slots_done();
        } else {
            // approach the exact test-cell count without overshooting
            const uint64_t remaining = cells - gen.test_cells_sent();
            const auto bound = static_cast<uint64_t>(
                static_cast<double>(remaining) / utilization);
            chunk = std::min(chunk, std::max<uint64_t>(1, bound > 4 ? bound - 4
                                                                    : 1));
        }
        buf.clear();
        gen.generate(chunk, buf);
        if (std::fwrite(buf.data(), 1, buf.size(), stdout) != buf.size())
            throw std::runtime_error("traffic: short write to stdout");
    }
    if (idle_flush > 0) {
        buf.clear();
        gen.generate_idle(idle_flush, buf);
        if (std::fwrite(buf.data(), 1, buf.size(), stdout) != buf.size())
            throw std::runtime_error("traffic: short write to stdout");
    }
    std::fflush(stdout);
    std::cerr << "traffic: " << gen.test_cells_sent() << " test cells in "
              << gen.slots_done() << " slots\n";
    return 0;
}

int cmd_verify(uint64_t total_tx, const RunConfig& cfg, bool summary) {
    VerifierConfig vc;
    vc.header = cfg.test_header();
    vc.line_rate_bps = cfg.line_rate;
    vc.block_size = cfg.block_size;
    vc.secb_threshold = cfg.secb_threshold;
    StreamVerifier verifier(vc);

    std::vector<uint8_t> buf(kCellSize * 4096);
    size_t pending = 0;
    for (;;) {
        const size_t got =
            std::fread(buf.data() + pending, 1, buf.size() - pending, stdin);
        if (got == 0) break;
        pending += got;
        const size_t whole = pending / kCellSize * kCellSize;
        verifier.push_cells(std::span<const uint8_t>(buf.data(), whole));
        std::memmove(buf.data(), buf.data() + whole, pending - whole);
        pending -= whole;
    }
    if (pending > 0)
        std::cerr << "verify: " << pending
                  << " trailing bytes did not form a whole cell\n";
    const LinkMetrics m = verifier.finish(total_tx);
    OutStream out(cfg.output_path);
    write_metrics_csv(out.get(), m);
    if (summary)
        write_metrics_summary(std::cout, m, cfg.line_rate, cfg.utilization);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"FEC link enhancer for ATM cell streams over errored links"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    bool summary = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path,
                        "key=value config file (dotted section keys)");
        sub->add_option("--set", sets, "override one config entry, key=value")
            ->take_all();
    };

    auto* run = app.add_subcommand("run", "measure a simulated link");
    add_common(run);
    run->add_flag("--summary", summary, "also print a line-oriented summary");

    auto* analyze = app.add_subcommand("analyze", "closed-form tables/curves");
    std::string kind;
    std::vector<double> bers;
    std::vector<int> ts;
    std::string out_path;
    analyze->add_option("kind", kind, "cer_table | pe_curves")->required();
    analyze->add_option("--ber", bers, "input BER grid");
    analyze->add_option("--t", ts, "correction capabilities to sweep");
    analyze->add_option("--out", out_path, "output path (default stdout)");

    auto* filter = app.add_subcommand(
        "filter", "single pipeline stage as a stdin/stdout byte filter");
    std::string stage;
    filter->add_option("--stage", stage, "encode | decode | channel")
        ->required()
        ->check(CLI::IsMember({"encode", "decode", "channel"}));
    add_common(filter);

    auto* traffic =
        app.add_subcommand("traffic", "CBR test-cell generator to stdout");
    uint64_t slots = 0, cells = 0;
    double utilization = 0.5, line_rate = 2.048e6;
    traffic->add_option("--slots", slots, "cell slots to emit");
    traffic->add_option("--cells", cells, "test cells to emit");
    traffic->add_option("--utilization", utilization, "load in (0,1]");
    traffic->add_option("--line-rate", line_rate, "line rate, bits/s");
    uint64_t idle_flush = 0;
    traffic->add_option("--idle-flush", idle_flush,
                        "trailing idle-only slots to drain a pipeline");

    auto* verify =
        app.add_subcommand("verify", "verify a cell stream from stdin");
    uint64_t total_tx = 0;
    verify->add_option("--total-tx", total_tx, "test cells transmitted")
        ->required();
    add_common(verify);
    verify->add_flag("--summary", summary,
                     "also print a line-oriented summary");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            RunConfig cfg = build_config(config_path, sets);
            cfg.validate();
            return cmd_run(cfg, summary);
        }
        if (analyze->parsed()) {
            if (const char* out = std::getenv("LINKENH_OUT"))
                if (out_path.empty()) out_path = out;
            return cmd_analyze(kind, bers, ts, out_path);
        }
        if (filter->parsed()) {
            RunConfig cfg = build_config(config_path, sets);
            if (cfg.cells == 0 && cfg.duration == 0.0)
                cfg.cells = 1; // stream length comes from stdin, not config
            return cmd_filter(stage, cfg);
        }
        if (traffic->parsed()) {
            if (slots == 0 && cells == 0)
                throw std::invalid_argument("traffic: set --slots or --cells");
            return cmd_traffic(slots, cells, utilization, line_rate,
                               idle_flush);
        }
        if (verify->parsed()) {
            RunConfig cfg = build_config(config_path, sets);
            return cmd_verify(total_tx, cfg, summary);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "linkenh: " << e.what() << '\n';
        return 2; // config/usage contract violation
    } catch (const std::exception& e) {
        std::cerr << "linkenh: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
