#include "linkenh/runner.hpp"

namespace linkenh {

namespace {

constexpr uint64_t kChunkSlots = 4096;
constexpr uint64_t kFlushSlots = 512; // drains fifo + in-flight frames

uint64_t target_slots(const RunConfig& cfg, const TrafficConfig& traffic) {
    if (cfg.duration > 0.0) return traffic.slots_for_duration(cfg.duration);
    return 0; // sized by test-cell count instead
}

TrafficConfig traffic_config(const RunConfig& cfg) {
    TrafficConfig t;
    t.utilization = cfg.utilization;
    t.line_rate_bps = cfg.line_rate;
    t.header = cfg.test_header();
    return t;
}

VerifierConfig verifier_config(const RunConfig& cfg) {
    VerifierConfig v;
    v.header = cfg.test_header();
    v.line_rate_bps = cfg.line_rate;
    v.block_size = cfg.block_size;
    v.secb_threshold = cfg.secb_threshold;
    return v;
}

} // namespace

PipelineParams pipeline_params(const RunConfig& cfg) {
    PipelineParams p;
    p.rs = rs_make_params(cfg.rs_n, cfg.rs_k);
    p.framing.marker = cfg.sync_marker;
    p.framing.n = cfg.rs_n;
    p.framing.h_tol = cfg.sync_h_tol;
    p.framing.m_confirm = cfg.sync_m_confirm;
    p.framing.l_loss = cfg.sync_l_loss;
    p.fifo_depth = cfg.fifo_depth;
    return p;
}

RunResult run_baseline(const RunConfig& cfg) {
    cfg.validate();
    const TrafficConfig tc = traffic_config(cfg);
    CbrGenerator gen(tc);
    Channel channel(cfg.channel);
    StreamVerifier verifier(verifier_config(cfg));

    const uint64_t slots = target_slots(cfg, tc);
    std::vector<uint8_t> buf;
    while (slots > 0 ? gen.slots_done() < slots
                     : gen.test_cells_sent() < cfg.cells) {
        uint64_t chunk = kChunkSlots;
        if (slots > 0 && slots - gen.slots_done() < chunk)
            chunk = slots - gen.slots_done();
        buf.clear();
        gen.generate(chunk, buf);
        channel.corrupt(buf);
        verifier.push_cells(buf);
    }
    RunResult r;
    r.metrics = verifier.finish(gen.test_cells_sent());
    return r;
}

RunResult run_enhanced(const RunConfig& cfg) {
    cfg.validate();
    const TrafficConfig tc = traffic_config(cfg);
    CbrGenerator gen(tc);
    const PipelineParams pp = pipeline_params(cfg);
    LinkEncoder encoder(pp);
    Channel channel(cfg.channel);
    LinkDecoder decoder(pp);
    StreamVerifier verifier(verifier_config(cfg));

    const uint64_t slots = target_slots(cfg, tc);
    std::vector<uint8_t> switch_in, link, switch_out;
    auto step = [&](bool flush, uint64_t chunk) {
        switch_in.clear();
        link.clear();
        switch_out.clear();
        if (flush)
            gen.generate_idle(chunk, switch_in);
        else
            gen.generate(chunk, switch_in);
        encoder.push(switch_in, link);
        channel.corrupt(link);
        decoder.push(link, switch_out);
        verifier.push_cells(switch_out);
    };
    while (slots > 0 ? gen.slots_done() < slots
                     : gen.test_cells_sent() < cfg.cells) {
        uint64_t chunk = kChunkSlots;
        if (slots > 0 && slots - gen.slots_done() < chunk)
            chunk = slots - gen.slots_done();
        step(false, chunk);
    }
    step(true, kFlushSlots);

    RunResult r;
    r.metrics = verifier.finish(gen.test_cells_sent());
    r.encoder = encoder.counters();
    r.decoder = decoder.counters();
    r.sync = decoder.sync_events();
    return r;
}

std::pair<RunResult, RunResult> run_duplex(const RunConfig& cfg) {
    cfg.validate();
    RunConfig fwd = cfg;
    fwd.mode = "enhanced";
    RunConfig rev = fwd;
    rev.channel = cfg.channel_rev;
    // directions are independent pipelines; run them sequentially for
    // deterministic, reproducible results
    return {run_enhanced(fwd), run_enhanced(rev)};
}

} // namespace linkenh
