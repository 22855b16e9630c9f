#pragma once

#include <utility>

#include "linkenh/config.hpp"
#include "linkenh/measurement.hpp"
#include "linkenh/pipeline.hpp"

namespace linkenh {

struct RunResult {
    LinkMetrics metrics;
    EncoderCounters encoder;
    DecoderCounters decoder;
    SyncEvents sync;
};

PipelineParams pipeline_params(const RunConfig& cfg);

// generator -> channel -> verifier
RunResult run_baseline(const RunConfig& cfg);

// generator -> encoder -> channel -> decoder -> verifier
RunResult run_enhanced(const RunConfig& cfg);

// two independent directions; .first uses cfg.channel, .second channel_rev
std::pair<RunResult, RunResult> run_duplex(const RunConfig& cfg);

} // namespace linkenh
