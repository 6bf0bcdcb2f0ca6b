#pragma once

#include <string>

#include "qsynth/config.hpp"
#include "qsynth/qlearn.hpp"

namespace qsynth {

// JSON run report: hyperparameters, outcome, circuit, metrics and table
// sizes. Holds no timings, so equal runs give equal bytes.
std::string run_report(const RunConfig& config, const SynthesisResult& result);

}  // namespace qsynth
