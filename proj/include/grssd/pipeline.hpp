#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grssd/grscodes.hpp"

namespace grssd {

struct PipelineOptions {
    BuildOptions build;
    CharacterOptions chars;
    VerifyOptions verify;
};

struct PipelineResult {
    ConstructionParams params;
    Shape shape;
    EvalSet set;
    std::optional<CharacterReport> chars;
    std::optional<ScalingResult> scaling;
    std::optional<CodeSpec> code;
    std::optional<VerifyReport> verify;
    std::vector<std::string> notes;
    bool ok = false;
    std::string failure;
    double seconds = 0;
};

// build -> character report -> scaling -> verification; validation failures throw,
// later failures are reported in the result
PipelineResult run_construction(const Field& F, const ConstructionParams& p, const PipelineOptions& opts = {});

}
