#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>

#include "traincap/net_model.hpp"
#include "traincap/scale_plan.hpp"

namespace traincap {

/// Reads the declarative network format: an `input B H D` header followed
/// by one layer per line, `conv F S P K` / `pool F S P` for the feature
/// chain and `fc L` for classifier layers. `#` starts a comment.
/// Syntactic errors throw ParseError; semantic checks are left to
/// validate_network so bad values can be reported all at once.
NetworkSpec load_network(std::istream& source);
NetworkSpec load_network_file(const std::string& path);

/// Per-step times of one profiled mini-batch round, with the set of steps
/// the pipeline hides behind GPU processing.
struct StepTrace {
    std::map<PipelineStep, double> times;
    std::set<PipelineStep> hidden;
};

/// One step per line: `<step-name> <seconds> [hidden]`. Step names follow
/// to_string(PipelineStep).
StepTrace load_step_trace(std::istream& source);
StepTrace load_step_trace_file(const std::string& path);

}  // namespace traincap
