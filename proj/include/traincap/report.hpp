#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "traincap/batch_plan.hpp"
#include "traincap/catalog.hpp"
#include "traincap/scale_plan.hpp"

namespace traincap {

/// Everything `plan` needs, already in canonical units (bits, bytes/s).
/// Unit suffixes are a CLI-boundary concern and never reach this struct.
struct PlanRequest {
    std::string network_path;
    std::string catalog_path;
    std::int64_t gpu_memory_bits = 0;
    std::int64_t dataset_size = 0;
    std::vector<std::int64_t> candidates;    // empty = default sweep set
    int max_gpus = 8;
    double overhead_ratio = 0.0;
    int workers = 1;
    double bandwidth_bytes_per_sec = 1.25e9;            // 10 Gbit/s
    std::optional<double> param_size_bytes;             // derived when absent
    bool verify = false;
};

/// Self-contained planning result: the echoed inputs are sufficient to
/// recompute every number in here.
struct PlanReport {
    PlanRequest request;
    std::vector<std::int64_t> candidates_used;
    NetworkSpec network;
    std::vector<TensorShape> shapes;
    BatchPlan plan;
    double param_size_bytes = 0.0;
    bool param_size_derived = false;
    std::vector<ScalingEstimate> scaling;
    std::optional<double> compute_time_seconds;  // per-batch time backing the PS sizing
    std::optional<int> parameter_servers;
    std::vector<std::string> caveats;
    bool verified = false;
};

/// Runs the full pipeline: load + validate network, load catalog, sweep
/// batch sizes, scaling table, parameter-server sizing. Throws on invalid
/// inputs; an all-infeasible sweep is a valid report.
PlanReport run_plan(const PlanRequest& request);

void render_plan_text(const PlanReport& report, std::ostream& out);

/// Deterministic JSON rendering; identical inputs give identical bytes
/// except for the `generated_at` value passed in. Newline-terminated.
std::string render_plan_json(const PlanReport& report, const std::string& timestamp);

/// Shared by `scale`: table plus optional target recommendation.
struct ScaleReport {
    double overhead_ratio = 0.0;
    std::optional<std::string> steps_path;  // when the ratio came from a trace
    std::vector<ScalingEstimate> table;
    std::optional<double> target_speedup;
    std::optional<GpuRecommendation> recommendation;
};

void render_scale_text(const ScaleReport& report, std::ostream& out);
std::string render_scale_json(const ScaleReport& report, const std::string& timestamp);

/// Shared by `ps`: sizing result plus the instantiated masking inequality.
struct PsReport {
    ClusterSpec spec;
    double compute_time_seconds = 0.0;
    int servers = 0;
};

void render_ps_text(const PsReport& report, std::ostream& out);
std::string render_ps_json(const PsReport& report, const std::string& timestamp);

/// RFC 3339 UTC timestamp for report headers.
std::string current_timestamp();

}  // namespace traincap
