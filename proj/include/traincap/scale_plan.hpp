#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "traincap/errors.hpp"

namespace traincap {

/// The seven stages of one mini-batch round. GPU processing is the only
/// compute stage; every other stage that cannot be pipelined behind it
/// counts as overhead.
enum class PipelineStep {
    parameter_refresh,
    data_loading,
    data_preparation,
    host_to_gpu_transfer,
    gpu_processing,
    parameter_update,
    distributed_update,
};

const char* to_string(PipelineStep step);
std::optional<PipelineStep> pipeline_step_from_string(std::string_view name);

/// Per-round compute time, unhidden overhead time, and their ratio.
struct OverheadProfile {
    double compute_time = 0.0;   // seconds, > 0
    double overhead_time = 0.0;  // seconds, >= 0

    double ratio() const { return overhead_time / compute_time; }
};

/// Parameter-server cluster sizing inputs.
struct ClusterSpec {
    int worker_count = 0;                  // N_w
    double param_size_bytes = 0.0;         // S_p, pushed and pulled per round
    double bandwidth_bytes_per_sec = 0.0;  // B_ps, per server
    int gpu_count = 0;                     // G
};

/// Efficiency and resulting speedup for one GPU count.
struct ScalingEstimate {
    int gpus = 0;
    double efficiency = 0.0;  // in (0, 1]
    double speedup = 0.0;     // efficiency * gpus
};

/// Parallel efficiency of G GPUs under overhead ratio R_O:
/// (1 + R_O) / (1 + G*R_O). DomainError on G < 1 or R_O < 0.
double efficiency(int gpus, double overhead_ratio);

ScalingEstimate estimate_scaling(int gpus, double overhead_ratio);
std::vector<ScalingEstimate> scaling_table(int max_gpus, double overhead_ratio);

/// Largest overhead ratio that still yields efficiency `alpha` on `gpus`
/// GPUs: (1 - alpha) / (alpha*gpus - 1). Valid for gpus >= 2 and
/// 1/gpus < alpha < 1; DomainError elsewhere.
double max_overhead_ratio(int gpus, double alpha);

/// Smallest GPU count reaching `target_speedup`, or nothing if no count up
/// to max_gpus does. speedup_cap is the asymptotic limit 1 + 1/R_O
/// (infinity when R_O = 0).
struct GpuRecommendation {
    std::optional<int> gpus;
    double speedup_cap = 0.0;
};

GpuRecommendation recommend_gpus(double target_speedup, double overhead_ratio, int max_gpus);

/// Folds a per-step time trace into an overhead profile: compute time is
/// the GPU-processing step; overhead is every other step not hidden behind
/// it. Throws MissingComputeStepError without a positive GPU step.
OverheadProfile estimate_overhead_ratio(const std::map<PipelineStep, double>& step_times,
                                        const std::set<PipelineStep>& hidden_steps);

/// Minimum parameter-server count that masks a round of pull+push traffic
/// behind compute_time: least n with compute_time >= 2*S_p*N_w/(n*B_ps),
/// clamped to at least 1.
int min_parameter_servers(const ClusterSpec& spec, double compute_time);

}  // namespace traincap
