#include "traincap/scale_plan.hpp"

#include <cmath>
#include <limits>

namespace traincap {

const char* to_string(PipelineStep step) {
    switch (step) {
        case PipelineStep::parameter_refresh: return "parameter_refresh";
        case PipelineStep::data_loading: return "data_loading";
        case PipelineStep::data_preparation: return "data_preparation";
        case PipelineStep::host_to_gpu_transfer: return "host_to_gpu_transfer";
        case PipelineStep::gpu_processing: return "gpu_processing";
        case PipelineStep::parameter_update: return "parameter_update";
        case PipelineStep::distributed_update: return "distributed_update";
    }
    return "?";
}

std::optional<PipelineStep> pipeline_step_from_string(std::string_view name) {
    for (PipelineStep s : {PipelineStep::parameter_refresh, PipelineStep::data_loading,
                           PipelineStep::data_preparation, PipelineStep::host_to_gpu_transfer,
                           PipelineStep::gpu_processing, PipelineStep::parameter_update,
                           PipelineStep::distributed_update})
        if (name == to_string(s)) return s;
    return std::nullopt;
}

double efficiency(int gpus, double overhead_ratio) {
    if (gpus < 1) throw DomainError("GPU count must be >= 1");
    if (overhead_ratio < 0) throw DomainError("overhead ratio must be >= 0");
    return (1.0 + overhead_ratio) / (1.0 + gpus * overhead_ratio);
}

ScalingEstimate estimate_scaling(int gpus, double overhead_ratio) {
    double alpha = efficiency(gpus, overhead_ratio);
    return {gpus, alpha, alpha * gpus};
}

std::vector<ScalingEstimate> scaling_table(int max_gpus, double overhead_ratio) {
    if (max_gpus < 1) throw DomainError("GPU count must be >= 1");
    std::vector<ScalingEstimate> table;
    table.reserve(static_cast<std::size_t>(max_gpus));
    for (int g = 1; g <= max_gpus; ++g) table.push_back(estimate_scaling(g, overhead_ratio));
    return table;
}

double max_overhead_ratio(int gpus, double alpha) {
    if (gpus < 2) throw DomainError("overhead bound needs at least 2 GPUs");
    if (!(alpha > 1.0 / gpus) || !(alpha < 1.0))
        throw DomainError("efficiency must lie strictly between 1/G and 1");
    return (1.0 - alpha) / (alpha * gpus - 1.0);
}

GpuRecommendation recommend_gpus(double target_speedup, double overhead_ratio, int max_gpus) {
    if (target_speedup < 1.0) throw DomainError("target speedup must be >= 1");
    if (max_gpus < 1) throw DomainError("GPU count must be >= 1");

    GpuRecommendation rec;
    rec.speedup_cap = overhead_ratio > 0 ? 1.0 + 1.0 / overhead_ratio
                                         : std::numeric_limits<double>::infinity();
    // Speedup grows monotonically in G, so the first hit is the minimum.
    for (int g = 1; g <= max_gpus; ++g) {
        if (estimate_scaling(g, overhead_ratio).speedup >= target_speedup) {
            rec.gpus = g;
            break;
        }
    }
    return rec;
}

OverheadProfile estimate_overhead_ratio(const std::map<PipelineStep, double>& step_times,
                                        const std::set<PipelineStep>& hidden_steps) {
    for (const auto& [step, seconds] : step_times)
        if (seconds < 0)
            throw DomainError(std::string("negative time for step ") + to_string(step));

    auto gpu = step_times.find(PipelineStep::gpu_processing);
    if (gpu == step_times.end() || !(gpu->second > 0))
        throw MissingComputeStepError("step trace needs a positive gpu_processing time");

    OverheadProfile profile;
    profile.compute_time = gpu->second;
    for (const auto& [step, seconds] : step_times) {
        if (step == PipelineStep::gpu_processing) continue;
        if (hidden_steps.count(step)) continue;
        profile.overhead_time += seconds;
    }
    return profile;
}

int min_parameter_servers(const ClusterSpec& spec, double compute_time) {
    if (spec.worker_count < 1) throw DomainError("worker count must be >= 1");
    if (!(spec.param_size_bytes > 0)) throw DomainError("parameter size must be > 0");
    if (!(spec.bandwidth_bytes_per_sec > 0)) throw DomainError("bandwidth must be > 0");
    if (!(compute_time > 0)) throw DomainError("compute time must be > 0");

    double traffic = 2.0 * spec.param_size_bytes * spec.worker_count;
    auto masks = [&](std::int64_t n) {
        return compute_time >= traffic / (static_cast<double>(n) * spec.bandwidth_bytes_per_sec);
    };

    // ceil() is the right answer in exact arithmetic; the masking inequality
    // is authoritative, so nudge around rounding at the boundary.
    auto n = static_cast<std::int64_t>(
        std::ceil(traffic / (spec.bandwidth_bytes_per_sec * compute_time)));
    if (n < 1) n = 1;
    while (!masks(n)) ++n;
    while (n > 1 && masks(n - 1)) --n;
    return static_cast<int>(n);
}

}  // namespace traincap
