#include "traincap/cli.hpp"

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "traincap/io.hpp"
#include "traincap/report.hpp"
#include "traincap/units.hpp"

namespace traincap {

namespace {

std::int64_t to_bits(double bytes) {
    double bits = bytes * 8.0;
    if (!(bits >= 1) || bits > 9.0e18)
        throw UnitError("memory size out of range");
    return static_cast<std::int64_t>(std::llround(bits));
}

struct PlanArgs {
    std::string network, catalog, gpu_memory, bandwidth = "10Gbps", param_size, format = "text";
    std::vector<std::int64_t> candidates;
    std::int64_t dataset_size = 0;
    int max_gpus = 8;
    int workers = 1;
    double overhead_ratio = 0.0;
    bool verify = false;
};

int do_plan(const PlanArgs& args) {
    PlanRequest req;
    req.network_path = args.network;
    req.catalog_path = args.catalog;
    req.gpu_memory_bits = to_bits(parse_bytes(args.gpu_memory));
    req.dataset_size = args.dataset_size;
    req.candidates = args.candidates;
    req.max_gpus = args.max_gpus;
    req.overhead_ratio = args.overhead_ratio;
    req.workers = args.workers;
    req.bandwidth_bytes_per_sec = parse_bandwidth(args.bandwidth);
    if (!args.param_size.empty()) req.param_size_bytes = parse_bytes(args.param_size);
    req.verify = args.verify;

    PlanReport report = run_plan(req);
    if (args.format == "json")
        std::cout << render_plan_json(report, current_timestamp());
    else
        render_plan_text(report, std::cout);
    return report.plan.recommended ? 0 : 2;
}

struct ScaleArgs {
    std::optional<double> overhead_ratio;
    std::string steps, format = "text";
    std::optional<double> target;
    int max_gpus = 8;
};

int do_scale(const ScaleArgs& args) {
    ScaleReport report;
    if (args.overhead_ratio) {
        report.overhead_ratio = *args.overhead_ratio;
        if (report.overhead_ratio < 0) throw DomainError("overhead ratio must be >= 0");
    } else {
        StepTrace trace = load_step_trace_file(args.steps);
        report.overhead_ratio = estimate_overhead_ratio(trace.times, trace.hidden).ratio();
        report.steps_path = args.steps;
    }
    report.table = scaling_table(args.max_gpus, report.overhead_ratio);
    if (args.target) {
        report.target_speedup = *args.target;
        report.recommendation = recommend_gpus(*args.target, report.overhead_ratio,
                                               args.max_gpus);
    }
    if (args.format == "json")
        std::cout << render_scale_json(report, current_timestamp());
    else
        render_scale_text(report, std::cout);
    return 0;
}

struct PsArgs {
    std::string param_size, bandwidth, format = "text";
    int workers = 0;
    double compute_time = 0.0;
};

int do_ps(const PsArgs& args) {
    PsReport report;
    report.spec.param_size_bytes = parse_bytes(args.param_size);
    report.spec.worker_count = args.workers;
    report.spec.bandwidth_bytes_per_sec = parse_bandwidth(args.bandwidth);
    report.spec.gpu_count = 1;
    report.compute_time_seconds = args.compute_time;
    report.servers = min_parameter_servers(report.spec, args.compute_time);
    if (args.format == "json")
        std::cout << render_ps_json(report, current_timestamp());
    else
        render_ps_text(report, std::cout);
    return 0;
}

int do_catalog_validate(const std::string& path, const std::string& format) {
    AlgorithmCatalog catalog =
        format.empty() ? load_catalog_file(path)
                       : load_catalog_file(path, format == "json" ? CatalogFormat::json
                                                                  : CatalogFormat::csv);
    std::cout << "catalog ok: " << catalog.entries().size() << " entries, "
              << catalog.layer_count() << " layers, " << catalog.algorithms().size()
              << " algorithms, " << catalog.declared_batch_sizes().size()
              << " batch sizes\n";
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"capacity planner for CNN training: mini-batch size, per-layer "
                 "convolution algorithms, GPU count, and parameter servers"};
    app.require_subcommand(1);

    PlanArgs plan_args;
    auto* plan = app.add_subcommand(
        "plan", "sweep mini-batch candidates and assemble the full training plan");
    plan->add_option("--network", plan_args.network, "network description file")->required();
    plan->add_option("--catalog", plan_args.catalog, "profiled cost catalog (.csv or .json)")
        ->required();
    plan->add_option("--gpu-memory", plan_args.gpu_memory, "GPU memory with suffix, e.g. 12GiB")
        ->required();
    plan->add_option("--dataset-size", plan_args.dataset_size, "training samples per epoch")
        ->required();
    plan->add_option("--candidates", plan_args.candidates,
                     "batch sizes to sweep (default: 32,64,128,256,512 limited to the catalog)")
        ->delimiter(',');
    plan->add_option("--gmax", plan_args.max_gpus, "largest GPU count to tabulate");
    plan->add_option("--ro", plan_args.overhead_ratio,
                     "unhidden overhead / compute time ratio for the scaling table");
    plan->add_option("--workers", plan_args.workers, "distributed worker count");
    plan->add_option("--bandwidth", plan_args.bandwidth,
                     "per-server network bandwidth, e.g. 10Gbps");
    plan->add_option("--param-size", plan_args.param_size,
                     "parameter traffic per round, e.g. 180MB (default: derived from model)");
    plan->add_option("--format", plan_args.format)->check(CLI::IsMember({"text", "json"}));
    plan->add_flag("--verify", plan_args.verify,
                   "cross-check every selection against exhaustive enumeration");

    ScaleArgs scale_args;
    double scale_ro = -1.0;
    auto* scale =
        app.add_subcommand("scale", "efficiency and speedup table for 1..G GPUs");
    auto* ro_opt = scale->add_option("--ro", scale_ro, "overhead ratio");
    auto* steps_opt =
        scale->add_option("--steps", scale_args.steps, "per-step time trace file");
    ro_opt->excludes(steps_opt);
    double scale_target = 0.0;
    auto* target_opt =
        scale->add_option("--target", scale_target, "desired speedup factor, e.g. 3");
    scale->add_option("--gmax", scale_args.max_gpus, "largest GPU count to consider");
    scale->add_option("--format", scale_args.format)->check(CLI::IsMember({"text", "json"}));

    PsArgs ps_args;
    auto* ps = app.add_subcommand(
        "ps", "minimum parameter servers that mask a round of update traffic");
    ps->add_option("param-size", ps_args.param_size, "parameter size with suffix, e.g. 180MB")
        ->required();
    ps->add_option("workers", ps_args.workers, "worker count")->required();
    ps->add_option("bandwidth", ps_args.bandwidth, "per-server bandwidth, e.g. 10Gbps")
        ->required();
    ps->add_option("compute-time", ps_args.compute_time, "per-round GPU compute time, seconds")
        ->required();
    ps->add_option("--format", ps_args.format)->check(CLI::IsMember({"text", "json"}));

    std::string cv_path, cv_format;
    auto* cv = app.add_subcommand("catalog-validate", "check a catalog file and summarize it");
    cv->add_option("catalog", cv_path, "catalog file")->required();
    cv->add_option("--catalog-format", cv_format)->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (plan->parsed()) return do_plan(plan_args);
        if (scale->parsed()) {
            if (!*ro_opt && !*steps_opt)
                throw DomainError("pass exactly one of --ro or --steps");
            if (*ro_opt) scale_args.overhead_ratio = scale_ro;
            if (*target_opt) scale_args.target = scale_target;
            return do_scale(scale_args);
        }
        if (ps->parsed()) return do_ps(ps_args);
        if (cv->parsed()) return do_catalog_validate(cv_path, cv_format);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace traincap
