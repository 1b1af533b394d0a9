#include "traincap/report.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "traincap/io.hpp"
#include "traincap/units.hpp"
#include "traincap/util.hpp"

namespace traincap {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::string shape_string(const TensorShape& s) {
    return std::to_string(s.width) + "x" + std::to_string(s.height) + "x" +
           std::to_string(s.depth);
}

std::string assignment_string(const Selection& sel) {
    std::string out;
    for (const auto& [layer, algo] : sel.assignment) {
        if (!out.empty()) out += ",";
        out += algo;
    }
    return out.empty() ? "(none)" : out;
}

void verify_against_oracle(const PlanReport& report, const AlgorithmCatalog& catalog) {
    for (const BatchCandidateResult& c : report.plan.candidates) {
        SolveResult oracle =
            brute_force_selection(catalog, c.batch_size, c.breakdown.bound);
        bool same = oracle.feasible() == c.solve.feasible() &&
                    (!oracle.feasible() ||
                     (oracle.selection->total_time == c.solve.selection->total_time &&
                      oracle.selection->assignment == c.solve.selection->assignment));
        if (!same)
            throw Error("verification mismatch at batch " + std::to_string(c.batch_size) +
                        ": solver and exhaustive enumeration disagree");
    }
}

}  // namespace

PlanReport run_plan(const PlanRequest& request) {
    PlanReport report;
    report.request = request;

    report.network = load_network_file(request.network_path);
    auto violations = validate_network(report.network);
    if (!violations.empty()) {
        std::string msg = "invalid network:";
        for (const Violation& v : violations)
            msg += "\n  layer " + std::to_string(v.layer_id) + ": " + v.message;
        throw ValidationError(msg);
    }
    report.shapes = propagate_shapes(report.network);

    AlgorithmCatalog catalog = load_catalog_file(request.catalog_path);

    report.candidates_used =
        request.candidates.empty() ? default_batch_candidates(catalog) : request.candidates;
    if (report.candidates_used.empty())
        throw CandidateNotInCatalogError(
            "catalog declares none of the default batch sizes (32/64/128/256/512); "
            "pass an explicit candidate list");

    report.plan = plan_batch_size(report.network, catalog, request.gpu_memory_bits,
                                  request.dataset_size, report.candidates_used);

    report.param_size_derived = !request.param_size_bytes.has_value();
    report.param_size_bytes = request.param_size_bytes.value_or(
        static_cast<double>(parameter_bits(report.network)) / 8.0);

    report.scaling = scaling_table(request.max_gpus, request.overhead_ratio);

    if (report.plan.recommended) {
        for (const BatchCandidateResult& c : report.plan.candidates) {
            if (c.batch_size != *report.plan.recommended) continue;
            report.compute_time_seconds = c.solve.selection->total_time;
            ClusterSpec cluster{request.workers, report.param_size_bytes,
                                request.bandwidth_bytes_per_sec, request.max_gpus};
            report.parameter_servers =
                min_parameter_servers(cluster, *report.compute_time_seconds);
            break;
        }
    }

    report.caveats = model_caveats();

    if (request.verify) {
        verify_against_oracle(report, catalog);
        report.verified = true;
    }
    return report;
}

void render_plan_text(const PlanReport& r, std::ostream& out) {
    int pools = static_cast<int>(r.network.feature_layers.size()) -
                r.network.convolution_layer_count();
    out << "network: " << r.request.network_path << "\n"
        << "  " << r.network.convolution_layer_count() << " convolution + " << pools
        << " pooling feature layers, " << r.network.classifier_layers.size()
        << " classifier layers\n  shapes: ";
    for (std::size_t i = 0; i < r.shapes.size(); ++i)
        out << (i ? " -> " : "") << shape_string(r.shapes[i]);
    out << "\ncatalog: " << r.request.catalog_path << "\n"
        << "GPU memory: " << r.request.gpu_memory_bits << " bits ("
        << human_bytes(static_cast<double>(r.request.gpu_memory_bits) / 8.0) << ")\n"
        << "dataset: " << r.request.dataset_size << " samples\n\n";

    out << "batch   feasible  workspace bound   time/batch   epoch time   throughput  "
           "assignment\n";
    for (const BatchCandidateResult& c : r.plan.candidates) {
        char line[256];
        if (c.solve.feasible()) {
            std::snprintf(line, sizeof line,
                          "%5lld   yes       %15lld   %9.6f s   %9.1f s   %7.1f/s   %s",
                          static_cast<long long>(c.batch_size),
                          static_cast<long long>(c.breakdown.bound),
                          c.solve.selection->total_time, *c.epoch_time_seconds, *c.throughput,
                          assignment_string(*c.solve.selection).c_str());
        } else {
            std::snprintf(line, sizeof line,
                          "%5lld   no        %15lld   cheapest workspace needs %lld bits",
                          static_cast<long long>(c.batch_size),
                          static_cast<long long>(c.breakdown.bound),
                          static_cast<long long>(c.solve.min_achievable_memory));
        }
        out << line << "\n";
    }
    if (r.plan.recommended)
        out << "\nrecommended mini-batch: " << *r.plan.recommended << "\n";
    else
        out << "\nno candidate mini-batch is feasible\n";

    out << "\nscaling (overhead ratio " << fmt("%.4f", r.request.overhead_ratio) << "):\n"
        << "  gpus  efficiency  speedup\n";
    for (const ScalingEstimate& s : r.scaling) {
        char line[80];
        std::snprintf(line, sizeof line, "  %4d      %.4f  %7.2f", s.gpus, s.efficiency,
                      s.speedup);
        out << line << "\n";
    }

    if (r.parameter_servers) {
        double traffic = 2.0 * r.param_size_bytes * r.request.workers;
        out << "\nparameter servers: " << *r.parameter_servers << "\n"
            << "  parameter size: " << fmt("%.0f", r.param_size_bytes) << " bytes"
            << (r.param_size_derived ? " (derived from the model)" : "") << ", workers: "
            << r.request.workers << ", bandwidth/server: "
            << fmt("%.0f", r.request.bandwidth_bytes_per_sec) << " B/s\n"
            << "  masking: round traffic " << fmt("%.0f", traffic) << " bytes across "
            << *r.parameter_servers << " servers takes "
            << fmt("%.6f",
                   traffic / (*r.parameter_servers * r.request.bandwidth_bytes_per_sec))
            << " s <= compute time " << fmt("%.6f", *r.compute_time_seconds) << " s\n";
    } else {
        out << "\nparameter servers: n/a (no feasible mini-batch)\n";
    }

    if (!r.plan.advisories.empty()) {
        out << "\nadvisories:\n";
        for (const Advisory& a : r.plan.advisories) {
            out << "  [" << to_string(a.kind) << "] " << a.message;
            if (!a.affected_layers.empty()) {
                out << " (layers";
                for (int l : a.affected_layers) out << " " << l;
                out << ")";
            }
            out << "\n";
        }
    }
    out << "\nmodel caveats:\n";
    for (const std::string& c : r.caveats) out << "  - " << c << "\n";
    if (r.request.verify)
        out << "\nselection verified against exhaustive enumeration\n";
}

namespace {

Json shapes_json(const std::vector<TensorShape>& shapes) {
    Json arr = Json::array();
    for (const TensorShape& s : shapes) arr.push_back({s.width, s.height, s.depth});
    return arr;
}

Json candidate_json(const BatchCandidateResult& c) {
    Json j;
    j["batch_size"] = c.batch_size;
    j["memory_bits"] = {{"feature_maps", c.breakdown.feature_maps},
                        {"model_params", c.breakdown.model_params},
                        {"classifier", c.breakdown.classifier},
                        {"gpu_total", c.breakdown.gpu_total},
                        {"bound", c.breakdown.bound}};
    j["feasible"] = c.solve.feasible();
    j["min_achievable_memory_bits"] = c.solve.min_achievable_memory;
    if (c.solve.feasible()) {
        const Selection& sel = *c.solve.selection;
        Json assignment = Json::object();
        for (const auto& [layer, algo] : sel.assignment)
            assignment[std::to_string(layer)] = algo;
        j["selection"] = {{"assignment", std::move(assignment)},
                          {"total_time_seconds", sel.total_time},
                          {"total_memory_bits", sel.total_memory}};
        j["epoch_time_seconds"] = *c.epoch_time_seconds;
        j["throughput_samples_per_second"] = *c.throughput;
    } else {
        j["selection"] = nullptr;
        j["epoch_time_seconds"] = nullptr;
        j["throughput_samples_per_second"] = nullptr;
    }
    j["memory_limited_layers"] = c.memory_limited_layers;
    return j;
}

}  // namespace

std::string render_plan_json(const PlanReport& r, const std::string& timestamp) {
    Json j;
    j["schema_version"] = 1;
    j["generated_at"] = timestamp;

    Json inputs;
    inputs["network_file"] = r.request.network_path;
    inputs["catalog_file"] = r.request.catalog_path;
    inputs["gpu_memory_bits"] = r.request.gpu_memory_bits;
    inputs["dataset_size"] = r.request.dataset_size;
    inputs["candidate_batch_sizes"] = r.candidates_used;
    inputs["max_gpus"] = r.request.max_gpus;
    inputs["overhead_ratio"] = r.request.overhead_ratio;
    inputs["workers"] = r.request.workers;
    inputs["bandwidth_bytes_per_second"] = r.request.bandwidth_bytes_per_sec;
    inputs["parameter_size_bytes"] = r.param_size_bytes;
    inputs["parameter_size_derived"] = r.param_size_derived;
    j["inputs"] = std::move(inputs);

    j["network"] = {{"feature_layers", r.network.feature_layers.size()},
                    {"convolution_layers", r.network.convolution_layer_count()},
                    {"classifier_layers", r.network.classifier_layers.size()},
                    {"shapes", shapes_json(r.shapes)}};

    Json candidates = Json::array();
    for (const BatchCandidateResult& c : r.plan.candidates)
        candidates.push_back(candidate_json(c));
    Json advisories = Json::array();
    for (const Advisory& a : r.plan.advisories)
        advisories.push_back({{"kind", to_string(a.kind)},
                              {"message", a.message},
                              {"affected_layers", a.affected_layers}});
    j["batch_plan"] = {
        {"recommended_batch_size",
         r.plan.recommended ? Json(*r.plan.recommended) : Json(nullptr)},
        {"candidates", std::move(candidates)},
        {"advisories", std::move(advisories)}};

    Json table = Json::array();
    for (const ScalingEstimate& s : r.scaling)
        table.push_back(
            {{"gpus", s.gpus}, {"efficiency", s.efficiency}, {"speedup", s.speedup}});
    j["scaling"] = {{"overhead_ratio", r.request.overhead_ratio}, {"table", std::move(table)}};

    if (r.parameter_servers) {
        j["parameter_servers"] = {
            {"count", *r.parameter_servers},
            {"compute_time_seconds", *r.compute_time_seconds},
            {"traffic_bytes_per_round", 2.0 * r.param_size_bytes * r.request.workers}};
    } else {
        j["parameter_servers"] = nullptr;
    }

    j["model_caveats"] = r.caveats;
    j["verification"] = r.verified ? "ok" : "not requested";
    return j.dump(2) + "\n";
}

void render_scale_text(const ScaleReport& r, std::ostream& out) {
    out << "overhead ratio: " << fmt("%.6f", r.overhead_ratio);
    if (r.steps_path) out << " (from " << *r.steps_path << ")";
    out << "\n\n  gpus  efficiency  speedup\n";
    for (const ScalingEstimate& s : r.table) {
        char line[80];
        std::snprintf(line, sizeof line, "  %4d      %.4f  %7.2f", s.gpus, s.efficiency,
                      s.speedup);
        out << line << "\n";
    }
    if (r.target_speedup) {
        out << "\ntarget speedup " << fmt("%.2f", *r.target_speedup) << "x: ";
        if (r.recommendation->gpus)
            out << "use " << *r.recommendation->gpus << " GPUs\n";
        else if (*r.target_speedup >= r.recommendation->speedup_cap)
            out << "unattainable; overhead caps speedup at "
                << fmt("%.4f", r.recommendation->speedup_cap) << "x\n";
        else
            out << "not reachable within the GPU limit (cap "
                << fmt("%.4f", r.recommendation->speedup_cap) << "x)\n";
    }
}

std::string render_scale_json(const ScaleReport& r, const std::string& timestamp) {
    Json j;
    j["schema_version"] = 1;
    j["generated_at"] = timestamp;
    j["overhead_ratio"] = r.overhead_ratio;
    if (r.steps_path) j["steps_file"] = *r.steps_path;
    Json table = Json::array();
    for (const ScalingEstimate& s : r.table)
        table.push_back(
            {{"gpus", s.gpus}, {"efficiency", s.efficiency}, {"speedup", s.speedup}});
    j["table"] = std::move(table);
    if (r.target_speedup) {
        double cap = r.recommendation->speedup_cap;
        j["recommendation"] = {
            {"target_speedup", *r.target_speedup},
            {"gpus", r.recommendation->gpus ? Json(*r.recommendation->gpus) : Json(nullptr)},
            {"speedup_cap", std::isinf(cap) ? Json(nullptr) : Json(cap)}};
    }
    return j.dump(2) + "\n";
}

void render_ps_text(const PsReport& r, std::ostream& out) {
    double traffic = 2.0 * r.spec.param_size_bytes * r.spec.worker_count;
    out << "parameter servers: " << r.servers << "\n"
        << "  round traffic: " << fmt("%.0f", traffic) << " bytes (pull + push, "
        << r.spec.worker_count << " workers x " << fmt("%.0f", r.spec.param_size_bytes)
        << " bytes)\n"
        << "  masking: " << fmt("%.0f", traffic) << " / (" << r.servers << " x "
        << fmt("%.0f", r.spec.bandwidth_bytes_per_sec) << " B/s) = "
        << fmt("%.6f", traffic / (r.servers * r.spec.bandwidth_bytes_per_sec))
        << " s <= compute time " << fmt("%.6f", r.compute_time_seconds) << " s\n";
}

std::string render_ps_json(const PsReport& r, const std::string& timestamp) {
    Json j;
    j["schema_version"] = 1;
    j["generated_at"] = timestamp;
    j["inputs"] = {{"parameter_size_bytes", r.spec.param_size_bytes},
                   {"workers", r.spec.worker_count},
                   {"bandwidth_bytes_per_second", r.spec.bandwidth_bytes_per_sec},
                   {"compute_time_seconds", r.compute_time_seconds}};
    j["parameter_servers"] = r.servers;
    j["communication_time_seconds"] =
        2.0 * r.spec.param_size_bytes * r.spec.worker_count /
        (r.servers * r.spec.bandwidth_bytes_per_sec);
    return j.dump(2) + "\n";
}

std::string current_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace traincap
