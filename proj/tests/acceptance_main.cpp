// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "traincap/batch_plan.hpp"
#include "traincap/io.hpp"
#include "traincap/mem_model.hpp"
#include "traincap/scale_plan.hpp"

using namespace traincap;

namespace {

int failures = 0;

void criterion(int id, const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("%s  %d. %s%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

std::string fixture(const std::string& name) {
    return std::string(TRAINCAP_FIXTURE_DIR) + "/" + name;
}

// ---- 1. Shape regression against the published layer table ----
void check_shapes() {
    auto net = load_network_file(fixture("alexnet.net"));

    auto start = std::chrono::steady_clock::now();
    auto shapes = propagate_shapes(net);
    auto elapsed = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();

    // Published rows: (input spatial, output spatial, input depth, output
    // depth) for each of the five convolutions.
    struct Row {
        std::int64_t in_sp, out_sp, in_d, out_d;
    };
    const Row rows[] = {
        {224, 55, 3, 96}, {27, 27, 96, 256}, {13, 13, 256, 384},
        {13, 13, 384, 384}, {13, 13, 384, 256},
    };
    bool ok = true;
    int row = 0;
    for (std::size_t i = 0; i < net.feature_layers.size(); ++i) {
        if (net.feature_layers[i].kind != LayerKind::convolution) continue;
        const TensorShape& in = shapes[i];
        const TensorShape& out = shapes[i + 1];
        const Row& r = rows[row++];
        ok = ok && in.width == r.in_sp && in.height == r.in_sp && out.width == r.out_sp &&
             out.height == r.out_sp && in.depth == r.in_d && out.depth == r.out_d;
    }
    ok = ok && row == 5;

    // Convolution-boundary view: 224 -> 55 -> 27 -> 13 -> 13 -> 13 with
    // depths 3, 96, 256, 384, 384, 256.
    std::vector<std::int64_t> spatial = {shapes[0].width};
    std::vector<std::int64_t> depths = {shapes[0].depth};
    for (std::size_t i = 0; i < net.feature_layers.size(); ++i)
        if (net.feature_layers[i].kind == LayerKind::convolution) {
            spatial.push_back(shapes[i + 1].width);
            depths.push_back(shapes[i + 1].depth);
        }
    ok = ok && spatial == std::vector<std::int64_t>{224, 55, 27, 13, 13, 13};
    ok = ok && depths == std::vector<std::int64_t>{3, 96, 256, 384, 384, 256};

    bool fast = elapsed < 1.0;
    char detail[96];
    std::snprintf(detail, sizeof detail, "propagation took %.4f ms", elapsed);
    criterion(1, "shape regression on the bundled network", ok && fast, detail);
}

// ---- 2. Efficiency worked examples ----
void check_efficiency_examples() {
    double ratio = max_overhead_ratio(4, 0.8);
    bool ok = std::abs(ratio - 1.0 / 11.0) < 1e-12;
    double speedup = efficiency(4, 0.10) * 4;
    ok = ok && speedup >= 3.0;
    char detail[96];
    std::snprintf(detail, sizeof detail, "ratio=%.12f speedup=%.4f", ratio, speedup);
    criterion(2, "4-GPU overhead bound and 3x speedup examples", ok, detail);
}

// ---- 3. Solver equals exhaustive enumeration on 1000 random instances ----
void check_solver_oracle() {
    auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(20260810);
    bool ok = true;
    int feasible = 0, infeasible = 0;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        auto inst = testutil::random_mckp(rng, 12, 3);
        auto fast = solve_selection(inst.options, inst.bound);
        auto slow = brute_force_selection(inst.options, inst.bound);
        ok = ok && fast.feasible() == slow.feasible();
        if (fast.feasible() && slow.feasible()) {
            ++feasible;
            ok = ok && fast.selection->total_time == slow.selection->total_time;
            ok = ok && fast.selection->total_memory <= inst.bound;
            ok = ok && fast.selection->assignment == slow.selection->assignment;
        } else {
            ++infeasible;
        }
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ok = ok && elapsed < 30.0 && feasible > 100 && infeasible > 100;
    char detail[96];
    std::snprintf(detail, sizeof detail, "%d feasible / %d infeasible in %.2f s", feasible,
                  infeasible, elapsed);
    criterion(3, "1000-instance oracle equivalence", ok, detail);
}

// ---- 4. Throughput rises then falls across the sweep ----
void check_throughput_trend() {
    auto plan = plan_batch_size(testutil::make_sweep_net(), testutil::make_sweep_catalog(),
                                20'000'000, 46'080, {32, 64, 128, 256, 512});
    bool ok = plan.candidates.size() == 5;
    std::vector<double> thr;
    for (const auto& c : plan.candidates) {
        ok = ok && c.throughput.has_value();
        if (c.throughput) thr.push_back(*c.throughput);
    }
    std::size_t peak = 0;
    for (std::size_t i = 1; i < thr.size(); ++i)
        if (thr[i] > thr[peak]) peak = i;
    for (std::size_t i = 0; ok && i < thr.size() - 1; ++i)
        ok = i < peak ? thr[i] < thr[i + 1] : thr[i] > thr[i + 1];
    ok = ok && peak > 0 && peak < thr.size() - 1;
    ok = ok && plan.recommended &&
         *plan.recommended == plan.candidates[peak].batch_size;
    std::ostringstream detail;
    detail << "throughput";
    for (double t : thr) detail << " " << t;
    criterion(4, "throughput peak with the recommendation on it", ok, detail.str());
}

// ---- 5. Parameter-server minimality and monotonicity over 1000 samples ----
void check_ps_minimality() {
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> sp(1.0, 2e9), bw(1e6, 2e10), tc(1e-3, 20.0);
    std::uniform_int_distribution<int> nw(1, 128);
    bool ok = true;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        ClusterSpec spec{nw(rng), sp(rng), bw(rng), 1};
        double t = tc(rng);
        int n = min_parameter_servers(spec, t);
        double traffic = 2.0 * spec.param_size_bytes * spec.worker_count;
        ok = ok && t >= traffic / (n * spec.bandwidth_bytes_per_sec);
        if (n >= 2) ok = ok && t < traffic / ((n - 1) * spec.bandwidth_bytes_per_sec);

        // Ordered pairs in each argument.
        ClusterSpec bigger = spec;
        bigger.param_size_bytes *= 2;
        ok = ok && min_parameter_servers(bigger, t) >= n;
        ClusterSpec crowded = spec;
        crowded.worker_count += 8;
        ok = ok && min_parameter_servers(crowded, t) >= n;
        ClusterSpec faster_net = spec;
        faster_net.bandwidth_bytes_per_sec *= 2;
        ok = ok && min_parameter_servers(faster_net, t) <= n;
        ok = ok && min_parameter_servers(spec, 2 * t) <= n;
    }
    criterion(5, "parameter-server count is minimal and monotone", ok);
}

// ---- 6. Memory-model arithmetic ----
void check_memory_arithmetic() {
    auto toy = testutil::make_toy_net();
    auto shapes = propagate_shapes(toy);
    bool ok = feature_map_memory(toy, shapes, 2) == 3072;
    ok = ok && model_param_memory(toy) == 1920;
    ok = ok && classifier_memory({{8, 1}, {4, 2}}) == 3552;

    std::mt19937 rng(99);
    std::uniform_int_distribution<std::int64_t> batch(1, 1 << 20);
    for (int trial = 0; trial < 100 && ok; ++trial) {
        NetworkSpec net = testutil::random_network(rng);
        auto s = propagate_shapes(net);
        std::int64_t k = batch(rng);
        ok = feature_map_memory(net, s, 2 * k) == 2 * feature_map_memory(net, s, k);
    }
    criterion(6, "hand-derived memory fixtures and exact linearity", ok);
}

// ---- 7. Efficiency round-trip and the speedup cap ----
void check_round_trip() {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> gdist(2, 64);
    std::uniform_real_distribution<double> rdist(1e-9, 2.0);
    bool ok = true;
    for (int trial = 0; trial < 2000 && ok; ++trial) {
        int g = gdist(rng);
        double r = rdist(rng);
        double alpha = efficiency(g, r);
        ok = std::abs(max_overhead_ratio(g, alpha) - r) <= 1e-12 * r;
        ok = ok && alpha * g < 1.0 + 1.0 / r;
    }
    criterion(7, "overhead round-trip within 1e-12 and below the cap", ok);
}

// ---- 8. Byte-identical machine-readable output ----
std::string run_capture(const std::string& cmd, int* exit_code) {
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "";
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    *exit_code = WEXITSTATUS(pclose(pipe));
    return out;
}

std::string blank_timestamp(std::string text) {
    auto pos = text.find("\"generated_at\"");
    if (pos == std::string::npos) return text;
    auto end = text.find('\n', pos);
    text.replace(pos, end - pos, "\"generated_at\": \"\",");
    return text;
}

void check_determinism() {
    std::string cmd = std::string(TRAINCAP_BIN) + " plan --network " +
                      fixture("alexnet.net") + " --catalog " +
                      fixture("alexnet_profile.csv") +
                      " --gpu-memory 12GiB --dataset-size 1281167 --workers 4 --ro 0.1" +
                      " --format json 2>/dev/null";
    int code1 = -1, code2 = -1;
    std::string first = blank_timestamp(run_capture(cmd, &code1));
    std::string second = blank_timestamp(run_capture(cmd, &code2));
    bool ok = code1 == 0 && code2 == 0 && !first.empty() && first == second;
    char detail[96];
    std::snprintf(detail, sizeof detail, "%zu bytes, exits %d/%d", first.size(), code1, code2);
    criterion(8, "plan --format json is byte-identical across runs", ok, detail);
}

}  // namespace

int main() {
    std::printf("=== acceptance suite ===\n");
    check_shapes();
    check_efficiency_examples();
    check_solver_oracle();
    check_throughput_trend();
    check_ps_minimality();
    check_memory_arithmetic();
    check_round_trip();
    check_determinism();
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures;
}
