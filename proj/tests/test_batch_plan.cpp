#include <doctest.h>

#include "helpers.hpp"
#include "traincap/batch_plan.hpp"

using namespace traincap;
using testutil::make_alexnet;
using testutil::make_sweep_catalog;
using testutil::make_sweep_net;

namespace {
constexpr std::int64_t kSweepGpuBits = 20'000'000;
constexpr std::int64_t kSweepDataset = 46'080;  // divisible by every candidate
}  // namespace

TEST_CASE("throughput rises to a peak and falls once memory binds") {
    auto net = make_sweep_net();
    auto catalog = make_sweep_catalog();
    auto plan = plan_batch_size(net, catalog, kSweepGpuBits, kSweepDataset,
                                {32, 64, 128, 256, 512});

    REQUIRE(plan.candidates.size() == 5);
    for (const auto& c : plan.candidates) REQUIRE(c.solve.feasible());

    // Small batches run the fast algorithm everywhere; big ones cannot.
    CHECK(plan.candidates[2].solve.selection->assignment ==
          std::map<int, AlgorithmId>{{1, "fft"}, {2, "fft"}});
    CHECK(plan.candidates[3].solve.selection->assignment ==
          std::map<int, AlgorithmId>{{1, "gemm"}, {2, "gemm"}});

    for (int i = 0; i < 2; ++i)
        CHECK(*plan.candidates[i].throughput < *plan.candidates[i + 1].throughput);
    for (int i = 2; i < 4; ++i)
        CHECK(*plan.candidates[i].throughput > *plan.candidates[i + 1].throughput);

    REQUIRE(plan.recommended);
    CHECK(*plan.recommended == 128);  // the throughput peak
}

TEST_CASE("per-candidate derived quantities follow their definitions") {
    auto plan = plan_batch_size(make_sweep_net(), make_sweep_catalog(), kSweepGpuBits,
                                46'081,  // prime-ish: exercises the ceiling
                                {32, 128});
    for (const auto& c : plan.candidates) {
        REQUIRE(c.solve.feasible());
        std::int64_t batches = (46'081 + c.batch_size - 1) / c.batch_size;
        CHECK(*c.epoch_time_seconds ==
              static_cast<double>(batches) * c.solve.selection->total_time);
        CHECK(*c.throughput ==
              static_cast<double>(c.batch_size) / c.solve.selection->total_time);
    }
}

TEST_CASE("recommendation equals the per-candidate oracle argmin") {
    auto net = make_sweep_net();
    auto catalog = make_sweep_catalog();
    std::vector<std::int64_t> candidates = {32, 64, 128, 256, 512};
    auto plan = plan_batch_size(net, catalog, kSweepGpuBits, kSweepDataset, candidates);

    std::optional<std::int64_t> best;
    double best_epoch = 0;
    for (std::int64_t b : candidates) {
        auto bound = memory_bound(kSweepGpuBits, net, b).bound;
        auto oracle = brute_force_selection(catalog, b, bound);
        if (!oracle.feasible()) continue;
        double epoch = static_cast<double>((kSweepDataset + b - 1) / b) *
                       oracle.selection->total_time;
        if (!best || epoch < best_epoch || (epoch == best_epoch && b > *best)) {
            best = b;
            best_epoch = epoch;
        }
    }
    CHECK(plan.recommended == best);
}

TEST_CASE("a single feasible candidate is recommended") {
    auto plan =
        plan_batch_size(make_sweep_net(), make_sweep_catalog(), kSweepGpuBits, 1000, {64});
    CHECK(plan.recommended == 64);
}

TEST_CASE("equal epoch times choose the larger batch and flag the faster smaller one") {
    NetworkSpec net = make_sweep_net();
    net.feature_layers.pop_back();  // single convolution
    std::vector<CostEntry> entries = {{1, "gemm", 60, 0.5, 100}, {1, "gemm", 100, 1.0, 100}};
    AlgorithmCatalog catalog(std::move(entries));

    // dataset 100: batch 60 runs 2 rounds (1.0 s), batch 100 runs 1 (1.0 s).
    auto plan = plan_batch_size(net, catalog, 1LL << 40, 100, {60, 100});
    CHECK(plan.recommended == 100);

    // Throughput favors 60 (120/s vs 100/s), so the sweep advises trying it.
    bool advised = false;
    for (const auto& a : plan.advisories)
        if (a.kind == AdvisoryKind::reduce_batch) advised = true;
    CHECK(advised);
}

TEST_CASE("all candidates infeasible yields no recommendation plus advice") {
    auto plan = plan_batch_size(make_sweep_net(), make_sweep_catalog(), 1000, kSweepDataset,
                                {32, 64, 128, 256, 512});
    CHECK(!plan.recommended);
    for (const auto& c : plan.candidates) CHECK(!c.solve.feasible());
    REQUIRE(!plan.advisories.empty());
    CHECK(plan.advisories.front().kind == AdvisoryKind::reduce_batch);
}

TEST_CASE("memory-limited layers are named in the adjust advisory") {
    NetworkSpec net = make_sweep_net();
    std::vector<CostEntry> entries = {
        {1, "fft", 128, 0.02, 8'000'000}, {1, "gemm", 128, 0.05, 100'000},
        {2, "fft", 128, 0.03, 1'000'000}, {2, "gemm", 128, 0.08, 50'000},
    };
    AlgorithmCatalog catalog(std::move(entries));
    // Budget fits gemm+fft (time 0.08) but not fft+fft (0.05, 9e6 bits).
    std::int64_t gpu = 2'000'000 + 26'624 * 128 + 39'136;

    auto plan = plan_batch_size(net, catalog, gpu, 1000, {128});
    REQUIRE(plan.recommended == 128);
    const auto& c = plan.candidates[0];
    CHECK(c.solve.selection->assignment ==
          std::map<int, AlgorithmId>{{1, "gemm"}, {2, "fft"}});
    CHECK(c.memory_limited_layers == std::vector<int>{1});

    bool found = false;
    for (const auto& a : plan.advisories)
        if (a.kind == AdvisoryKind::adjust_model) {
            found = true;
            CHECK(a.affected_layers == std::vector<int>{1});
        }
    CHECK(found);
}

TEST_CASE("nothing to advise when the fastest algorithms all fit") {
    auto plan =
        plan_batch_size(make_sweep_net(), make_sweep_catalog(), kSweepGpuBits, 1000, {32});
    REQUIRE(plan.recommended == 32);
    CHECK(plan.candidates[0].memory_limited_layers.empty());
    REQUIRE(plan.advisories.size() == 1);
    CHECK(plan.advisories[0].kind == AdvisoryKind::caveat);
}

TEST_CASE("the standing caveat advisory is always present") {
    auto plan =
        plan_batch_size(make_sweep_net(), make_sweep_catalog(), kSweepGpuBits, 1000, {64});
    bool caveat = false;
    for (const auto& a : plan.advisories)
        if (a.kind == AdvisoryKind::caveat) caveat = true;
    CHECK(caveat);
    CHECK(model_caveats().size() >= 3);
}

TEST_CASE("removing a non-recommended candidate keeps the recommendation") {
    auto full = plan_batch_size(make_sweep_net(), make_sweep_catalog(), kSweepGpuBits,
                                kSweepDataset, {32, 64, 128, 256, 512});
    auto trimmed = plan_batch_size(make_sweep_net(), make_sweep_catalog(), kSweepGpuBits,
                                   kSweepDataset, {64, 128, 256});
    CHECK(full.recommended == trimmed.recommended);
}

TEST_CASE("with monotone memory, infeasibility persists upward") {
    // 6.9e6 bits: batch 128 still fits on the lean algorithm, 256 and 512
    // cannot fit anything.
    auto plan = plan_batch_size(make_sweep_net(), make_sweep_catalog(), 6'900'000,
                                kSweepDataset, {128, 256, 512});
    CHECK(plan.candidates[0].solve.feasible());
    CHECK(!plan.candidates[1].solve.feasible());
    CHECK(!plan.candidates[2].solve.feasible());
    CHECK(plan.recommended == 128);
}

TEST_CASE("recommended epoch time is minimal among feasible candidates") {
    auto plan = plan_batch_size(make_sweep_net(), make_sweep_catalog(), kSweepGpuBits,
                                kSweepDataset, {32, 64, 128, 256, 512});
    const BatchCandidateResult* picked = nullptr;
    for (const auto& c : plan.candidates)
        if (c.batch_size == *plan.recommended) picked = &c;
    for (const auto& c : plan.candidates)
        if (c.epoch_time_seconds)
            CHECK(*picked->epoch_time_seconds <= *c.epoch_time_seconds);
}

TEST_CASE("input validation") {
    auto net = make_sweep_net();
    auto catalog = make_sweep_catalog();
    CHECK_THROWS_AS(plan_batch_size(net, catalog, kSweepGpuBits, 1000, {48}),
                    CandidateNotInCatalogError);
    CHECK_THROWS_AS(plan_batch_size(net, catalog, kSweepGpuBits, 1000, {}), DomainError);
    CHECK_THROWS_AS(plan_batch_size(net, catalog, kSweepGpuBits, 0, {64}), DomainError);
    CHECK_THROWS_AS(plan_batch_size(make_alexnet(), catalog, kSweepGpuBits, 1000, {64}),
                    IncompleteCatalogError);
}

TEST_CASE("default candidates intersect the canonical sweep with the catalog") {
    CHECK(default_batch_candidates(make_sweep_catalog()) ==
          std::vector<std::int64_t>{32, 64, 128, 256, 512});
    AlgorithmCatalog sparse({{1, "gemm", 16, 0.5, 10}, {1, "gemm", 128, 0.9, 20}});
    CHECK(default_batch_candidates(sparse) == std::vector<std::int64_t>{128});
}
