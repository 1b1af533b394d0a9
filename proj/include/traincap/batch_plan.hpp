#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "traincap/conv_select.hpp"
#include "traincap/mem_model.hpp"
#include "traincap/net_model.hpp"

namespace traincap {

enum class AdvisoryKind { reduce_batch, adjust_model, caveat };

const char* to_string(AdvisoryKind kind);

struct Advisory {
    AdvisoryKind kind = AdvisoryKind::caveat;
    std::string message;
    std::vector<int> affected_layers;  // convolution-layer ids, may be empty
};

/// Everything the sweep learned about one candidate mini-batch size.
struct BatchCandidateResult {
    std::int64_t batch_size = 0;
    MemoryBreakdown breakdown;
    SolveResult solve;
    std::optional<double> epoch_time_seconds;  // ceil(dataset/batch) * per-batch time
    std::optional<double> throughput;          // samples per second
    // Layers whose fastest profiled algorithm lost to a slower one; the
    // memory budget is the only constraint that can force that.
    std::vector<int> memory_limited_layers;
};

struct BatchPlan {
    std::vector<BatchCandidateResult> candidates;  // in input order
    std::optional<std::int64_t> recommended;       // none iff every candidate infeasible
    std::vector<Advisory> advisories;
};

/// {32, 64, 128, 256, 512} intersected with the catalog's declared batch
/// sizes; the sweep set used when the caller does not pick one.
std::vector<std::int64_t> default_batch_candidates(const AlgorithmCatalog& catalog);

/// Evaluates every candidate independently (memory bound, then algorithm
/// selection) and recommends the feasible one with the smallest estimated
/// epoch time; ties go to the larger batch (fewer parameter updates).
///
/// Throws CandidateNotInCatalogError for undeclared candidates and
/// IncompleteCatalogError when the catalog does not cover the network's
/// convolution layers. All candidates infeasible is not an error.
BatchPlan plan_batch_size(const NetworkSpec& network, const AlgorithmCatalog& catalog,
                          std::int64_t gpu_total_bits, std::int64_t dataset_size,
                          const std::vector<std::int64_t>& candidates);

/// Derives follow-up advice from a finished sweep: reduce the batch when
/// nothing fits (or a smaller batch outruns the pick), adjust the model
/// where memory forced slower algorithms, plus the standing model caveat.
std::vector<Advisory> advise_refinement(const BatchPlan& plan, const NetworkSpec& network);

/// Accounting quirks and assumptions a report reader should know about.
std::vector<std::string> model_caveats();

}  // namespace traincap
