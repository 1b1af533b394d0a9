#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "traincap/catalog.hpp"

namespace traincap {

/// One algorithm per convolution layer, with the totals it implies.
/// total_time and total_memory are recomputable from the catalog.
struct Selection {
    std::map<int, AlgorithmId> assignment;  // layer_id -> algorithm, all q layers
    double total_time = 0.0;                // seconds per mini-batch
    std::int64_t total_memory = 0;          // bits of algorithm workspace
};

/// Outcome of one assignment problem. No selection means no assignment fits
/// the memory bound; min_achievable_memory (the cheapest possible total) is
/// always reported for diagnostics.
struct SolveResult {
    std::optional<Selection> selection;
    std::int64_t min_achievable_memory = 0;

    bool feasible() const noexcept { return selection.has_value(); }
};

/// Candidate algorithms per layer; index i holds the options of layer i+1.
using LayerOptions = std::vector<std::vector<CostEntry>>;

/// Extracts per-layer options for `batch_size` from the catalog, sorted by
/// (time, memory, algorithm). Throws IncompleteCatalogError if some layer
/// has no entry at that batch size.
LayerOptions catalog_options(const AlgorithmCatalog& catalog, std::int64_t batch_size);

/// Picks exactly one algorithm per layer minimizing total time subject to
/// total memory <= memory_bound. Exact branch-and-bound; provably optimal.
///
/// Ties resolve deterministically: smaller total memory first, then the
/// lexicographically smallest algorithm-name sequence in layer order.
SolveResult solve_selection(const AlgorithmCatalog& catalog, std::int64_t batch_size,
                            std::int64_t memory_bound);
SolveResult solve_selection(const LayerOptions& options, std::int64_t memory_bound);

/// Exhaustive-enumeration oracle with identical tie-breaking. Refuses
/// instances whose assignment count exceeds 10^7 (InstanceTooLargeError).
/// Meant for tests and the CLI --verify flag, not the planning path.
SolveResult brute_force_selection(const AlgorithmCatalog& catalog, std::int64_t batch_size,
                                  std::int64_t memory_bound);
SolveResult brute_force_selection(const LayerOptions& options, std::int64_t memory_bound);

}  // namespace traincap
