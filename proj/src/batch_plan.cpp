#include "traincap/batch_plan.hpp"

#include <algorithm>
#include <future>

namespace traincap {

const char* to_string(AdvisoryKind kind) {
    switch (kind) {
        case AdvisoryKind::reduce_batch: return "reduce_batch";
        case AdvisoryKind::adjust_model: return "adjust_model";
        case AdvisoryKind::caveat: return "caveat";
    }
    return "?";
}

std::vector<std::int64_t> default_batch_candidates(const AlgorithmCatalog& catalog) {
    std::vector<std::int64_t> out;
    for (std::int64_t b : {32, 64, 128, 256, 512})
        if (catalog.has_batch_size(b)) out.push_back(b);
    return out;
}

namespace {

BatchCandidateResult evaluate_candidate(const NetworkSpec& network,
                                        const AlgorithmCatalog& catalog,
                                        std::int64_t gpu_total_bits, std::int64_t dataset_size,
                                        std::int64_t batch) {
    BatchCandidateResult r;
    r.batch_size = batch;
    r.breakdown = memory_bound(gpu_total_bits, network, batch);

    LayerOptions options = catalog_options(catalog, batch);
    r.solve = solve_selection(options, r.breakdown.bound);
    if (!r.solve.feasible()) return r;

    const Selection& sel = *r.solve.selection;
    std::int64_t batches_per_epoch = (dataset_size + batch - 1) / batch;
    r.epoch_time_seconds = static_cast<double>(batches_per_epoch) * sel.total_time;
    r.throughput = static_cast<double>(batch) / sel.total_time;

    for (std::size_t i = 0; i < options.size(); ++i) {
        int layer = static_cast<int>(i) + 1;
        double fastest = options[i].front().time_seconds;  // sorted by time
        double picked = catalog.query(layer, sel.assignment.at(layer), batch)->time_seconds;
        if (picked > fastest) r.memory_limited_layers.push_back(layer);
    }
    return r;
}

}  // namespace

BatchPlan plan_batch_size(const NetworkSpec& network, const AlgorithmCatalog& catalog,
                          std::int64_t gpu_total_bits, std::int64_t dataset_size,
                          const std::vector<std::int64_t>& candidates) {
    if (candidates.empty())
        throw DomainError("candidate batch-size list must not be empty");
    if (dataset_size < 1)
        throw DomainError("dataset size must be >= 1");
    for (std::int64_t b : candidates)
        if (!catalog.has_batch_size(b))
            throw CandidateNotInCatalogError("batch size " + std::to_string(b) +
                                             " is not declared in the catalog");
    if (catalog.layer_count() != network.convolution_layer_count())
        throw IncompleteCatalogError(
            "catalog profiles " + std::to_string(catalog.layer_count()) +
            " convolution layers but the network has " +
            std::to_string(network.convolution_layer_count()));

    BatchPlan plan;
    plan.candidates.resize(candidates.size());

    // Candidates are independent; fan out and merge back in input order.
    std::vector<std::future<BatchCandidateResult>> jobs;
    jobs.reserve(candidates.size());
    for (std::int64_t b : candidates)
        jobs.push_back(std::async(std::launch::async, evaluate_candidate, std::cref(network),
                                  std::cref(catalog), gpu_total_bits, dataset_size, b));
    for (std::size_t i = 0; i < jobs.size(); ++i) plan.candidates[i] = jobs[i].get();

    for (const BatchCandidateResult& r : plan.candidates) {
        if (!r.epoch_time_seconds) continue;
        if (!plan.recommended) {
            plan.recommended = r.batch_size;
            continue;
        }
        auto current = std::find_if(plan.candidates.begin(), plan.candidates.end(),
                                    [&](const auto& c) { return c.batch_size == *plan.recommended; });
        double best_epoch = *current->epoch_time_seconds;
        if (*r.epoch_time_seconds < best_epoch ||
            (*r.epoch_time_seconds == best_epoch && r.batch_size > *plan.recommended))
            plan.recommended = r.batch_size;
    }

    plan.advisories = advise_refinement(plan, network);
    return plan;
}

std::vector<Advisory> advise_refinement(const BatchPlan& plan, const NetworkSpec& network) {
    (void)network;  // advice is derivable from the sweep alone today
    std::vector<Advisory> advice;

    if (!plan.recommended) {
        std::int64_t smallest = 0;
        for (const auto& c : plan.candidates)
            smallest = smallest == 0 ? c.batch_size : std::min(smallest, c.batch_size);
        advice.push_back({AdvisoryKind::reduce_batch,
                          "no candidate mini-batch fits in GPU memory; profile and sweep "
                          "batch sizes below " + std::to_string(smallest),
                          {}});
    } else {
        const BatchCandidateResult* picked = nullptr;
        for (const auto& c : plan.candidates)
            if (c.batch_size == *plan.recommended) picked = &c;

        for (const auto& c : plan.candidates) {
            if (c.batch_size < picked->batch_size && c.throughput && picked->throughput &&
                *c.throughput > *picked->throughput) {
                advice.push_back(
                    {AdvisoryKind::reduce_batch,
                     "batch " + std::to_string(c.batch_size) + " sustains higher throughput "
                     "than the recommended " + std::to_string(picked->batch_size) +
                     "; consider reducing the mini-batch size",
                     {}});
                break;
            }
        }

        if (!picked->memory_limited_layers.empty()) {
            std::string msg = "memory budget forced slower algorithms at batch " +
                              std::to_string(picked->batch_size) +
                              "; freeing memory (larger strides, leaner filters) on the "
                              "listed layers would unlock the faster ones";
            advice.push_back(
                {AdvisoryKind::adjust_model, std::move(msg), picked->memory_limited_layers});
        }
    }

    advice.push_back({AdvisoryKind::caveat,
                      "classifier memory uses a fixed per-junction bias charge and "
                      "batch-independent activations; treat classifier totals as approximate",
                      {}});
    return advice;
}

std::vector<std::string> model_caveats() {
    return {
        "classifier memory uses a fixed per-junction bias charge and batch-independent "
        "activations; treat classifier totals as approximate",
        "candidates are ranked by estimated epoch time only; convergence quality is assumed "
        "equivalent across the swept mini-batch sizes",
        "parameter-server sizing ignores server-side update compute; network transfer is "
        "assumed to dominate",
        "the overhead ratio is treated as a constant; real overheads fluctuate run to run",
    };
}

}  // namespace traincap
