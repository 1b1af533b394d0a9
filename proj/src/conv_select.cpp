#include "traincap/conv_select.hpp"

#include <algorithm>
#include <string>

namespace traincap {

namespace {

// Complete assignments compare by time, then memory, then the algorithm-name
// sequence in layer order. Strict weak order; the minimum is the canonical
// optimum both solvers must return.
struct Candidate {
    double time = 0.0;
    std::int64_t memory = 0;
    std::vector<const CostEntry*> picks;
};

bool improves(double time, std::int64_t memory, const std::vector<const CostEntry*>& picks,
              const std::optional<Candidate>& best) {
    if (!best) return true;
    if (time != best->time) return time < best->time;
    if (memory != best->memory) return memory < best->memory;
    for (std::size_t i = 0; i < picks.size(); ++i) {
        int cmp = picks[i]->algorithm.compare(best->picks[i]->algorithm);
        if (cmp != 0) return cmp < 0;
    }
    return false;
}

// Relative slack for the time lower bound: the bound sums in a different
// association order than leaf sums, so equality can be off by a few ulps.
// The slack only widens the search, never changes the answer.
constexpr double kTimeSlack = 1e-12;

Selection to_selection(const Candidate& c, std::size_t layer_count) {
    Selection s;
    s.total_time = c.time;
    s.total_memory = c.memory;
    for (std::size_t i = 0; i < layer_count; ++i)
        s.assignment.emplace(static_cast<int>(i) + 1, c.picks[i]->algorithm);
    return s;
}

std::int64_t min_memory_total(const LayerOptions& options) {
    std::int64_t total = 0;
    for (const auto& layer : options) {
        std::int64_t best = layer.front().memory_bits;
        for (const CostEntry& e : layer) best = std::min(best, e.memory_bits);
        total += best;
    }
    return total;
}

void check_options(const LayerOptions& options) {
    for (std::size_t i = 0; i < options.size(); ++i)
        if (options[i].empty())
            throw IncompleteCatalogError("layer " + std::to_string(i + 1) +
                                         " has no algorithm options");
}

// Both solvers iterate options in (time, memory, name) order so that a given
// assignment accumulates its totals identically in either one.
LayerOptions normalized(const LayerOptions& options) {
    LayerOptions out = options;
    for (auto& layer : out)
        std::sort(layer.begin(), layer.end(), [](const CostEntry& a, const CostEntry& b) {
            if (a.time_seconds != b.time_seconds) return a.time_seconds < b.time_seconds;
            if (a.memory_bits != b.memory_bits) return a.memory_bits < b.memory_bits;
            return a.algorithm < b.algorithm;
        });
    return out;
}

// Both solvers accumulate leaf times as ((e_1 + e_2) + ...) in layer order,
// so a given assignment yields the bit-identical total in either one.
class BranchAndBound {
public:
    explicit BranchAndBound(const LayerOptions& raw, std::int64_t bound) : bound_(bound) {
        // Per layer, drop options dominated in both time and memory; among
        // exact (time, memory) duplicates only the smallest name can appear
        // in the canonical optimum. Input is sorted by (time, memory, name).
        pruned_.resize(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            std::int64_t best_mem = -1;
            for (const CostEntry& e : raw[i]) {
                if (best_mem < 0 || e.memory_bits < best_mem) {
                    pruned_[i].push_back(&e);
                    best_mem = e.memory_bits;
                }
            }
        }

        const std::size_t q = pruned_.size();
        suffix_min_time_.assign(q + 1, 0.0);
        suffix_min_mem_.assign(q + 1, 0);
        for (std::size_t i = q; i-- > 0;) {
            double t = pruned_[i].front()->time_seconds;
            std::int64_t m = pruned_[i].front()->memory_bits;
            for (const CostEntry* e : pruned_[i]) {
                t = std::min(t, e->time_seconds);
                m = std::min(m, e->memory_bits);
            }
            suffix_min_time_[i] = suffix_min_time_[i + 1] + t;
            suffix_min_mem_[i] = suffix_min_mem_[i + 1] + m;
        }
    }

    std::optional<Candidate> run() {
        picks_.reserve(pruned_.size());
        descend(0, 0.0, 0);
        return best_;
    }

private:
    void descend(std::size_t layer, double time, std::int64_t memory) {
        if (memory + suffix_min_mem_[layer] > bound_) return;
        if (best_ && time + suffix_min_time_[layer] >
                         best_->time + kTimeSlack * (1.0 + best_->time))
            return;
        if (layer == pruned_.size()) {
            if (improves(time, memory, picks_, best_)) best_ = Candidate{time, memory, picks_};
            return;
        }
        for (const CostEntry* e : pruned_[layer]) {
            picks_.push_back(e);
            descend(layer + 1, time + e->time_seconds, memory + e->memory_bits);
            picks_.pop_back();
        }
    }

    std::vector<std::vector<const CostEntry*>> pruned_;
    std::vector<double> suffix_min_time_;
    std::vector<std::int64_t> suffix_min_mem_;
    std::int64_t bound_;
    std::vector<const CostEntry*> picks_;
    std::optional<Candidate> best_;
};

class Enumerator {
public:
    Enumerator(const LayerOptions& options, std::int64_t bound)
        : options_(options), bound_(bound) {}

    std::optional<Candidate> run() {
        picks_.reserve(options_.size());
        visit(0, 0.0, 0);
        return best_;
    }

private:
    void visit(std::size_t layer, double time, std::int64_t memory) {
        if (layer == options_.size()) {
            if (memory <= bound_ && improves(time, memory, picks_, best_))
                best_ = Candidate{time, memory, picks_};
            return;
        }
        for (const CostEntry& e : options_[layer]) {
            picks_.push_back(&e);
            visit(layer + 1, time + e.time_seconds, memory + e.memory_bits);
            picks_.pop_back();
        }
    }

    const LayerOptions& options_;
    std::int64_t bound_;
    std::vector<const CostEntry*> picks_;
    std::optional<Candidate> best_;
};

}  // namespace

LayerOptions catalog_options(const AlgorithmCatalog& catalog, std::int64_t batch_size) {
    LayerOptions options;
    options.reserve(static_cast<std::size_t>(catalog.layer_count()));
    for (int layer = 1; layer <= catalog.layer_count(); ++layer)
        options.push_back(catalog.options(layer, batch_size));
    check_options(options);
    return options;
}

SolveResult solve_selection(const LayerOptions& options, std::int64_t memory_bound) {
    check_options(options);
    LayerOptions sorted = normalized(options);
    SolveResult result;
    result.min_achievable_memory = min_memory_total(sorted);
    if (result.min_achievable_memory > memory_bound) return result;

    auto best = BranchAndBound(sorted, memory_bound).run();
    if (best) result.selection = to_selection(*best, sorted.size());
    return result;
}

SolveResult solve_selection(const AlgorithmCatalog& catalog, std::int64_t batch_size,
                            std::int64_t memory_bound) {
    return solve_selection(catalog_options(catalog, batch_size), memory_bound);
}

SolveResult brute_force_selection(const LayerOptions& options, std::int64_t memory_bound) {
    check_options(options);

    double assignments = 1.0;
    for (const auto& layer : options) assignments *= static_cast<double>(layer.size());
    if (assignments > 1e7)
        throw InstanceTooLargeError("exhaustive enumeration over " +
                                    std::to_string(assignments) + " assignments exceeds 1e7");

    LayerOptions sorted = normalized(options);
    SolveResult result;
    result.min_achievable_memory = min_memory_total(sorted);
    auto best = Enumerator(sorted, memory_bound).run();
    if (best) result.selection = to_selection(*best, sorted.size());
    return result;
}

SolveResult brute_force_selection(const AlgorithmCatalog& catalog, std::int64_t batch_size,
                                  std::int64_t memory_bound) {
    return brute_force_selection(catalog_options(catalog, batch_size), memory_bound);
}

}  // namespace traincap
