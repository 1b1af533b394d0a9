#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "traincap/errors.hpp"

namespace traincap {

/// Short algorithm token such as "gemm", "fft", "winograd".
using AlgorithmId = std::string;

/// One profiled measurement: running `algorithm` on convolution layer
/// `layer_id` at `batch_size` costs `time_seconds` and `memory_bits` of
/// workspace.
struct CostEntry {
    int layer_id = 0;  // 1..q over the network's convolution layers
    AlgorithmId algorithm;
    std::int64_t batch_size = 0;
    double time_seconds = 0.0;
    std::int64_t memory_bits = 0;

    friend bool operator==(const CostEntry&, const CostEntry&) = default;
};

enum class CatalogFormat { csv, json };

/// Validated, immutable set of profiled convolution costs.
///
/// Invariants enforced at construction:
///   - keys (layer_id, algorithm, batch_size) are unique,
///   - layer ids form a contiguous range 1..q,
///   - every (layer, declared batch size) pair has at least one algorithm.
class AlgorithmCatalog {
public:
    /// Validates and indexes `entries`. Throws DuplicateKeyError or
    /// IncompleteCatalogError; `source_lines`, when given, maps each entry
    /// to its input line for error messages.
    explicit AlgorithmCatalog(std::vector<CostEntry> entries,
                              const std::vector<std::size_t>* source_lines = nullptr);

    int layer_count() const noexcept { return layer_count_; }
    const std::vector<std::int64_t>& declared_batch_sizes() const noexcept {
        return batch_sizes_;
    }
    /// Distinct algorithm names, sorted.
    const std::vector<AlgorithmId>& algorithms() const noexcept { return algorithms_; }
    /// All entries, sorted by (layer_id, batch_size, algorithm).
    const std::vector<CostEntry>& entries() const noexcept { return entries_; }

    bool has_batch_size(std::int64_t batch_size) const;

    /// Exact-key lookup; nullopt means the algorithm is unavailable for
    /// that layer/batch and must not be selected.
    std::optional<CostEntry> query(int layer_id, const AlgorithmId& algorithm,
                                   std::int64_t batch_size) const;

    /// Entries for one (layer, batch), sorted by (time, memory, algorithm).
    /// Empty only for undeclared batch sizes.
    std::vector<CostEntry> options(int layer_id, std::int64_t batch_size) const;

    friend bool operator==(const AlgorithmCatalog& a, const AlgorithmCatalog& b) {
        return a.entries_ == b.entries_;
    }

private:
    std::vector<CostEntry> entries_;
    std::vector<std::int64_t> batch_sizes_;
    std::vector<AlgorithmId> algorithms_;
    int layer_count_ = 0;
};

/// Parses a catalog from CSV (header `layer_id,algorithm,batch_size,
/// time_seconds,memory_bits`) or a JSON array of objects with those keys.
/// Throws ParseError with the offending line, DuplicateKeyError, or
/// IncompleteCatalogError.
AlgorithmCatalog load_catalog(std::istream& source, CatalogFormat format);
AlgorithmCatalog load_catalog_file(const std::string& path);
AlgorithmCatalog load_catalog_file(const std::string& path, CatalogFormat format);

/// Inverse of load_catalog; load(save(c)) == c.
std::string save_catalog(const AlgorithmCatalog& catalog, CatalogFormat format);

}  // namespace traincap
