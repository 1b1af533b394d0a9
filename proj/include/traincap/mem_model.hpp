#pragma once

#include <cstdint>
#include <vector>

#include "traincap/net_model.hpp"

namespace traincap {

/// Values are stored as 32-bit floats; every tensor element costs this many bits.
inline constexpr std::int64_t kValueBits = 32;

/// Each parameter is charged three times: the value itself plus gradients
/// sized at twice the parameters (per-instance and aggregated).
inline constexpr std::int64_t kGradientReplication = 3;

/// Exact per-component GPU memory account for one candidate mini-batch size.
/// All quantities are bits; bound may be negative, which means the
/// configuration does not fit before any convolution algorithm is chosen.
struct MemoryBreakdown {
    std::int64_t feature_maps = 0;  // input + all layer outputs, scales with batch
    std::int64_t model_params = 0;  // conv weights/biases + gradients
    std::int64_t classifier = 0;    // fully-connected outputs/weights/biases + gradients
    std::int64_t gpu_total = 0;
    std::int64_t bound = 0;         // gpu_total - the three terms above, signed
    std::int64_t batch_size = 0;
};

/// Memory for the input data and the outputs of every feature layer:
/// sum of B_i*H_i*D_i over the whole chain, times batch size, times 32 bits.
/// `shapes` must be propagate_shapes(network).
std::int64_t feature_map_memory(const NetworkSpec& network,
                                const std::vector<TensorShape>& shapes,
                                std::int64_t batch_size);

/// Memory for convolution weights and biases plus their gradients.
/// Pooling layers contribute nothing (filter count 0). Batch-independent.
std::int64_t model_param_memory(const NetworkSpec& network);

/// Memory for the classification part: neuron outputs, inter-layer weight
/// matrices with gradients, and a fixed per-junction bias term.
std::int64_t classifier_memory(const std::vector<ClassifierLayerSpec>& classifier_layers);

/// Composes the three terms against a GPU of `gpu_total_bits` and returns
/// the full breakdown. A negative bound is a legal result, not an error.
MemoryBreakdown memory_bound(std::int64_t gpu_total_bits, const NetworkSpec& network,
                             std::int64_t batch_size);

/// Single-copy parameter footprint in bits (weights + biases, no gradients),
/// covering both the convolution and classification parts. Used to derive a
/// default parameter-server traffic size when none is given.
std::int64_t parameter_bits(const NetworkSpec& network);

}  // namespace traincap
