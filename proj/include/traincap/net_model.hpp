#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "traincap/errors.hpp"

namespace traincap {

/// Width x height x depth of one activation tensor, in pixels/channels.
struct TensorShape {
    std::int64_t width = 0;
    std::int64_t height = 0;
    std::int64_t depth = 0;

    std::int64_t elements() const;  // width*height*depth, overflow-checked

    friend bool operator==(const TensorShape&, const TensorShape&) = default;
};

enum class LayerKind { convolution, pooling };

/// One layer of the feature-extraction chain (convolution or pooling).
/// Pooling layers carry filter_count = 0 and preserve depth.
struct FeatureLayerSpec {
    LayerKind kind = LayerKind::convolution;
    std::int64_t filter_size = 0;   // spatial extent F
    std::int64_t stride = 0;        // S
    std::int64_t padding = 0;       // P
    std::int64_t filter_count = 0;  // K; 0 for pooling
    int layer_id = 0;               // 1..n in chain order
};

/// One fully-connected layer of the classification part.
struct ClassifierLayerSpec {
    std::int64_t neuron_count = 0;  // L
    int layer_id = 0;               // 1..m
};

/// A linear chain: input -> n feature layers -> m fully-connected layers.
struct NetworkSpec {
    TensorShape input_shape;
    std::vector<FeatureLayerSpec> feature_layers;
    std::vector<ClassifierLayerSpec> classifier_layers;

    /// Number of convolution layers (the layers a cost catalog indexes).
    int convolution_layer_count() const;
};

/// One invariant breach found by validate_network. layer_id 0 refers to
/// the network as a whole (or its input shape).
struct Violation {
    int layer_id = 0;
    std::string message;
};

/// Checks every structural invariant and returns all breaches; an empty
/// report means the network is valid. Never throws on bad data.
std::vector<Violation> validate_network(const NetworkSpec& network);

/// Propagates the input shape through the feature-extraction chain.
/// Returns n+1 shapes; index 0 is the input. Spatial sizes follow
/// floor((B - F + 2P)/S) + 1; depth becomes K for convolutions and is
/// preserved by pooling.
///
/// Throws NonPositiveShapeError if any width/height lands below 1.
std::vector<TensorShape> propagate_shapes(const NetworkSpec& network);

}  // namespace traincap
