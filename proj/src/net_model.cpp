#include "traincap/net_model.hpp"

#include <algorithm>

namespace traincap {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw OverflowError("integer overflow in shape arithmetic");
    return out;
}

// Floor division; C++ '/' truncates toward zero, which differs for
// negative numerators (possible when a filter exceeds the padded input).
std::int64_t floor_div(std::int64_t num, std::int64_t den) {
    std::int64_t q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
    return q;
}

}  // namespace

std::int64_t TensorShape::elements() const {
    return checked_mul(checked_mul(width, height), depth);
}

int NetworkSpec::convolution_layer_count() const {
    return static_cast<int>(std::count_if(
        feature_layers.begin(), feature_layers.end(),
        [](const FeatureLayerSpec& l) { return l.kind == LayerKind::convolution; }));
}

std::vector<Violation> validate_network(const NetworkSpec& network) {
    std::vector<Violation> report;
    auto add = [&report](int layer_id, std::string msg) {
        report.push_back({layer_id, std::move(msg)});
    };

    if (network.input_shape.width < 1 || network.input_shape.height < 1 ||
        network.input_shape.depth < 1)
        add(0, "input shape components must all be >= 1");
    if (network.feature_layers.empty())
        add(0, "network needs at least one feature-extraction layer");
    if (network.classifier_layers.empty())
        add(0, "network needs at least one classifier layer");

    for (const FeatureLayerSpec& l : network.feature_layers) {
        if (l.filter_size < 1)
            add(l.layer_id, "filter size must be >= 1");
        if (l.stride < 1)
            add(l.layer_id, "stride must be >= 1");
        if (l.padding < 0)
            add(l.layer_id, "padding must be >= 0");
        if (l.kind == LayerKind::pooling && l.filter_count != 0)
            add(l.layer_id, "pooling layer must have filter count 0");
        if (l.kind == LayerKind::convolution && l.filter_count < 1)
            add(l.layer_id, "convolution layer must have filter count >= 1");
    }
    for (const ClassifierLayerSpec& l : network.classifier_layers) {
        if (l.neuron_count < 1)
            add(l.layer_id, "classifier layer must have neuron count >= 1");
    }

    // Shape collapse is only meaningful once per-layer fields are sane.
    if (report.empty()) {
        try {
            propagate_shapes(network);
        } catch (const NonPositiveShapeError& e) {
            add(e.layer_id(), e.what());
        } catch (const OverflowError& e) {
            add(0, e.what());
        }
    }
    return report;
}

std::vector<TensorShape> propagate_shapes(const NetworkSpec& network) {
    std::vector<TensorShape> shapes;
    shapes.reserve(network.feature_layers.size() + 1);
    shapes.push_back(network.input_shape);

    for (const FeatureLayerSpec& l : network.feature_layers) {
        const TensorShape& in = shapes.back();
        TensorShape out;
        out.width = floor_div(in.width - l.filter_size + 2 * l.padding, l.stride) + 1;
        out.height = floor_div(in.height - l.filter_size + 2 * l.padding, l.stride) + 1;
        out.depth = l.kind == LayerKind::convolution ? l.filter_count : in.depth;
        if (out.width < 1 || out.height < 1)
            throw NonPositiveShapeError(
                "layer " + std::to_string(l.layer_id) +
                    ": filter exceeds padded input, output shape collapses",
                l.layer_id);
        shapes.push_back(out);
    }
    return shapes;
}

}  // namespace traincap
