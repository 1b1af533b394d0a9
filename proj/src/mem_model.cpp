#include "traincap/mem_model.hpp"

namespace traincap {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw OverflowError("integer overflow in memory arithmetic");
    return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out))
        throw OverflowError("integer overflow in memory arithmetic");
    return out;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_sub_overflow(a, b, &out))
        throw OverflowError("integer overflow in memory arithmetic");
    return out;
}

}  // namespace

std::int64_t feature_map_memory(const NetworkSpec& network,
                                const std::vector<TensorShape>& shapes,
                                std::int64_t batch_size) {
    if (shapes.size() != network.feature_layers.size() + 1)
        throw DomainError("shapes must come from propagate_shapes on the same network");
    if (batch_size < 1)
        throw DomainError("batch size must be >= 1");

    std::int64_t elements = 0;
    for (const TensorShape& s : shapes)
        elements = checked_add(elements, s.elements());
    return checked_mul(checked_mul(elements, batch_size), kValueBits);
}

std::int64_t model_param_memory(const NetworkSpec& network) {
    std::int64_t total = 0;
    std::int64_t input_depth = network.input_shape.depth;
    for (const FeatureLayerSpec& l : network.feature_layers) {
        if (l.kind == LayerKind::convolution) {
            std::int64_t weights =
                checked_mul(checked_mul(l.filter_size, l.filter_size),
                            checked_mul(input_depth, l.filter_count));
            total = checked_add(total, checked_mul(weights, kGradientReplication * kValueBits));
            total = checked_add(total,
                                checked_mul(l.filter_count, kGradientReplication * kValueBits));
            input_depth = l.filter_count;
        }
        // pooling: filter_count = 0, no parameters, depth unchanged
    }
    return total;
}

std::int64_t classifier_memory(const std::vector<ClassifierLayerSpec>& classifier_layers) {
    const auto m = static_cast<std::int64_t>(classifier_layers.size());

    std::int64_t outputs = 0;
    for (const ClassifierLayerSpec& l : classifier_layers)
        outputs = checked_add(outputs, l.neuron_count);
    std::int64_t total = checked_mul(outputs, kValueBits);

    for (std::size_t j = 0; j + 1 < classifier_layers.size(); ++j) {
        std::int64_t weights = checked_mul(classifier_layers[j].neuron_count,
                                           classifier_layers[j + 1].neuron_count);
        total = checked_add(total, checked_mul(weights, kGradientReplication * kValueBits));
    }

    // Fixed per-junction bias charge, independent of layer widths; kept as
    // the model states it (see the planner's caveat list).
    if (m >= 1)
        total = checked_add(total, (m - 1) * kGradientReplication * kValueBits);
    return total;
}

MemoryBreakdown memory_bound(std::int64_t gpu_total_bits, const NetworkSpec& network,
                             std::int64_t batch_size) {
    MemoryBreakdown b;
    b.batch_size = batch_size;
    b.gpu_total = gpu_total_bits;
    b.feature_maps = feature_map_memory(network, propagate_shapes(network), batch_size);
    b.model_params = model_param_memory(network);
    b.classifier = classifier_memory(network.classifier_layers);
    b.bound = checked_sub(checked_sub(checked_sub(gpu_total_bits, b.feature_maps),
                                      b.model_params),
                          b.classifier);
    return b;
}

std::int64_t parameter_bits(const NetworkSpec& network) {
    std::int64_t conv = model_param_memory(network) / kGradientReplication;

    std::int64_t fc = 0;
    const auto& cls = network.classifier_layers;
    for (std::size_t j = 0; j + 1 < cls.size(); ++j)
        fc = checked_add(fc,
                         checked_mul(checked_mul(cls[j].neuron_count, cls[j + 1].neuron_count),
                                     kValueBits));
    if (!cls.empty())
        fc = checked_add(fc, (static_cast<std::int64_t>(cls.size()) - 1) * kValueBits);
    return checked_add(conv, fc);
}

}  // namespace traincap
