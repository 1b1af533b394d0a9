#pragma once

// Shared in-code fixtures and random generators for the test suites.

#include <cstdint>
#include <random>
#include <vector>

#include "traincap/catalog.hpp"
#include "traincap/conv_select.hpp"
#include "traincap/net_model.hpp"

namespace testutil {

using namespace traincap;

// The reference 5-convolution network with interleaved pooling, standard
// strides and paddings, classifier 4096-4096-1000.
inline NetworkSpec make_alexnet() {
    NetworkSpec net;
    net.input_shape = {224, 224, 3};
    net.feature_layers = {
        {LayerKind::convolution, 11, 4, 2, 96, 1}, {LayerKind::pooling, 3, 2, 0, 0, 2},
        {LayerKind::convolution, 5, 1, 2, 256, 3}, {LayerKind::pooling, 3, 2, 0, 0, 4},
        {LayerKind::convolution, 3, 1, 1, 384, 5}, {LayerKind::convolution, 3, 1, 1, 384, 6},
        {LayerKind::convolution, 3, 1, 1, 256, 7}, {LayerKind::pooling, 3, 2, 0, 0, 8},
    };
    net.classifier_layers = {{4096, 1}, {4096, 2}, {1000, 3}};
    return net;
}

// Convolution-only variant whose shape chain is exactly
// 224 -> 55 -> 27 -> 13 -> 13 -> 13 with depths 3, 96, 256, 384, 384, 256.
inline NetworkSpec make_conv_stack() {
    NetworkSpec net;
    net.input_shape = {224, 224, 3};
    net.feature_layers = {
        {LayerKind::convolution, 11, 4, 2, 96, 1}, {LayerKind::convolution, 5, 2, 1, 256, 2},
        {LayerKind::convolution, 3, 2, 0, 384, 3}, {LayerKind::convolution, 3, 1, 1, 384, 4},
        {LayerKind::convolution, 3, 1, 1, 256, 5},
    };
    net.classifier_layers = {{4096, 1}, {4096, 2}, {1000, 3}};
    return net;
}

// 4x4x1 input, one 3x3 stride-1 pad-1 convolution with 2 filters, fc 8-4.
// Feature-map memory at batch 2 is 3072 bits; parameters cost 1920 bits.
inline NetworkSpec make_toy_net() {
    NetworkSpec net;
    net.input_shape = {4, 4, 1};
    net.feature_layers = {{LayerKind::convolution, 3, 1, 1, 2, 1}};
    net.classifier_layers = {{8, 1}, {4, 2}};
    return net;
}

// Two-convolution network for sweep tests: 8x8x1 input, depths 4 and 8,
// classifier 16-4. Feature maps cost 26624 bits per sample; parameters and
// classifier together cost 39136 bits.
inline NetworkSpec make_sweep_net() {
    NetworkSpec net;
    net.input_shape = {8, 8, 1};
    net.feature_layers = {{LayerKind::convolution, 3, 1, 1, 4, 1},
                          {LayerKind::convolution, 3, 1, 1, 8, 2}};
    net.classifier_layers = {{16, 1}, {4, 2}};
    return net;
}

// Catalog exhibiting the throughput rise-then-fall: the fast algorithm's
// workspace grows cubically with the batch, so large batches fall back to
// the lean slow one. With make_sweep_net and a 20,000,000-bit GPU the
// optimum per batch is fft+fft up to 128 and gemm+gemm beyond.
inline AlgorithmCatalog make_sweep_catalog() {
    const std::int64_t batches[] = {32, 64, 128, 256, 512};
    const double gemm_time[] = {0.040, 0.070, 0.130, 0.240, 0.520};
    const double fft_time[] = {0.016, 0.029, 0.050, 0.080, 0.150};
    std::vector<CostEntry> entries;
    for (int layer = 1; layer <= 2; ++layer)
        for (int i = 0; i < 5; ++i) {
            std::int64_t b = batches[i];
            entries.push_back({layer, "gemm", b, gemm_time[i], 100 * b});
            entries.push_back({layer, "fft", b, fft_time[i], 3 * b * b * b});
        }
    return AlgorithmCatalog(std::move(entries));
}

// Random valid network: every propagated shape stays >= 1 by construction.
inline NetworkSpec random_network(std::mt19937& rng) {
    NetworkSpec net;
    std::uniform_int_distribution<int> dim(4, 64), depth(1, 8), layers(1, 6), fcs(1, 3),
        neurons(1, 100);
    net.input_shape = {dim(rng), dim(rng), depth(rng)};

    int n = layers(rng);
    std::int64_t w = net.input_shape.width, h = net.input_shape.height;
    std::int64_t d = net.input_shape.depth;
    for (int i = 1; i <= n; ++i) {
        FeatureLayerSpec l;
        l.layer_id = i;
        std::int64_t smaller = std::min(w, h);
        std::uniform_int_distribution<std::int64_t> fdist(1, std::min<std::int64_t>(smaller, 5));
        l.filter_size = fdist(rng);
        std::uniform_int_distribution<std::int64_t> sdist(1, 3), pdist(0, 2);
        l.stride = sdist(rng);
        l.padding = pdist(rng);
        bool conv = std::uniform_int_distribution<int>(0, 2)(rng) != 0;
        l.kind = conv ? LayerKind::convolution : LayerKind::pooling;
        l.filter_count = conv ? depth(rng) : 0;

        auto next = [&](std::int64_t v) {
            return (v - l.filter_size + 2 * l.padding) / l.stride + 1;
        };
        if (next(w) < 1 || next(h) < 1) {
            l.stride = 1;
            l.padding = l.filter_size / 2 + 1;  // guarantees growth
        }
        w = next(w);
        h = next(h);
        if (l.kind == LayerKind::convolution) d = l.filter_count;
        net.feature_layers.push_back(l);
    }
    (void)d;

    int m = fcs(rng);
    for (int j = 1; j <= m; ++j) net.classifier_layers.push_back({neurons(rng), j});
    return net;
}

// Random multiple-choice instance. Times come from a 0.125-step grid, so
// sums are exact in double and ties genuinely occur.
struct RandomInstance {
    LayerOptions options;
    std::int64_t bound;
};

inline RandomInstance random_mckp(std::mt19937& rng, int max_layers, int max_algorithms) {
    static const char* names[] = {"a", "b", "c", "d", "e"};
    std::uniform_int_distribution<int> qdist(1, max_layers);
    std::uniform_int_distribution<int> pdist(1, max_algorithms);
    std::uniform_int_distribution<int> tick(1, 64);
    std::uniform_int_distribution<std::int64_t> mem(0, 1000);

    RandomInstance inst;
    int q = qdist(rng);
    std::int64_t min_sum = 0, max_sum = 0;
    for (int k = 1; k <= q; ++k) {
        int p = pdist(rng);
        std::vector<CostEntry> layer;
        for (int l = 0; l < p; ++l)
            layer.push_back({k, names[l], 1, tick(rng) * 0.125, mem(rng)});
        std::int64_t lo = layer[0].memory_bits, hi = layer[0].memory_bits;
        for (const auto& e : layer) {
            lo = std::min(lo, e.memory_bits);
            hi = std::max(hi, e.memory_bits);
        }
        min_sum += lo;
        max_sum += hi;
        inst.options.push_back(std::move(layer));
    }

    switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
        case 0: inst.bound = -1; break;                 // infeasible by sign
        case 1: inst.bound = min_sum - 1; break;        // just under the floor
        case 2: inst.bound = min_sum; break;            // exactly tight
        case 3: inst.bound = max_sum; break;            // everything fits
        default:
            inst.bound = min_sum + std::uniform_int_distribution<std::int64_t>(
                                       0, std::max<std::int64_t>(1, max_sum - min_sum))(rng);
    }
    return inst;
}

}  // namespace testutil
