#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "hsifc/band_select.hpp"
#include "hsifc/datasets.hpp"
#include "hsifc/hsi_data.hpp"
#include "hsifc/nn_core.hpp"
#include "hsifc/pipeline.hpp"
#include "hsifc/rng.hpp"
#include "hsifc/sampling.hpp"

namespace {

using hsifc::MatX;
using hsifc::PixelDataset;

// random dataset with the registry's Indian Pines class distribution so the
// split/balance benchmarks see a realistically skewed histogram
PixelDataset registry_shaped_dataset(const std::string& name, std::uint64_t seed) {
    const auto* desc = hsifc::find_dataset(name);
    hsifc::Rng rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    PixelDataset ds;
    ds.bands = desc->bands;
    ds.num_classes = static_cast<int>(desc->class_counts.size());
    std::vector<float> sig(static_cast<std::size_t>(ds.bands));
    std::int64_t pixel = 0;
    for (std::size_t c = 0; c < desc->class_counts.size(); ++c) {
        for (std::int64_t r = 0; r < desc->class_counts[c]; ++r) {
            for (int b = 0; b < ds.bands; ++b) {
                sig[static_cast<std::size_t>(b)] =
                    static_cast<float>(noise(rng) + 0.1 * static_cast<double>(c));
            }
            ds.append(sig, static_cast<int>(c) + 1, pixel++);
        }
    }
    return ds;
}

hsifc::NetworkSpec indian_pines_spec() {
    const auto* desc = hsifc::find_dataset("indian_pines");
    hsifc::NetworkSpec spec;
    spec.input_size = desc->bands;
    spec.hidden_sizes = desc->hidden_sizes;
    spec.output_size = static_cast<int>(desc->class_counts.size());
    return spec;
}

MatX<float> random_batch(int rows, int cols, std::uint64_t seed) {
    hsifc::Rng rng(seed);
    std::normal_distribution<float> noise(0.0f, 1.0f);
    MatX<float> batch(rows, cols);
    for (Eigen::Index i = 0; i < batch.size(); ++i) {
        batch.data()[i] = noise(rng);
    }
    return batch;
}

std::vector<int> random_labels(int rows, int classes, std::uint64_t seed) {
    hsifc::Rng rng(seed);
    std::uniform_int_distribution<int> pick(1, classes);
    std::vector<int> labels(static_cast<std::size_t>(rows));
    for (auto& l : labels) l = pick(rng);
    return labels;
}

void bm_forward_inference(benchmark::State& state) {
    const auto spec = indian_pines_spec();
    auto net = hsifc::init_network<float>(spec, 1);
    net.mode = hsifc::Mode::inference;
    const int rows = static_cast<int>(state.range(0));
    const MatX<float> batch = random_batch(rows, spec.input_size, 2);
    for (auto _ : state) {
        auto logits = hsifc::forward_inference(net, batch);
        benchmark::DoNotOptimize(logits.data());
    }
    state.SetItemsProcessed(state.iterations() * rows);
}
BENCHMARK(bm_forward_inference)->Arg(64)->Arg(256)->Arg(1024);

void bm_train_step(benchmark::State& state) {
    const auto spec = indian_pines_spec();
    auto net = hsifc::init_network<float>(spec, 3);
    auto opt = hsifc::make_optimizer_state(net);
    hsifc::TrainConfig cfg;
    const int rows = static_cast<int>(state.range(0));
    const MatX<float> batch = random_batch(rows, spec.input_size, 4);
    const auto labels = random_labels(rows, spec.output_size, 5);
    for (auto _ : state) {
        auto [loss, grads] = hsifc::loss_and_gradients(net, batch, labels);
        hsifc::adam_step(net, grads, opt, cfg);
        benchmark::DoNotOptimize(loss);
    }
    state.SetItemsProcessed(state.iterations() * rows);
}
BENCHMARK(bm_train_step)->Arg(64)->Arg(256);

void bm_scatter_summary(benchmark::State& state) {
    const PixelDataset ds = registry_shaped_dataset("indian_pines", 6);
    for (auto _ : state) {
        auto summary = hsifc::scatter_summary(ds);
        benchmark::DoNotOptimize(summary.within.data());
    }
    state.SetItemsProcessed(state.iterations() * ds.size());
}
BENCHMARK(bm_scatter_summary);

void bm_greedy_band_selection(benchmark::State& state) {
    const PixelDataset ds = registry_shaped_dataset("indian_pines", 7);
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto bands = hsifc::greedy_band_selection(ds, k);
        benchmark::DoNotOptimize(bands.data());
    }
}
BENCHMARK(bm_greedy_band_selection)->Arg(10)->Arg(30);

void bm_stratified_split(benchmark::State& state) {
    const PixelDataset ds = registry_shaped_dataset("indian_pines", 8);
    for (auto _ : state) {
        auto split = hsifc::stratified_split(ds, 0.2, 9);
        benchmark::DoNotOptimize(split.train.size());
    }
    state.SetItemsProcessed(state.iterations() * ds.size());
}
BENCHMARK(bm_stratified_split);

void bm_balance_by_duplication(benchmark::State& state) {
    const PixelDataset ds = registry_shaped_dataset("indian_pines", 10);
    const auto split = hsifc::stratified_split(ds, 0.2, 11);
    for (auto _ : state) {
        auto balanced = hsifc::balance_by_duplication(split.train, 12);
        benchmark::DoNotOptimize(balanced.size());
    }
}
BENCHMARK(bm_balance_by_duplication);

void bm_standardize(benchmark::State& state) {
    const PixelDataset ds = registry_shaped_dataset("indian_pines", 13);
    const auto stats = hsifc::fit_band_stats(ds);
    for (auto _ : state) {
        auto out = hsifc::apply_standardization(ds, stats);
        benchmark::DoNotOptimize(out.size());
    }
    state.SetItemsProcessed(state.iterations() * ds.size());
}
BENCHMARK(bm_standardize);

}  // namespace

BENCHMARK_MAIN();
