#pragma once

#include <cstdint>
#include <vector>

#include "hsifc/evaluation.hpp"
#include "hsifc/hsi_data.hpp"
#include "hsifc/nn_core.hpp"

namespace hsifc {

/// pre_split_unsafe balances before splitting, which leaks duplicated
/// training pixels into the test set. It exists only to demonstrate that
/// failure mode and demands an explicit acknowledgment.
enum class BalanceOrder { post_split, pre_split_unsafe };

struct PipelineConfig {
    double test_fraction = 0.2;
    bool balance = true;
    BalanceOrder balance_order = BalanceOrder::post_split;
    bool acknowledge_leakage = false;

    std::vector<int> hidden_sizes = {250, 300, 400, 200};
    double bn_epsilon = 1e-5;
    double bn_momentum = 0.9;
    TrainConfig train;

    int band_k = 0;               // > 0: greedy-select this many bands
    std::vector<int> band_list;   // nonempty: project to these bands instead

    /// Master seed. Split, balance, init and shuffle seeds are derived from
    /// it on fixed streams; train.shuffle_seed is overridden.
    std::uint64_t seed = 0;
};

struct PipelineResult {
    MetricsReport metrics;
    Network net;
    BandStats stats;
    TrainReport train_report;

    std::vector<int> selected_bands;  // empty when no projection was applied
    std::int64_t leakage = 0;
    std::int64_t train_size_before_balance = 0;
    std::int64_t train_size_after_balance = 0;
    std::int64_t test_size = 0;

    std::vector<int> test_truths;
    std::vector<int> test_preds;
    std::vector<std::int64_t> test_pixel_indices;
};

/// Full experiment on a labeled dataset: (optional unsafe pre-split balance)
/// -> stratified split -> (optional band selection/projection) -> balance ->
/// standardize on the balanced training partition -> train -> evaluate.
PipelineResult run_pipeline(const PixelDataset& ds, const PipelineConfig& cfg);

struct ExperimentSummary {
    int repeats = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<double> oa;
    std::vector<double> aa;
    double oa_mean = 0.0;
    double oa_std = 0.0;  // population standard deviation
    double aa_mean = 0.0;
    double aa_std = 0.0;
};

/// Repeat r runs the pipeline with seed = base_seed + r. Sequential and
/// deterministic; a failing repeat aborts with its index in the message.
ExperimentSummary run_experiments(const PixelDataset& ds, const PipelineConfig& cfg, int repeats,
                                  std::uint64_t base_seed);

}  // namespace hsifc
