#include "hsifc/pipeline.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "hsifc/band_select.hpp"
#include "hsifc/errors.hpp"
#include "hsifc/rng.hpp"
#include "hsifc/sampling.hpp"

namespace hsifc {

namespace {

void validate(const PixelDataset& ds, const PipelineConfig& cfg) {
    if (ds.size() == 0) throw InvalidArgument("empty dataset");
    if (!(cfg.test_fraction > 0.0 && cfg.test_fraction < 1.0)) {
        throw ConfigError("test_fraction must lie strictly between 0 and 1");
    }
    if (cfg.balance_order == BalanceOrder::pre_split_unsafe) {
        if (!cfg.acknowledge_leakage) {
            throw ConfigError(
                "balance_order pre_split_unsafe leaks training pixels into the test set; "
                "it requires the explicit leakage acknowledgment");
        }
        if (!cfg.balance) {
            throw ConfigError("balance_order pre_split_unsafe is meaningless with balancing off");
        }
    }
    if (cfg.band_k > 0 && !cfg.band_list.empty()) {
        throw ConfigError("band_k and band_list are mutually exclusive");
    }
    if (cfg.band_k < 0) throw ConfigError("band_k must be >= 0");
    if (cfg.band_k > ds.bands) {
        throw ConfigError("band_k " + std::to_string(cfg.band_k) + " exceeds the " +
                          std::to_string(ds.bands) + " available bands");
    }
    if (cfg.hidden_sizes.empty()) throw ConfigError("hidden_sizes must not be empty");
}

}  // namespace

PipelineResult run_pipeline(const PixelDataset& ds, const PipelineConfig& cfg) {
    validate(ds, cfg);

    const auto split_seed = derive_seed(cfg.seed, seed_stream::split);
    const auto balance_seed = derive_seed(cfg.seed, seed_stream::balance);
    const auto init_seed = derive_seed(cfg.seed, seed_stream::init);
    const auto shuffle_seed = derive_seed(cfg.seed, seed_stream::shuffle);

    PipelineResult result;

    const bool pre_split = cfg.balance && cfg.balance_order == BalanceOrder::pre_split_unsafe;
    SplitResult split = pre_split
                            ? stratified_split(balance_by_duplication(ds, balance_seed),
                                               cfg.test_fraction, split_seed)
                            : stratified_split(ds, cfg.test_fraction, split_seed);

    if (cfg.band_k > 0) {
        // selection sees the standardized pre-balance training partition only
        BandStats select_stats = fit_band_stats(split.train);
        PixelDataset select_view = apply_standardization(split.train, select_stats);
        result.selected_bands = greedy_band_selection(select_view, cfg.band_k);
    } else if (!cfg.band_list.empty()) {
        result.selected_bands = cfg.band_list;
    }
    if (!result.selected_bands.empty()) {
        split.train = project_bands(split.train, result.selected_bands);
        split.test = project_bands(split.test, result.selected_bands);
    }

    result.train_size_before_balance = static_cast<std::int64_t>(split.train.size());
    PixelDataset train_set = (cfg.balance && !pre_split)
                                 ? balance_by_duplication(split.train, balance_seed)
                                 : std::move(split.train);
    result.train_size_after_balance = static_cast<std::int64_t>(train_set.size());
    result.test_size = static_cast<std::int64_t>(split.test.size());
    result.leakage = leakage_overlap(train_set, split.test);

    result.stats = fit_band_stats(train_set);
    const PixelDataset train_std = apply_standardization(train_set, result.stats);
    const PixelDataset test_std = apply_standardization(split.test, result.stats);

    NetworkSpec spec;
    spec.input_size = train_std.bands;
    spec.hidden_sizes = cfg.hidden_sizes;
    spec.output_size = ds.num_classes;
    spec.bn_epsilon = cfg.bn_epsilon;
    spec.bn_momentum = cfg.bn_momentum;
    result.net = init_network<float>(spec, init_seed);

    TrainConfig tc = cfg.train;
    tc.shuffle_seed = shuffle_seed;
    result.train_report = train(result.net, train_std, tc);

    result.test_preds = predict(result.net, test_std);
    result.test_truths = split.test.labels;
    result.test_pixel_indices = split.test.pixel_indices;
    result.metrics = compute_metrics(result.test_truths, result.test_preds, ds.num_classes);
    return result;
}

ExperimentSummary run_experiments(const PixelDataset& ds, const PipelineConfig& cfg, int repeats,
                                  std::uint64_t base_seed) {
    if (repeats < 1) throw ConfigError("repeats must be >= 1");

    ExperimentSummary summary;
    summary.repeats = repeats;
    for (int r = 0; r < repeats; ++r) {
        PipelineConfig run_cfg = cfg;
        run_cfg.seed = base_seed + static_cast<std::uint64_t>(r);
        try {
            PipelineResult result = run_pipeline(ds, run_cfg);
            summary.seeds.push_back(run_cfg.seed);
            summary.oa.push_back(result.metrics.oa);
            summary.aa.push_back(result.metrics.aa);
        } catch (const ConfigError& e) {
            throw ConfigError("repeat " + std::to_string(r) + ": " + e.what());
        } catch (const std::exception& e) {
            throw Error("repeat " + std::to_string(r) + ": " + e.what());
        }
    }

    auto mean_std = [](const std::vector<double>& xs) {
        const double n = static_cast<double>(xs.size());
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= n;
        double var = 0.0;
        for (double x : xs) var += (x - mean) * (x - mean);
        return std::pair<double, double>{mean, std::sqrt(var / n)};
    };
    std::tie(summary.oa_mean, summary.oa_std) = mean_std(summary.oa);
    std::tie(summary.aa_mean, summary.aa_std) = mean_std(summary.aa);
    return summary;
}

}  // namespace hsifc
