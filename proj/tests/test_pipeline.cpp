#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "hsifc/errors.hpp"
#include "hsifc/pipeline.hpp"
#include "hsifc/rng.hpp"
#include "test_support.hpp"

using namespace hsifc;

namespace {

PipelineConfig toy_config() {
    PipelineConfig cfg;
    cfg.hidden_sizes = {16, 16};
    cfg.train.epochs = 20;
    cfg.train.batch_size = 64;
    cfg.seed = 7;
    return cfg;
}

bool same_parameters(const Network& a, const Network& b) {
    auto eq = [](const auto& x, const auto& y) { return (x.array() == y.array()).all(); };
    if (a.blocks.size() != b.blocks.size()) return false;
    for (std::size_t i = 0; i < a.blocks.size(); ++i) {
        if (!eq(a.blocks[i].weight, b.blocks[i].weight)) return false;
        if (!eq(a.blocks[i].running_mean, b.blocks[i].running_mean)) return false;
        if (!eq(a.blocks[i].running_var, b.blocks[i].running_var)) return false;
    }
    return eq(a.out_weight, b.out_weight) && eq(a.out_bias, b.out_bias);
}

}  // namespace

TEST_CASE("pipeline learns a separable toy scene without leakage") {
    PixelDataset ds = test_support::gaussian_toy(4, 3, 200, 4.0, 1);
    PipelineConfig cfg = toy_config();
    PipelineResult res = run_pipeline(ds, cfg);

    // ceil(0.2 * 200) = 40 test records per class
    CHECK_EQ(res.test_size, 120);
    CHECK_EQ(res.train_size_before_balance, 480);
    CHECK_EQ(res.train_size_after_balance, 480);
    CHECK_EQ(res.leakage, 0);
    CHECK(res.metrics.oa >= 99.0);
    CHECK(res.metrics.aa >= 99.0);
    CHECK(res.selected_bands.empty());
    CHECK_EQ(res.test_truths.size(), 120u);
    CHECK_EQ(res.test_preds.size(), 120u);
    CHECK_EQ(res.test_pixel_indices.size(), 120u);
    CHECK(res.net.mode == Mode::inference);
    CHECK_EQ(res.stats.bands(), 4);
    CHECK_EQ(res.train_report.epoch_losses.size(), 20u);

    // test pixels never appear in more than one class slot
    std::vector<std::int64_t> sorted = res.test_pixel_indices;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
}

TEST_CASE("balancing duplicates training records when classes are uneven") {
    PixelDataset full = test_support::gaussian_toy(4, 3, 120, 3.0, 3);
    PixelDataset uneven;
    uneven.bands = full.bands;
    uneven.num_classes = full.num_classes;
    for (std::size_t i = 0; i < full.size(); ++i) {
        if (full.labels[i] == 2 && full.pixel_indices[i] % 3 != 0) continue;
        uneven.append(full.signature(i), full.labels[i], full.pixel_indices[i]);
    }

    PipelineConfig cfg = toy_config();
    PipelineResult res = run_pipeline(uneven, cfg);
    CHECK(res.train_size_after_balance > res.train_size_before_balance);
    CHECK_EQ(res.leakage, 0);
    CHECK_EQ(res.train_size_after_balance % 3, 0);

    PipelineConfig off = cfg;
    off.balance = false;
    PipelineResult raw = run_pipeline(uneven, off);
    CHECK_EQ(raw.train_size_after_balance, raw.train_size_before_balance);
}

TEST_CASE("pre-split balancing leaks and requires the acknowledgment") {
    PixelDataset full = test_support::gaussian_toy(3, 2, 90, 3.0, 5);
    PixelDataset uneven;
    uneven.bands = full.bands;
    uneven.num_classes = full.num_classes;
    for (std::size_t i = 0; i < full.size(); ++i) {
        if (full.labels[i] == 2 && full.pixel_indices[i] % 2 != 0) continue;
        uneven.append(full.signature(i), full.labels[i], full.pixel_indices[i]);
    }

    PipelineConfig cfg = toy_config();
    cfg.balance_order = BalanceOrder::pre_split_unsafe;
    CHECK_THROWS_AS(run_pipeline(uneven, cfg), ConfigError);

    cfg.acknowledge_leakage = true;
    PipelineResult res = run_pipeline(uneven, cfg);
    CHECK(res.leakage > 0);

    cfg.balance = false;
    CHECK_THROWS_AS(run_pipeline(uneven, cfg), ConfigError);
}

TEST_CASE("pipeline configuration validation") {
    PixelDataset ds = test_support::gaussian_toy(4, 2, 40, 2.0, 9);
    PipelineConfig cfg = toy_config();
    cfg.train.batch_size = 16;

    SUBCASE("band_k and band_list are exclusive") {
        cfg.band_k = 2;
        cfg.band_list = {0, 1};
        CHECK_THROWS_AS(run_pipeline(ds, cfg), ConfigError);
    }
    SUBCASE("band_k above the band count") {
        cfg.band_k = 5;
        CHECK_THROWS_AS(run_pipeline(ds, cfg), ConfigError);
    }
    SUBCASE("negative band_k") {
        cfg.band_k = -1;
        CHECK_THROWS_AS(run_pipeline(ds, cfg), ConfigError);
    }
    SUBCASE("empty hidden sizes") {
        cfg.hidden_sizes.clear();
        CHECK_THROWS_AS(run_pipeline(ds, cfg), ConfigError);
    }
    SUBCASE("test_fraction bounds") {
        cfg.test_fraction = 1.0;
        CHECK_THROWS_AS(run_pipeline(ds, cfg), ConfigError);
    }
    SUBCASE("empty dataset") {
        CHECK_THROWS_AS(run_pipeline(PixelDataset{}, cfg), InvalidArgument);
    }
}

TEST_CASE("pipeline runs are bit-reproducible per seed") {
    PixelDataset ds = test_support::gaussian_toy(4, 3, 80, 3.0, 11);
    PipelineConfig cfg = toy_config();
    cfg.train.epochs = 8;
    cfg.train.batch_size = 32;

    PipelineResult a = run_pipeline(ds, cfg);
    PipelineResult b = run_pipeline(ds, cfg);
    CHECK(a.test_pixel_indices == b.test_pixel_indices);
    CHECK(a.test_preds == b.test_preds);
    CHECK_EQ(a.metrics.oa, b.metrics.oa);
    CHECK(same_parameters(a.net, b.net));
    CHECK(a.train_report.epoch_losses == b.train_report.epoch_losses);

    PipelineConfig other = cfg;
    other.seed = 8;
    PipelineResult c = run_pipeline(ds, other);
    CHECK(a.test_pixel_indices != c.test_pixel_indices);
}

TEST_CASE("band_k restricts training to the greedy selection") {
    PixelDataset ds = test_support::single_informative_band(6, 4, 150, 13);
    PipelineConfig cfg = toy_config();
    cfg.train.epochs = 30;
    cfg.band_k = 1;
    PipelineResult res = run_pipeline(ds, cfg);
    CHECK(res.selected_bands == std::vector<int>{4});
    CHECK_EQ(res.stats.bands(), 1);
    CHECK_EQ(res.net.spec.input_size, 1);
    CHECK(res.metrics.oa >= 95.0);
}

TEST_CASE("an explicit band list bypasses selection") {
    PixelDataset ds = test_support::gaussian_toy(5, 2, 60, 3.0, 15);
    PipelineConfig cfg = toy_config();
    cfg.train.epochs = 10;
    cfg.train.batch_size = 32;
    cfg.band_list = {3, 1};
    PipelineResult res = run_pipeline(ds, cfg);
    CHECK(res.selected_bands == std::vector<int>{3, 1});
    CHECK_EQ(res.net.spec.input_size, 2);

    cfg.band_list = {9};
    CHECK_THROWS_AS(run_pipeline(ds, cfg), Error);
}

TEST_CASE("experiments sweep seeds deterministically") {
    PixelDataset ds = test_support::gaussian_toy(4, 3, 100, 4.0, 17);
    PipelineConfig cfg = toy_config();
    cfg.train.epochs = 25;
    cfg.train.batch_size = 32;

    ExperimentSummary s = run_experiments(ds, cfg, 3, 40);
    CHECK_EQ(s.repeats, 3);
    CHECK(s.seeds == std::vector<std::uint64_t>{40, 41, 42});
    CHECK_EQ(s.oa.size(), 3u);
    CHECK_EQ(s.aa.size(), 3u);
    for (double v : s.oa) CHECK(v >= 99.0);
    CHECK(s.oa_std < 2.0);
    CHECK(s.oa_mean == doctest::Approx((s.oa[0] + s.oa[1] + s.oa[2]) / 3.0).epsilon(1e-12));

    ExperimentSummary again = run_experiments(ds, cfg, 3, 40);
    CHECK(s.oa == again.oa);
    CHECK(s.aa == again.aa);

    ExperimentSummary one = run_experiments(ds, cfg, 1, 40);
    CHECK_EQ(one.oa_std, 0.0);
    CHECK_EQ(one.oa_mean, one.oa[0]);
    CHECK_EQ(one.oa[0], s.oa[0]);

    CHECK_THROWS_AS(run_experiments(ds, cfg, 0, 40), ConfigError);
}

TEST_CASE("each pipeline stage draws an independent derived seed") {
    CHECK(derive_seed(7, seed_stream::split) != derive_seed(7, seed_stream::balance));
    CHECK(derive_seed(7, seed_stream::init) != derive_seed(7, seed_stream::shuffle));
    CHECK(derive_seed(7, seed_stream::split) != derive_seed(8, seed_stream::split));
    CHECK_EQ(derive_seed(7, seed_stream::split), derive_seed(7, seed_stream::split));
}
