#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <unordered_map>

#include "hsifc/band_select.hpp"
#include "hsifc/errors.hpp"
#include "hsifc/model_io.hpp"
#include "hsifc/rng.hpp"
#include "hsifc/sampling.hpp"

namespace hsifc::cli {

namespace {

using nlohmann::json;

std::string fmt1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", round_half_up_1dp(v));
    return buf;
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out) throw Error("failed writing " + path);
}

json metrics_json(const MetricsReport& m) {
    std::vector<std::vector<std::int64_t>> rows(static_cast<std::size_t>(m.confusion.num_classes));
    for (int t = 1; t <= m.confusion.num_classes; ++t) {
        auto& row = rows[static_cast<std::size_t>(t - 1)];
        row.resize(static_cast<std::size_t>(m.confusion.num_classes));
        for (int p = 1; p <= m.confusion.num_classes; ++p) {
            row[static_cast<std::size_t>(p - 1)] = m.confusion.at(t, p);
        }
    }
    return json{
        {"oa", m.oa},
        {"aa", m.aa},
        {"oa_1dp", round_half_up_1dp(m.oa)},
        {"aa_1dp", round_half_up_1dp(m.aa)},
        {"per_class", m.per_class},
        {"confusion", rows},
    };
}

json seeds_json(std::uint64_t master) {
    return json{
        {"master", master},
        {"split", derive_seed(master, seed_stream::split)},
        {"balance", derive_seed(master, seed_stream::balance)},
        {"init", derive_seed(master, seed_stream::init)},
        {"shuffle", derive_seed(master, seed_stream::shuffle)},
    };
}

json pipeline_report(const RunConfig& cfg, const PipelineResult& res) {
    return json{
        {"config", config_echo(cfg)},
        {"seeds", seeds_json(cfg.seed)},
        {"selected_bands", res.selected_bands},
        {"leakage_overlap", res.leakage},
        {"train_size_before_balance", res.train_size_before_balance},
        {"train_size_after_balance", res.train_size_after_balance},
        {"test_size", res.test_size},
        {"metrics", metrics_json(res.metrics)},
        {"train", json{{"final_train_accuracy", res.train_report.final_train_accuracy},
                       {"epoch_losses", res.train_report.epoch_losses}}},
    };
}

}  // namespace

void cmd_info(const RunConfig& cfg) {
    if (!cfg.dataset.empty()) {
        const DatasetDescriptor& d = require_dataset(cfg.dataset);
        std::cout << d.name << "\n"
                  << "  bands: " << d.bands << "\n"
                  << "  classes: " << d.num_classes() << "\n"
                  << "  hidden layers:";
        for (int h : d.hidden_sizes) std::cout << ' ' << h;
        std::cout << "\n  reference OA/AA: " << fmt1(d.reference_oa) << " / " << fmt1(d.reference_aa)
                  << "\n  class counts:\n";
        for (int c = 0; c < d.num_classes(); ++c) {
            std::printf("    %2d  %-32s %6lld\n", c + 1, d.class_names[c].c_str(),
                        static_cast<long long>(d.class_counts[c]));
        }
        std::cout << "  total labeled: " << d.total_labeled() << "\n";
        return;
    }
    if (cfg.csv.empty() && (cfg.cube.empty() || cfg.gt.empty())) {
        throw ConfigError("info needs --dataset, --csv, or --cube with --gt");
    }
    PixelDataset ds = load_input_data(cfg, nullptr);
    std::cout << "records: " << ds.size() << "\n"
              << "bands: " << ds.bands << "\n"
              << "classes: " << ds.num_classes << "\n  class counts:\n";
    const auto counts = ds.class_counts();
    for (std::size_t c = 0; c < counts.size(); ++c) {
        std::printf("    %2zu  %6lld\n", c + 1, static_cast<long long>(counts[c]));
    }
}

void cmd_train(const RunConfig& cfg) {
    const DatasetDescriptor* desc = nullptr;
    PixelDataset ds = load_input_data(cfg, &desc);
    PipelineConfig pc = to_pipeline_config(cfg, desc);
    PipelineResult res = run_pipeline(ds, pc);

    save_model(res.net, res.stats, cfg.out_model);
    write_json(pipeline_report(cfg, res), cfg.out_report);

    std::cout << "OA " << fmt1(res.metrics.oa) << "  AA " << fmt1(res.metrics.aa) << "  ("
              << res.test_size << " test records)\n";
    if (res.leakage > 0) {
        std::cout << "warning: leakage_overlap = " << res.leakage
                  << " train/test pairs share pixels; metrics are not trustworthy\n";
    }
    std::cout << "model: " << cfg.out_model << "\nreport: " << cfg.out_report << "\n";
}

void cmd_experiment(const RunConfig& cfg) {
    const DatasetDescriptor* desc = nullptr;
    PixelDataset ds = load_input_data(cfg, &desc);
    PipelineConfig pc = to_pipeline_config(cfg, desc);
    ExperimentSummary summary = run_experiments(ds, pc, cfg.repeats, cfg.seed);

    json runs = json::array();
    for (int r = 0; r < summary.repeats; ++r) {
        runs.push_back(json{{"seed", summary.seeds[static_cast<std::size_t>(r)]},
                            {"oa", summary.oa[static_cast<std::size_t>(r)]},
                            {"aa", summary.aa[static_cast<std::size_t>(r)]}});
    }
    write_json(json{{"config", config_echo(cfg)},
                    {"repeats", summary.repeats},
                    {"base_seed", cfg.seed},
                    {"runs", runs},
                    {"oa_mean", summary.oa_mean},
                    {"oa_std", summary.oa_std},
                    {"aa_mean", summary.aa_mean},
                    {"aa_std", summary.aa_std}},
               cfg.out_report);

    std::cout << "repeats " << summary.repeats << "  OA " << fmt1(summary.oa_mean) << " +- "
              << fmt1(summary.oa_std) << "  AA " << fmt1(summary.aa_mean) << " +- "
              << fmt1(summary.aa_std) << "\nreport: " << cfg.out_report << "\n";
}

void cmd_bands(const RunConfig& cfg) {
    const DatasetDescriptor* desc = nullptr;
    PixelDataset ds = load_input_data(cfg, &desc);
    if (cfg.band_k < 1 || cfg.band_k > ds.bands) {
        throw ConfigError("--k must lie in 1.." + std::to_string(ds.bands) + ", got " +
                          std::to_string(cfg.band_k));
    }

    // same selection the training pipeline performs: split first, then score
    // only the standardized training partition
    SplitResult split =
        stratified_split(ds, cfg.test_fraction, derive_seed(cfg.seed, seed_stream::split));
    BandStats stats = fit_band_stats(split.train);
    PixelDataset view = apply_standardization(split.train, stats);
    std::vector<int> selected = greedy_band_selection(view, cfg.band_k);

    write_band_list(selected, cfg.out_bands);
    std::cout << "selected " << selected.size() << " bands:";
    for (int b : selected) std::cout << ' ' << b;
    std::cout << "\nband list: " << cfg.out_bands << "\n";

    if (cfg.retrain) {
        PipelineConfig pc = to_pipeline_config(cfg, desc);
        pc.band_k = cfg.band_k;
        pc.band_list.clear();
        PipelineResult res = run_pipeline(ds, pc);
        write_json(pipeline_report(cfg, res), cfg.out_report);
        std::cout << "retrain OA " << fmt1(res.metrics.oa) << "  AA " << fmt1(res.metrics.aa)
                  << "\nreport: " << cfg.out_report << "\n";
    }
}

void cmd_map(const RunConfig& cfg) {
    if (!std::filesystem::is_regular_file(cfg.model)) {
        throw ConfigError("model file not found: " + cfg.model);
    }
    auto [net, stats] = load_model(cfg.model);

    LabelRaster gt;
    PixelDataset ds = load_input_data_with_gt(cfg, gt);
    if (!cfg.band_list.empty()) {
        ds = project_bands(ds, load_band_list(cfg.band_list));
    }
    if (ds.bands != net.spec.input_size) {
        throw InvalidArgument("cube provides " + std::to_string(ds.bands) +
                              " bands after projection but the model expects " +
                              std::to_string(net.spec.input_size));
    }

    PixelDataset standardized = apply_standardization(ds, stats);
    std::vector<int> preds = predict(net, standardized);
    std::unordered_map<std::int64_t, int> by_pixel;
    by_pixel.reserve(preds.size());
    for (std::size_t i = 0; i < preds.size(); ++i) {
        by_pixel[ds.pixel_indices[i]] = preds[i];
    }
    render_map(gt, by_pixel, cfg.out_map);
    std::cout << "map: " << cfg.out_map << "  (" << gt.samples << "x" << gt.lines << ", "
              << preds.size() << " labeled pixels)\n";
}

}  // namespace hsifc::cli
