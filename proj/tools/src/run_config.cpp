#include "run_config.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "hsifc/band_select.hpp"
#include "hsifc/errors.hpp"

namespace hsifc::cli {

namespace {

using nlohmann::json;

template <typename T>
T get_as(const json& v, const std::string& key) {
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

void apply_json(RunConfig& cfg, const json& j) {
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "dataset") cfg.dataset = get_as<std::string>(value, key);
        else if (key == "cube") cfg.cube = get_as<std::string>(value, key);
        else if (key == "gt") cfg.gt = get_as<std::string>(value, key);
        else if (key == "csv") cfg.csv = get_as<std::string>(value, key);
        else if (key == "test_fraction") cfg.test_fraction = get_as<double>(value, key);
        else if (key == "balance") cfg.balance = get_as<bool>(value, key);
        else if (key == "balance_order") cfg.balance_order = get_as<std::string>(value, key);
        else if (key == "i_understand_leakage") cfg.i_understand_leakage = get_as<bool>(value, key);
        else if (key == "hidden_sizes") cfg.hidden_sizes = get_as<std::vector<int>>(value, key);
        else if (key == "bn_epsilon") cfg.bn_epsilon = get_as<double>(value, key);
        else if (key == "bn_momentum") cfg.bn_momentum = get_as<double>(value, key);
        else if (key == "epochs") cfg.epochs = get_as<int>(value, key);
        else if (key == "batch_size") cfg.batch_size = get_as<int>(value, key);
        else if (key == "learning_rate") cfg.learning_rate = get_as<double>(value, key);
        else if (key == "seed") cfg.seed = get_as<std::uint64_t>(value, key);
        else if (key == "repeats") cfg.repeats = get_as<int>(value, key);
        else if (key == "band_k") cfg.band_k = get_as<int>(value, key);
        else if (key == "band_list") cfg.band_list = get_as<std::string>(value, key);
        else if (key == "retrain") cfg.retrain = get_as<bool>(value, key);
        else if (key == "model") cfg.model = get_as<std::string>(value, key);
        else if (key == "out_model") cfg.out_model = get_as<std::string>(value, key);
        else if (key == "out_report") cfg.out_report = get_as<std::string>(value, key);
        else if (key == "out_bands") cfg.out_bands = get_as<std::string>(value, key);
        else if (key == "out_map") cfg.out_map = get_as<std::string>(value, key);
        else throw ConfigError("unknown config key '" + key + "'");
    }
}

std::string dataset_dirname(const std::string& name) {
    std::string dir;
    bool pending_sep = false;
    for (unsigned char c : name) {
        if (std::isalnum(c)) {
            if (pending_sep && !dir.empty()) dir.push_back('_');
            pending_sep = false;
            dir.push_back(static_cast<char>(std::tolower(c)));
        } else {
            pending_sep = true;
        }
    }
    return dir;
}

void require_file(const std::string& path, const std::string& what) {
    if (!std::filesystem::is_regular_file(path)) {
        throw ConfigError(what + " file not found: " + path);
    }
}

// Fills cube/gt paths from HSIFC_DATA_DIR/<dataset>/ when not explicit.
void resolve_registry_paths(RunConfig& cfg, const DatasetDescriptor& desc) {
    const char* root = std::getenv("HSIFC_DATA_DIR");
    if (!root || *root == '\0') {
        throw ConfigError("dataset '" + desc.name +
                          "' given without cube/gt paths and HSIFC_DATA_DIR is not set");
    }
    const auto dir = std::filesystem::path(root) / dataset_dirname(desc.name);
    if (cfg.cube.empty()) cfg.cube = (dir / (dataset_dirname(desc.name) + ".hdr")).string();
    if (cfg.gt.empty()) cfg.gt = (dir / (dataset_dirname(desc.name) + "_gt.hdr")).string();
}

}  // namespace

RunConfig resolve_config(const CliOverrides& o, Command cmd) {
    RunConfig cfg;
    if (o.config_path) {
        require_file(*o.config_path, "config");
        std::ifstream in(*o.config_path);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError("config file " + *o.config_path + " is not valid JSON: " + e.what());
        }
        apply_json(cfg, j);
    }

    if (o.dataset) cfg.dataset = *o.dataset;
    if (o.cube) cfg.cube = *o.cube;
    if (o.gt) cfg.gt = *o.gt;
    if (o.csv) cfg.csv = *o.csv;
    if (o.seed) cfg.seed = *o.seed;
    if (o.repeats) cfg.repeats = *o.repeats;
    if (o.k) cfg.band_k = *o.k;
    if (o.retrain) cfg.retrain = true;
    if (o.balance_order) cfg.balance_order = *o.balance_order;
    if (o.i_understand_leakage) cfg.i_understand_leakage = true;
    if (o.model) cfg.model = *o.model;
    if (o.out) {
        switch (cmd) {
            case Command::train:
            case Command::experiment: cfg.out_report = *o.out; break;
            case Command::bands: cfg.out_bands = *o.out; break;
            case Command::map: cfg.out_map = *o.out; break;
            case Command::info: break;
        }
    }

    if (cfg.balance_order != "post_split" && cfg.balance_order != "pre_split_unsafe") {
        throw ConfigError("balance_order must be post_split or pre_split_unsafe, got '" +
                          cfg.balance_order + "'");
    }
    if (cfg.epochs < 0) throw ConfigError("epochs must be >= 0");
    if (cfg.batch_size < 2) throw ConfigError("batch_size must be >= 2");
    if (cfg.repeats < 1) throw ConfigError("repeats must be >= 1");
    return cfg;
}

const DatasetDescriptor& require_dataset(const std::string& name) {
    const DatasetDescriptor* desc = find_dataset(name);
    if (!desc) {
        std::string known;
        for (const auto& d : dataset_registry()) {
            if (!known.empty()) known += ", ";
            known += d.name;
        }
        throw ConfigError("unknown dataset '" + name + "' (known: " + known + ")");
    }
    return *desc;
}

namespace {

PixelDataset load_from_paths(const RunConfig& cfg, LabelRaster* gt_out) {
    if (!cfg.csv.empty()) {
        if (gt_out) {
            throw ConfigError("`map` needs a cube and ground-truth raster, not a CSV dataset");
        }
        require_file(cfg.csv, "csv");
        return load_csv_dataset(cfg.csv);
    }
    require_file(cfg.cube, "cube header");
    require_file(cfg.gt, "ground-truth header");
    SpectralCube cube = load_envi_cube(cfg.cube);
    LabelRaster gt = load_label_raster(cfg.gt);
    PixelDataset ds = extract_labeled_pixels(cube, gt);
    if (gt_out) *gt_out = std::move(gt);
    return ds;
}

RunConfig with_resolved_paths(const RunConfig& cfg, const DatasetDescriptor* desc) {
    RunConfig resolved = cfg;
    if (desc && resolved.csv.empty() && (resolved.cube.empty() || resolved.gt.empty())) {
        resolve_registry_paths(resolved, *desc);
    }
    if (resolved.csv.empty() && (resolved.cube.empty() || resolved.gt.empty())) {
        throw ConfigError(
            "no input data: give csv, cube + gt, or a dataset name with HSIFC_DATA_DIR");
    }
    return resolved;
}

}  // namespace

PixelDataset load_input_data(const RunConfig& cfg, const DatasetDescriptor** desc_out) {
    const DatasetDescriptor* desc = cfg.dataset.empty() ? nullptr : &require_dataset(cfg.dataset);
    if (desc_out) *desc_out = desc;
    return load_from_paths(with_resolved_paths(cfg, desc), nullptr);
}

PixelDataset load_input_data_with_gt(const RunConfig& cfg, LabelRaster& gt_out) {
    const DatasetDescriptor* desc = cfg.dataset.empty() ? nullptr : &require_dataset(cfg.dataset);
    return load_from_paths(with_resolved_paths(cfg, desc), &gt_out);
}

std::vector<int> resolve_hidden_sizes(const RunConfig& cfg, const DatasetDescriptor* desc) {
    if (!cfg.hidden_sizes.empty()) return cfg.hidden_sizes;
    if (desc) return desc->hidden_sizes;
    return {250, 300, 400, 200};
}

PipelineConfig to_pipeline_config(const RunConfig& cfg, const DatasetDescriptor* desc) {
    PipelineConfig pc;
    pc.test_fraction = cfg.test_fraction;
    pc.balance = cfg.balance;
    pc.balance_order = cfg.balance_order == "pre_split_unsafe" ? BalanceOrder::pre_split_unsafe
                                                               : BalanceOrder::post_split;
    pc.acknowledge_leakage = cfg.i_understand_leakage;
    pc.hidden_sizes = resolve_hidden_sizes(cfg, desc);
    pc.bn_epsilon = cfg.bn_epsilon;
    pc.bn_momentum = cfg.bn_momentum;
    pc.train.epochs = cfg.epochs;
    pc.train.batch_size = cfg.batch_size;
    pc.train.learning_rate = cfg.learning_rate;
    pc.band_k = cfg.band_k;
    if (!cfg.band_list.empty()) {
        require_file(cfg.band_list, "band list");
        pc.band_list = load_band_list(cfg.band_list);
    }
    pc.seed = cfg.seed;
    return pc;
}

nlohmann::json config_echo(const RunConfig& cfg) {
    return nlohmann::json{
        {"dataset", cfg.dataset},
        {"cube", cfg.cube},
        {"gt", cfg.gt},
        {"csv", cfg.csv},
        {"test_fraction", cfg.test_fraction},
        {"balance", cfg.balance},
        {"balance_order", cfg.balance_order},
        {"i_understand_leakage", cfg.i_understand_leakage},
        {"hidden_sizes", cfg.hidden_sizes},
        {"bn_epsilon", cfg.bn_epsilon},
        {"bn_momentum", cfg.bn_momentum},
        {"epochs", cfg.epochs},
        {"batch_size", cfg.batch_size},
        {"learning_rate", cfg.learning_rate},
        {"seed", cfg.seed},
        {"repeats", cfg.repeats},
        {"band_k", cfg.band_k},
        {"band_list", cfg.band_list},
        {"retrain", cfg.retrain},
        {"model", cfg.model},
        {"out_model", cfg.out_model},
        {"out_report", cfg.out_report},
        {"out_bands", cfg.out_bands},
        {"out_map", cfg.out_map},
    };
}

}  // namespace hsifc::cli
