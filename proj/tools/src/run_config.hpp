#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hsifc/datasets.hpp"
#include "hsifc/hsi_data.hpp"
#include "hsifc/pipeline.hpp"

namespace hsifc::cli {

/// Effective run configuration. Precedence: command-line flag > config file
/// value > default.
struct RunConfig {
    std::string dataset;  // registry name; resolved via HSIFC_DATA_DIR when paths absent
    std::string cube;     // ENVI header of the spectral cube
    std::string gt;       // ENVI header of the ground-truth raster
    std::string csv;      // label,v1,...,vB records

    double test_fraction = 0.2;
    bool balance = true;
    std::string balance_order = "post_split";  // or "pre_split_unsafe"
    bool i_understand_leakage = false;

    std::vector<int> hidden_sizes;  // empty: registry entry if known, else 250/300/400/200
    double bn_epsilon = 1e-5;
    double bn_momentum = 0.9;
    int epochs = 100;
    int batch_size = 256;
    double learning_rate = 1e-3;

    std::uint64_t seed = 0;
    int repeats = 1;
    int band_k = 0;
    std::string band_list;  // path to a band list file (one 0-based index per line)
    bool retrain = false;

    std::string model = "model.hsm1";  // input for `map`
    std::string out_model = "model.hsm1";
    std::string out_report = "report.json";
    std::string out_bands = "bands.txt";
    std::string out_map = "map.ppm";
};

/// Values captured from command-line flags; unset optionals fall through to
/// the config file.
struct CliOverrides {
    std::optional<std::string> config_path;
    std::optional<std::string> dataset;
    std::optional<std::string> cube;
    std::optional<std::string> gt;
    std::optional<std::string> csv;
    std::optional<std::uint64_t> seed;
    std::optional<int> repeats;
    std::optional<int> k;
    bool retrain = false;
    std::optional<std::string> balance_order;
    bool i_understand_leakage = false;
    std::optional<std::string> out;
    std::optional<std::string> model;  // positional for `map`
};

enum class Command { info, train, experiment, bands, map };

/// Reads the JSON config file (when given), then applies flag overrides.
/// Unknown config keys and malformed values raise ConfigError.
RunConfig resolve_config(const CliOverrides& o, Command cmd);

/// Registry lookup that raises ConfigError for unknown names.
const DatasetDescriptor& require_dataset(const std::string& name);

/// Loads the labeled dataset named by the config: csv, explicit cube+gt, or
/// registry dataset under HSIFC_DATA_DIR. Missing files raise ConfigError
/// naming the path. Returns the registry descriptor when one applies.
PixelDataset load_input_data(const RunConfig& cfg, const DatasetDescriptor** desc_out);

/// Same resolution, but also returns the ground-truth raster (for `map`).
PixelDataset load_input_data_with_gt(const RunConfig& cfg, LabelRaster& gt_out);

/// Hidden sizes: config override, else registry entry, else 250/300/400/200.
std::vector<int> resolve_hidden_sizes(const RunConfig& cfg, const DatasetDescriptor* desc);

/// Pipeline view of the effective config; loads the band list file when set.
PipelineConfig to_pipeline_config(const RunConfig& cfg, const DatasetDescriptor* desc);

/// Full effective-config echo embedded in every report.
nlohmann::json config_echo(const RunConfig& cfg);

}  // namespace hsifc::cli
