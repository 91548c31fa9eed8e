#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "hsifc/errors.hpp"
#include "run_config.hpp"

namespace {

using hsifc::cli::CliOverrides;
using hsifc::cli::Command;

void add_common_options(CLI::App* sub, CliOverrides& o) {
    sub->add_option("--config", o.config_path, "JSON config file; flags override its values");
    sub->add_option("--dataset", o.dataset, "registry dataset name (see `info`)");
    sub->add_option("--cube", o.cube, "ENVI header of the spectral cube");
    sub->add_option("--gt", o.gt, "ENVI header of the ground-truth raster");
    sub->add_option("--csv", o.csv, "CSV dataset: label,v1,...,vB per line");
    sub->add_option("--seed", o.seed, "master seed; split/balance/init/shuffle derive from it");
    sub->add_option("--balance-order", o.balance_order, "post_split or pre_split_unsafe")
        ->check(CLI::IsMember({"post_split", "pre_split_unsafe"}));
    sub->add_flag("--i-understand-leakage", o.i_understand_leakage,
                  "required acknowledgment for pre_split_unsafe");
    sub->add_option("--out", o.out, "primary output path of this command");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"per-pixel hyperspectral classification from 1-D spectral signatures"};
    app.require_subcommand(1);

    CliOverrides o;
    CLI::App* info = app.add_subcommand("info", "describe a dataset");
    CLI::App* train = app.add_subcommand("train", "split, balance, standardize, train, evaluate");
    CLI::App* experiment = app.add_subcommand("experiment", "repeat the pipeline over seeds");
    CLI::App* bands = app.add_subcommand("bands", "greedy divergence-based band selection");
    CLI::App* map_cmd = app.add_subcommand("map", "render a classification map from a model");

    for (CLI::App* sub : {info, train, experiment, bands, map_cmd}) {
        add_common_options(sub, o);
    }
    experiment->add_option("--repeats", o.repeats, "number of pipeline repetitions");
    bands->add_option("--k", o.k, "number of bands to select");
    bands->add_flag("--retrain", o.retrain, "rerun the pipeline on the selected bands");
    map_cmd->add_option("model", o.model, "trained model file (HSM1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
    }

    Command cmd = Command::info;
    if (train->parsed()) cmd = Command::train;
    else if (experiment->parsed()) cmd = Command::experiment;
    else if (bands->parsed()) cmd = Command::bands;
    else if (map_cmd->parsed()) cmd = Command::map;

    try {
        const hsifc::cli::RunConfig cfg = hsifc::cli::resolve_config(o, cmd);
        switch (cmd) {
            case Command::info: hsifc::cli::cmd_info(cfg); break;
            case Command::train: hsifc::cli::cmd_train(cfg); break;
            case Command::experiment: hsifc::cli::cmd_experiment(cfg); break;
            case Command::bands: hsifc::cli::cmd_bands(cfg); break;
            case Command::map: hsifc::cli::cmd_map(cfg); break;
        }
    } catch (const hsifc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
