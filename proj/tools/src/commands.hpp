#pragma once

#include "run_config.hpp"

namespace hsifc::cli {

void cmd_info(const RunConfig& cfg);
void cmd_train(const RunConfig& cfg);
void cmd_experiment(const RunConfig& cfg);
void cmd_bands(const RunConfig& cfg);
void cmd_map(const RunConfig& cfg);

}  // namespace hsifc::cli
