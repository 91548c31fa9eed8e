#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>

#include "hsifc/hsi_data.hpp"
#include "hsifc/nn_core.hpp"

namespace hsifc {

inline constexpr char kModelMagic[4] = {'H', 'S', 'M', '1'};
inline constexpr std::uint16_t kModelVersion = 1;

/// Binary model file, layout documented in docs/model_format.md. Band stats
/// must cover exactly the network's input bands. save -> load -> save is
/// byte-identical.
void save_model(const Network& net, const BandStats& stats, const std::filesystem::path& path);

/// Loaded networks are in inference mode. Magic/version mismatch, truncation
/// and trailing bytes all raise FormatError.
std::pair<Network, BandStats> load_model(const std::filesystem::path& path);

}  // namespace hsifc
