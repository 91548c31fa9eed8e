#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "hsifc/hsi_data.hpp"

namespace hsifc {

/// Guard in the divergence denominator so zero-within-scatter subsets rank
/// strictly by their between-class scatter.
inline constexpr double kDivergenceEpsilon = 1e-12;

/// Per-band scatter decomposition. For every band, within + between equals
/// the band's total population variance (law of total variance).
struct ScatterSummary {
    std::vector<double> within;   // sum_c prior_c * var_c(b)
    std::vector<double> between;  // sum_c prior_c * (mean_c(b) - mean(b))^2
    std::vector<double> priors;   // n_c / n
    int bands() const { return static_cast<int>(within.size()); }
};

/// Needs >= 2 classes, each with >= 1 record.
ScatterSummary scatter_summary(const PixelDataset& ds);

/// J(subset) = sum of between / (sum of within + epsilon), both over the
/// subset's bands.
double divergence_score(const ScatterSummary& summary, std::span<const int> subset);

/// Forward selection: repeatedly add the band maximizing J of the enlarged
/// subset, ties toward the lowest band index. Returns k indices in selection
/// order.
std::vector<int> greedy_band_selection(const PixelDataset& ds, int k);

/// Restricts every signature to the given bands, in the given order.
/// Indices must be distinct and in range; labels and pixel indices are kept.
PixelDataset project_bands(const PixelDataset& ds, std::span<const int> bands);

/// Band list files hold one 0-based band index per line, selection order.
void write_band_list(std::span<const int> bands, const std::filesystem::path& path);
std::vector<int> load_band_list(const std::filesystem::path& path);

}  // namespace hsifc
