#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace hsifc {

/// 3-D reflectance raster in band-sequential (BSQ) order:
/// values[b * lines * samples + y * samples + x].
struct SpectralCube {
    int lines = 0;
    int samples = 0;
    int bands = 0;
    std::vector<float> values;

    std::int64_t pixel_count() const {
        return static_cast<std::int64_t>(lines) * samples;
    }
    float at(int band, std::int64_t pixel) const {
        return values[static_cast<std::size_t>(band) * pixel_count() + pixel];
    }
};

/// Per-pixel class labels aligned to a cube. Label 0 is unlabeled background
/// and never a class; num_classes is the maximum label value.
struct LabelRaster {
    int lines = 0;
    int samples = 0;
    std::vector<int> labels;
    int num_classes = 0;

    std::int64_t pixel_count() const {
        return static_cast<std::int64_t>(lines) * samples;
    }
    /// Count of pixels with label c at index c-1 (background excluded).
    std::vector<std::int64_t> class_counts() const;
};

/// Flat list of labeled signature vectors. Signatures are stored row-major:
/// record i occupies signatures[i*bands, (i+1)*bands).
struct PixelDataset {
    int bands = 0;
    int num_classes = 0;
    std::vector<float> signatures;
    std::vector<int> labels;                    // 1..num_classes
    std::vector<std::int64_t> pixel_indices;    // source raster offset / row id

    std::size_t size() const { return labels.size(); }

    std::span<const float> signature(std::size_t i) const {
        return {signatures.data() + i * bands, static_cast<std::size_t>(bands)};
    }
    std::span<float> signature(std::size_t i) {
        return {signatures.data() + i * bands, static_cast<std::size_t>(bands)};
    }

    void append(std::span<const float> sig, int label, std::int64_t pixel_index);
    void reserve(std::size_t records);

    /// Count of records with label c at index c-1.
    std::vector<std::int64_t> class_counts() const;
};

/// Lower bound applied to every per-band standard deviation so constant
/// bands standardize to zero instead of blowing up.
inline constexpr double kStddevFloor = 1e-8;

/// Per-band normalization statistics. Fit these on the training partition
/// only and apply them to both partitions.
struct BandStats {
    std::vector<double> mean;
    std::vector<double> stddev;  // each >= kStddevFloor

    int bands() const { return static_cast<int>(mean.size()); }
};

/// Loads a cube from an ENVI-subset header (+ companion raw BSQ file).
/// Supported: interleave=bsq, data type 2 (int16) / 4 (float32) / 12 (uint16),
/// byte order 0/1. Integer samples are promoted to float losslessly.
SpectralCube load_envi_cube(const std::filesystem::path& header_path);

/// Loads a single-band integer raster in the same header format.
LabelRaster load_label_raster(const std::filesystem::path& header_path);

/// Writes `header_path` plus a float32 BSQ raw file next to it (stem + ".raw").
void save_envi_cube(const SpectralCube& cube, const std::filesystem::path& header_path);

/// Writes `header_path` plus a uint16 raw file next to it (stem + ".raw").
void save_label_raster(const LabelRaster& gt, const std::filesystem::path& header_path);

/// CSV rows are `label,v1,...,vB` with label >= 1; pixel_index = row number.
PixelDataset load_csv_dataset(const std::filesystem::path& path);

/// Inverse of load_csv_dataset up to float formatting (9 significant digits,
/// which round-trips float32 exactly).
void write_csv_dataset(const PixelDataset& ds, const std::filesystem::path& path);

/// One record per nonzero ground-truth pixel, in raster order. The record's
/// signature holds the pixel's band values; pixel_index is the flat offset.
PixelDataset extract_labeled_pixels(const SpectralCube& cube, const LabelRaster& gt);

/// Per-band mean and population standard deviation (divisor n) over all
/// records, accumulated in double precision.
BandStats fit_band_stats(const PixelDataset& train);

/// Maps every signature component x -> (x - mean_b) / stddev_b. Labels and
/// pixel indices are unchanged.
PixelDataset apply_standardization(const PixelDataset& ds, const BandStats& stats);

}  // namespace hsifc
