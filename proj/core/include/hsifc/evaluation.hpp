#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "hsifc/hsi_data.hpp"

namespace hsifc {

/// Rows are true classes, columns predicted; labels are 1-based.
struct ConfusionMatrix {
    int num_classes = 0;
    std::vector<std::int64_t> counts;  // row-major num_classes x num_classes
    std::vector<std::string> class_names;

    std::int64_t& at(int true_label, int pred_label) {
        return counts[static_cast<std::size_t>(true_label - 1) *
                          static_cast<std::size_t>(num_classes) +
                      static_cast<std::size_t>(pred_label - 1)];
    }
    std::int64_t at(int true_label, int pred_label) const {
        return counts[static_cast<std::size_t>(true_label - 1) *
                          static_cast<std::size_t>(num_classes) +
                      static_cast<std::size_t>(pred_label - 1)];
    }
    std::int64_t total() const;
    std::int64_t trace() const;
    std::int64_t row_sum(int true_label) const;
};

ConfusionMatrix confusion_matrix(const std::vector<int>& true_labels,
                                 const std::vector<int>& predicted_labels, int num_classes);

/// 100 * trace / total.
double overall_accuracy(const ConfusionMatrix& cm);

/// 100 * mean over classes of the per-class diagonal fraction. Every class
/// must appear at least once among the true labels.
double average_accuracy(const ConfusionMatrix& cm);

std::vector<double> per_class_accuracy(const ConfusionMatrix& cm);

struct MetricsReport {
    double oa = 0.0;
    double aa = 0.0;
    std::vector<double> per_class;
    ConfusionMatrix confusion;
};

MetricsReport compute_metrics(const std::vector<int>& true_labels,
                              const std::vector<int>& predicted_labels, int num_classes);

/// Half-up rounding to 1 decimal place, the reporting convention for OA/AA.
inline double round_half_up_1dp(double x) { return std::floor(x * 10.0 + 0.5) / 10.0; }

using Rgb = std::array<unsigned char, 3>;

/// 16 visually distinct colors; class c maps to entry (c-1) mod 16.
const std::array<Rgb, 16>& default_palette();

/// Binary PPM (P6) classification map, samples x lines, background black.
/// predictions must cover exactly the nonzero ground-truth pixels, keyed by
/// flat pixel index.
void render_map(const LabelRaster& gt,
                const std::unordered_map<std::int64_t, int>& predictions,
                const std::filesystem::path& out_path);

}  // namespace hsifc
