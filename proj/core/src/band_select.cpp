#include "hsifc/band_select.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <string>

#include "hsifc/errors.hpp"

namespace hsifc {

ScatterSummary scatter_summary(const PixelDataset& ds) {
    if (ds.num_classes < 2) {
        throw InvalidArgument("scatter decomposition needs at least 2 classes");
    }
    const auto counts = ds.class_counts();
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] == 0) {
            throw InvalidArgument("class " + std::to_string(c + 1) + " has no records");
        }
    }

    const int bands = ds.bands;
    const auto num_classes = static_cast<std::size_t>(ds.num_classes);
    const auto n = static_cast<double>(ds.size());

    // per class: sum and sum of squares per band, in double
    std::vector<double> sums(num_classes * static_cast<std::size_t>(bands), 0.0);
    std::vector<double> sumsq(num_classes * static_cast<std::size_t>(bands), 0.0);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto c = static_cast<std::size_t>(ds.labels[i] - 1);
        auto sig = ds.signature(i);
        double* srow = sums.data() + c * static_cast<std::size_t>(bands);
        double* qrow = sumsq.data() + c * static_cast<std::size_t>(bands);
        for (int b = 0; b < bands; ++b) {
            const double v = sig[b];
            srow[b] += v;
            qrow[b] += v * v;
        }
    }

    ScatterSummary out;
    out.within.assign(bands, 0.0);
    out.between.assign(bands, 0.0);
    out.priors.resize(num_classes);
    for (std::size_t c = 0; c < num_classes; ++c) {
        out.priors[c] = static_cast<double>(counts[c]) / n;
    }

    std::vector<double> overall_mean(bands, 0.0);
    for (std::size_t c = 0; c < num_classes; ++c) {
        const double* srow = sums.data() + c * static_cast<std::size_t>(bands);
        for (int b = 0; b < bands; ++b) overall_mean[b] += srow[b] / n;
    }

    for (std::size_t c = 0; c < num_classes; ++c) {
        const double n_c = static_cast<double>(counts[c]);
        const double* srow = sums.data() + c * static_cast<std::size_t>(bands);
        const double* qrow = sumsq.data() + c * static_cast<std::size_t>(bands);
        for (int b = 0; b < bands; ++b) {
            const double mean_c = srow[b] / n_c;
            const double var_c = std::max(qrow[b] / n_c - mean_c * mean_c, 0.0);
            const double d = mean_c - overall_mean[b];
            out.within[b] += out.priors[c] * var_c;
            out.between[b] += out.priors[c] * d * d;
        }
    }
    return out;
}

double divergence_score(const ScatterSummary& summary, std::span<const int> subset) {
    if (subset.empty()) throw InvalidArgument("divergence score needs a nonempty band subset");
    double sum_between = 0.0;
    double sum_within = 0.0;
    for (int b : subset) {
        if (b < 0 || b >= summary.bands()) {
            throw InvalidArgument("band index " + std::to_string(b) + " out of range");
        }
        sum_between += summary.between[static_cast<std::size_t>(b)];
        sum_within += summary.within[static_cast<std::size_t>(b)];
    }
    return sum_between / (sum_within + kDivergenceEpsilon);
}

std::vector<int> greedy_band_selection(const PixelDataset& ds, int k) {
    const int bands = ds.bands;
    if (k < 1 || k > bands) {
        throw InvalidArgument("k must lie in 1.." + std::to_string(bands) + ", got " +
                              std::to_string(k));
    }
    const ScatterSummary summary = scatter_summary(ds);

    std::vector<int> selected;
    selected.reserve(static_cast<std::size_t>(k));
    std::vector<bool> taken(static_cast<std::size_t>(bands), false);
    double sum_between = 0.0;
    double sum_within = 0.0;

    for (int step = 0; step < k; ++step) {
        int best = -1;
        double best_score = 0.0;
        for (int b = 0; b < bands; ++b) {
            if (taken[static_cast<std::size_t>(b)]) continue;
            const double score = (sum_between + summary.between[static_cast<std::size_t>(b)]) /
                                 (sum_within + summary.within[static_cast<std::size_t>(b)] +
                                  kDivergenceEpsilon);
            if (best < 0 || score > best_score) {  // strict > keeps the lowest index on ties
                best = b;
                best_score = score;
            }
        }
        taken[static_cast<std::size_t>(best)] = true;
        selected.push_back(best);
        sum_between += summary.between[static_cast<std::size_t>(best)];
        sum_within += summary.within[static_cast<std::size_t>(best)];
    }
    return selected;
}

PixelDataset project_bands(const PixelDataset& ds, std::span<const int> bands) {
    if (bands.empty()) throw InvalidArgument("band projection needs at least one band");
    std::vector<bool> seen(static_cast<std::size_t>(ds.bands), false);
    for (int b : bands) {
        if (b < 0 || b >= ds.bands) {
            throw InvalidArgument("band index " + std::to_string(b) + " out of range 0.." +
                                  std::to_string(ds.bands - 1));
        }
        if (seen[static_cast<std::size_t>(b)]) {
            throw InvalidArgument("duplicate band index " + std::to_string(b));
        }
        seen[static_cast<std::size_t>(b)] = true;
    }

    PixelDataset out;
    out.bands = static_cast<int>(bands.size());
    out.num_classes = ds.num_classes;
    out.labels = ds.labels;
    out.pixel_indices = ds.pixel_indices;
    out.signatures.resize(ds.size() * bands.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        auto src = ds.signature(i);
        float* dst = out.signatures.data() + i * bands.size();
        for (std::size_t j = 0; j < bands.size(); ++j) {
            dst[j] = src[static_cast<std::size_t>(bands[j])];
        }
    }
    return out;
}

void write_band_list(std::span<const int> bands, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write band list " + path.string());
    for (int b : bands) out << b << '\n';
    if (!out) throw FormatError("failed writing band list " + path.string());
}

std::vector<int> load_band_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open band list " + path.string());
    std::vector<int> bands;
    std::string line;
    std::int64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto b = line.find_first_not_of(" \t\r");
        auto e = line.find_last_not_of(" \t\r");
        if (b == std::string::npos) continue;
        int v = 0;
        auto [p, ec] = std::from_chars(line.data() + b, line.data() + e + 1, v);
        if (ec != std::errc{} || p != line.data() + e + 1) {
            throw FormatError(path.string() + ": line " + std::to_string(line_no) +
                              " is not an integer");
        }
        bands.push_back(v);
    }
    if (bands.empty()) throw FormatError(path.string() + ": no band indices");
    return bands;
}

}  // namespace hsifc
