#include "hsifc/evaluation.hpp"

#include <fstream>
#include <numeric>

#include "hsifc/errors.hpp"

namespace hsifc {

std::int64_t ConfusionMatrix::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

std::int64_t ConfusionMatrix::trace() const {
    std::int64_t t = 0;
    for (int c = 1; c <= num_classes; ++c) t += at(c, c);
    return t;
}

std::int64_t ConfusionMatrix::row_sum(int true_label) const {
    std::int64_t s = 0;
    for (int p = 1; p <= num_classes; ++p) s += at(true_label, p);
    return s;
}

ConfusionMatrix confusion_matrix(const std::vector<int>& true_labels,
                                 const std::vector<int>& predicted_labels, int num_classes) {
    if (true_labels.size() != predicted_labels.size()) {
        throw InvalidArgument("true and predicted label lists differ in length");
    }
    if (num_classes < 1) throw InvalidArgument("need at least one class");

    ConfusionMatrix cm;
    cm.num_classes = num_classes;
    cm.counts.assign(static_cast<std::size_t>(num_classes) * static_cast<std::size_t>(num_classes),
                     0);
    for (std::size_t i = 0; i < true_labels.size(); ++i) {
        const int t = true_labels[i];
        const int p = predicted_labels[i];
        if (t < 1 || t > num_classes || p < 1 || p > num_classes) {
            throw InvalidArgument("label outside 1.." + std::to_string(num_classes) +
                                  " at record " + std::to_string(i));
        }
        ++cm.at(t, p);
    }
    return cm;
}

double overall_accuracy(const ConfusionMatrix& cm) {
    const auto total = cm.total();
    if (total == 0) throw InvalidArgument("confusion matrix is empty");
    return 100.0 * static_cast<double>(cm.trace()) / static_cast<double>(total);
}

std::vector<double> per_class_accuracy(const ConfusionMatrix& cm) {
    std::vector<double> acc(static_cast<std::size_t>(cm.num_classes));
    for (int c = 1; c <= cm.num_classes; ++c) {
        const auto row = cm.row_sum(c);
        if (row == 0) {
            throw InvalidArgument("class " + std::to_string(c) + " has no test records");
        }
        acc[static_cast<std::size_t>(c - 1)] =
            static_cast<double>(cm.at(c, c)) / static_cast<double>(row);
    }
    return acc;
}

double average_accuracy(const ConfusionMatrix& cm) {
    const auto acc = per_class_accuracy(cm);
    const double mean = std::accumulate(acc.begin(), acc.end(), 0.0) /
                        static_cast<double>(acc.size());
    return 100.0 * mean;
}

MetricsReport compute_metrics(const std::vector<int>& true_labels,
                              const std::vector<int>& predicted_labels, int num_classes) {
    MetricsReport report;
    report.confusion = confusion_matrix(true_labels, predicted_labels, num_classes);
    report.oa = overall_accuracy(report.confusion);
    report.per_class = per_class_accuracy(report.confusion);
    report.aa = average_accuracy(report.confusion);
    return report;
}

const std::array<Rgb, 16>& default_palette() {
    static const std::array<Rgb, 16> palette = {{
        {0xe6, 0x19, 0x4b}, {0x3c, 0xb4, 0x4b}, {0xff, 0xe1, 0x19}, {0x43, 0x63, 0xd8},
        {0xf5, 0x82, 0x31}, {0x91, 0x1e, 0xb4}, {0x46, 0xf0, 0xf0}, {0xf0, 0x32, 0xe6},
        {0xbc, 0xf6, 0x0c}, {0xfa, 0xbe, 0xbe}, {0x00, 0x80, 0x80}, {0xe6, 0xbe, 0xff},
        {0x9a, 0x63, 0x24}, {0xff, 0xfa, 0xc8}, {0x80, 0x00, 0x00}, {0xaa, 0xff, 0xc3},
    }};
    return palette;
}

void render_map(const LabelRaster& gt,
                const std::unordered_map<std::int64_t, int>& predictions,
                const std::filesystem::path& out_path) {
    const auto pixels = static_cast<std::size_t>(gt.pixel_count());
    if (gt.labels.size() != pixels) {
        throw InvalidArgument("label count does not match raster dimensions");
    }

    std::size_t labeled = 0;
    for (int v : gt.labels) {
        if (v != 0) ++labeled;
    }
    if (predictions.size() != labeled) {
        throw InvalidArgument("prediction count " + std::to_string(predictions.size()) +
                              " does not match labeled pixel count " + std::to_string(labeled));
    }

    const auto& palette = default_palette();
    std::vector<unsigned char> rgb(pixels * 3, 0);
    for (std::size_t p = 0; p < pixels; ++p) {
        if (gt.labels[p] == 0) continue;
        auto it = predictions.find(static_cast<std::int64_t>(p));
        if (it == predictions.end()) {
            throw InvalidArgument("no prediction for labeled pixel " + std::to_string(p));
        }
        const int cls = it->second;
        if (cls < 1) throw InvalidArgument("predicted class must be >= 1");
        const Rgb& color = palette[static_cast<std::size_t>(cls - 1) % palette.size()];
        rgb[p * 3 + 0] = color[0];
        rgb[p * 3 + 1] = color[1];
        rgb[p * 3 + 2] = color[2];
    }

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw FormatError("cannot write map file " + out_path.string());
    out << "P6\n" << gt.samples << ' ' << gt.lines << "\n255\n";
    out.write(reinterpret_cast<const char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
    if (!out) throw FormatError("failed writing map file " + out_path.string());
}

}  // namespace hsifc
