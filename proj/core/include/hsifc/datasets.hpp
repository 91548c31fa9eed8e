#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace hsifc {

/// Static description of one published benchmark scene. class_counts are the
/// labeled pixel totals per class (class c at index c-1); reference_oa and
/// reference_aa are the accuracies reported for the full-band configuration.
struct DatasetDescriptor {
    std::string name;
    int bands = 0;
    std::vector<std::string> class_names;
    std::vector<std::int64_t> class_counts;
    std::vector<int> hidden_sizes;
    double reference_oa = 0.0;
    double reference_aa = 0.0;

    int num_classes() const { return static_cast<int>(class_counts.size()); }
    std::int64_t total_labeled() const {
        return std::accumulate(class_counts.begin(), class_counts.end(), std::int64_t{0});
    }
};

/// All five benchmark scenes, in a fixed order.
const std::vector<DatasetDescriptor>& dataset_registry();

/// Case- and separator-insensitive lookup ("Indian Pines", "indian_pines",
/// "indianpines" all match). Returns nullptr when no entry matches.
const DatasetDescriptor* find_dataset(const std::string& name);

}  // namespace hsifc
