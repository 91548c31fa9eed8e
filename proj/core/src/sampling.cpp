#include "hsifc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "hsifc/errors.hpp"
#include "hsifc/rng.hpp"

namespace hsifc {

namespace {

// Record indices grouped by class label (ascending), preserving input order.
std::vector<std::vector<std::size_t>> indices_by_class(const PixelDataset& ds) {
    std::vector<std::vector<std::size_t>> groups(static_cast<std::size_t>(ds.num_classes));
    for (std::size_t i = 0; i < ds.size(); ++i) {
        groups[static_cast<std::size_t>(ds.labels[i] - 1)].push_back(i);
    }
    return groups;
}

PixelDataset subset(const PixelDataset& ds, const std::vector<std::size_t>& indices) {
    PixelDataset out;
    out.bands = ds.bands;
    out.num_classes = ds.num_classes;
    out.reserve(indices.size());
    for (std::size_t i : indices) {
        out.append(ds.signature(i), ds.labels[i], ds.pixel_indices[i]);
    }
    return out;
}

}  // namespace

SplitResult stratified_split(const PixelDataset& ds, double test_fraction, std::uint64_t seed) {
    if (ds.size() == 0) throw InvalidArgument("cannot split an empty dataset");
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw InvalidArgument("test_fraction must lie strictly between 0 and 1");
    }

    auto groups = indices_by_class(ds);
    for (std::size_t c = 0; c < groups.size(); ++c) {
        if (groups[c].empty()) {
            throw InvalidArgument("class " + std::to_string(c + 1) + " has no records");
        }
    }

    Rng rng(seed);
    std::vector<std::size_t> test_indices;
    std::vector<std::size_t> train_indices;
    for (auto& group : groups) {
        const auto n_c = static_cast<double>(group.size());
        const auto n_test = static_cast<std::size_t>(std::ceil(test_fraction * n_c));
        std::shuffle(group.begin(), group.end(), rng);
        test_indices.insert(test_indices.end(), group.begin(), group.begin() + n_test);
        train_indices.insert(train_indices.end(), group.begin() + n_test, group.end());
    }
    std::sort(test_indices.begin(), test_indices.end());
    std::sort(train_indices.begin(), train_indices.end());

    SplitResult result;
    result.train = subset(ds, train_indices);
    result.test = subset(ds, test_indices);
    result.seed = seed;
    return result;
}

BalancePlan make_balance_plan(const PixelDataset& train) {
    if (train.size() == 0) throw InvalidArgument("cannot balance an empty dataset");
    auto counts = train.class_counts();

    BalancePlan plan;
    plan.target_count = *std::max_element(counts.begin(), counts.end());
    plan.per_class_duplicates.reserve(counts.size());
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] == 0) {
            throw InvalidArgument("class " + std::to_string(c + 1) +
                                  " has no records to duplicate from");
        }
        plan.per_class_duplicates.emplace_back(static_cast<int>(c + 1),
                                               plan.target_count - counts[c]);
    }
    return plan;
}

PixelDataset balance_by_duplication(const PixelDataset& train, std::uint64_t seed) {
    BalancePlan plan = make_balance_plan(train);
    auto groups = indices_by_class(train);

    PixelDataset out = train;
    const auto total_duplicates = plan.target_count * train.num_classes -
                                  static_cast<std::int64_t>(train.size());
    out.reserve(train.size() + static_cast<std::size_t>(total_duplicates));

    Rng rng(seed);
    for (const auto& [label, dup_count] : plan.per_class_duplicates) {
        const auto& group = groups[static_cast<std::size_t>(label - 1)];
        std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
        for (std::int64_t d = 0; d < dup_count; ++d) {
            std::size_t src = group[pick(rng)];
            out.append(train.signature(src), label, train.pixel_indices[src]);
        }
    }
    return out;
}

std::int64_t leakage_overlap(const PixelDataset& train, const PixelDataset& test) {
    std::unordered_map<std::int64_t, std::int64_t> test_counts;
    test_counts.reserve(test.size());
    for (std::int64_t idx : test.pixel_indices) ++test_counts[idx];

    std::int64_t pairs = 0;
    for (std::int64_t idx : train.pixel_indices) {
        if (auto it = test_counts.find(idx); it != test_counts.end()) pairs += it->second;
    }
    return pairs;
}

}  // namespace hsifc
