#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hsifc/hsi_data.hpp"

namespace hsifc {

struct SplitResult {
    PixelDataset train;
    PixelDataset test;
    std::uint64_t seed = 0;
};

/// How balancing will duplicate records: every class is raised to
/// target_count, the size of the largest post-split training class.
struct BalancePlan {
    std::int64_t target_count = 0;
    std::vector<std::pair<int, std::int64_t>> per_class_duplicates;  // (class, count)
};

/// Per class c with n_c records, moves exactly ceil(test_fraction * n_c)
/// uniformly chosen records to test and the remainder to train. Record order
/// within each partition follows the input dataset.
SplitResult stratified_split(const PixelDataset& ds, double test_fraction, std::uint64_t seed);

BalancePlan make_balance_plan(const PixelDataset& train);

/// Returns train plus duplicates so every class reaches the largest class's
/// count. Duplicates are exact copies of uniformly chosen same-class records
/// (with replacement) and keep the source record's pixel_index; they are
/// appended after the originals in ascending class order.
PixelDataset balance_by_duplication(const PixelDataset& train, std::uint64_t seed);

/// Number of (train record, test record) pairs sharing a pixel_index.
/// Zero for a split-then-balance pipeline.
std::int64_t leakage_overlap(const PixelDataset& train, const PixelDataset& test);

}  // namespace hsifc
