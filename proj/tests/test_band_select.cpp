#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "hsifc/band_select.hpp"
#include "hsifc/errors.hpp"
#include "hsifc/rng.hpp"
#include "test_support.hpp"

using namespace hsifc;

namespace {

// two classes with per-band separation growing in `band_gain` steps, so every
// band has a distinct divergence score
PixelDataset graded_bands(int bands, int per_class, double band_gain, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    PixelDataset ds;
    ds.bands = bands;
    ds.num_classes = 2;
    std::vector<float> sig(static_cast<std::size_t>(bands));
    std::int64_t pixel = 0;
    for (int c = 1; c <= 2; ++c) {
        const double sign = c == 1 ? -1.0 : 1.0;
        for (int r = 0; r < per_class; ++r) {
            for (int b = 0; b < bands; ++b) {
                sig[static_cast<std::size_t>(b)] =
                    static_cast<float>(sign * (b + 1) * band_gain + noise(rng));
            }
            ds.append(sig, c, pixel++);
        }
    }
    return ds;
}

}  // namespace

TEST_CASE("scatter decomposition on a worked one-band example") {
    PixelDataset ds;
    ds.bands = 1;
    ds.num_classes = 2;
    const float values[4] = {0.0f, 2.0f, 4.0f, 6.0f};
    const int labels[4] = {1, 1, 2, 2};
    for (int i = 0; i < 4; ++i) ds.append({values + i, 1}, labels[i], i);

    ScatterSummary s = scatter_summary(ds);
    REQUIRE_EQ(s.bands(), 1);
    // class means 1 and 5, each var 1; overall mean 3
    CHECK(s.priors == std::vector<double>{0.5, 0.5});
    CHECK(s.within[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.between[0] == doctest::Approx(4.0).epsilon(1e-12));

    const int subset[1] = {0};
    CHECK(divergence_score(s, {subset, 1}) == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("within and between scatter add up to the total variance") {
    PixelDataset ds = test_support::gaussian_toy(12, 4, 60, 1.5, 13);
    ScatterSummary s = scatter_summary(ds);
    const auto n = ds.size();
    for (int b = 0; b < ds.bands; ++b) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += ds.signature(i)[b];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = ds.signature(i)[b] - mean;
            var += d * d;
        }
        var /= static_cast<double>(n);
        const double sum = s.within[static_cast<std::size_t>(b)] +
                           s.between[static_cast<std::size_t>(b)];
        CHECK(std::abs(sum - var) <= 1e-10 * std::max(1.0, var));
    }
}

TEST_CASE("identical class distributions give near-zero between scatter") {
    PixelDataset ds = test_support::gaussian_toy(6, 3, 400, 0.0, 29);
    ScatterSummary s = scatter_summary(ds);
    for (int b = 0; b < 6; ++b) {
        CHECK(s.between[static_cast<std::size_t>(b)] <
              0.05 * s.within[static_cast<std::size_t>(b)]);
    }
}

TEST_CASE("divergence score is invariant to uniform scaling") {
    PixelDataset ds = test_support::gaussian_toy(5, 3, 50, 1.0, 37);
    PixelDataset scaled = ds;
    for (auto& v : scaled.signatures) v *= 3.0f;
    ScatterSummary a = scatter_summary(ds);
    ScatterSummary b = scatter_summary(scaled);
    std::vector<int> subset = {0, 2, 4};
    CHECK(divergence_score(a, subset) ==
          doctest::Approx(divergence_score(b, subset)).epsilon(1e-9));
}

TEST_CASE("scatter input validation") {
    PixelDataset one_class = test_support::gaussian_toy(3, 1, 10, 1.0, 41);
    CHECK_THROWS_AS(scatter_summary(one_class), InvalidArgument);

    PixelDataset missing = test_support::gaussian_toy(3, 2, 10, 1.0, 42);
    missing.num_classes = 3;
    CHECK_THROWS_AS(scatter_summary(missing), InvalidArgument);

    PixelDataset ds = test_support::gaussian_toy(3, 2, 10, 1.0, 43);
    ScatterSummary s = scatter_summary(ds);
    CHECK_THROWS_AS(divergence_score(s, {}), InvalidArgument);
    std::vector<int> oob = {3};
    CHECK_THROWS_AS(divergence_score(s, oob), InvalidArgument);
}

TEST_CASE("greedy selection finds the lone informative band first") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const int informative = static_cast<int>(seed) % 7;
        PixelDataset ds = test_support::single_informative_band(7, informative, 150, seed);
        std::vector<int> picked = greedy_band_selection(ds, 3);
        CAPTURE(seed);
        REQUIRE_EQ(picked.size(), 3u);
        CHECK_EQ(picked[0], informative);
    }
}

TEST_CASE("selecting every band yields a permutation in score order") {
    PixelDataset ds = graded_bands(6, 80, 0.6, 51);
    std::vector<int> picked = greedy_band_selection(ds, 6);
    std::vector<int> sorted = picked;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expected(6);
    std::iota(expected.begin(), expected.end(), 0);
    CHECK(sorted == expected);
    // separation grows with the band index, so band 5 must come first
    CHECK_EQ(picked[0], 5);
}

TEST_CASE("selection commutes with a permutation of the bands") {
    PixelDataset ds = graded_bands(5, 100, 0.5, 57);
    const std::vector<int> perm = {2, 0, 3, 1, 4};  // permuted band j = original perm[j]
    PixelDataset shuffled = project_bands(ds, perm);

    std::vector<int> original = greedy_band_selection(ds, 5);
    std::vector<int> via_perm;
    for (int s : greedy_band_selection(shuffled, 5)) {
        via_perm.push_back(perm[static_cast<std::size_t>(s)]);
    }
    CHECK(original == via_perm);
}

TEST_CASE("greedy selection validates k") {
    PixelDataset ds = test_support::gaussian_toy(4, 2, 10, 1.0, 61);
    CHECK_THROWS_AS(greedy_band_selection(ds, 0), InvalidArgument);
    CHECK_THROWS_AS(greedy_band_selection(ds, 5), InvalidArgument);
    CHECK_EQ(greedy_band_selection(ds, 4).size(), 4u);
}

TEST_CASE("band projection keeps order, labels and pixel indices") {
    PixelDataset ds = test_support::gaussian_toy(4, 2, 5, 1.0, 67);
    std::vector<int> keep = {2, 0};
    PixelDataset out = project_bands(ds, keep);
    CHECK_EQ(out.bands, 2);
    CHECK_EQ(out.num_classes, ds.num_classes);
    CHECK(out.labels == ds.labels);
    CHECK(out.pixel_indices == ds.pixel_indices);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        CHECK_EQ(out.signature(i)[0], ds.signature(i)[2]);
        CHECK_EQ(out.signature(i)[1], ds.signature(i)[0]);
    }

    std::vector<int> identity = {0, 1, 2, 3};
    PixelDataset same = project_bands(ds, identity);
    CHECK(same.signatures == ds.signatures);

    std::vector<int> dup = {1, 1};
    CHECK_THROWS_AS(project_bands(ds, dup), InvalidArgument);
    std::vector<int> oob = {4};
    CHECK_THROWS_AS(project_bands(ds, oob), InvalidArgument);
    std::vector<int> neg = {-1};
    CHECK_THROWS_AS(project_bands(ds, neg), InvalidArgument);
    CHECK_THROWS_AS(project_bands(ds, {}), InvalidArgument);
}

TEST_CASE("band list files round trip and reject junk") {
    test_support::TempDir dir;
    std::vector<int> bands = {17, 3, 0, 144};
    write_band_list(bands, dir.file("bands.txt"));
    CHECK(load_band_list(dir.file("bands.txt")) == bands);

    test_support::write_text_file(dir.file("blank.txt"), "3\n\n  1 \n");
    CHECK(load_band_list(dir.file("blank.txt")) == std::vector<int>{3, 1});

    test_support::write_text_file(dir.file("junk.txt"), "3\nseven\n");
    CHECK_THROWS_AS(load_band_list(dir.file("junk.txt")), FormatError);

    test_support::write_text_file(dir.file("empty.txt"), "");
    CHECK_THROWS_AS(load_band_list(dir.file("empty.txt")), FormatError);

    CHECK_THROWS_AS(load_band_list(dir.file("missing.txt")), FormatError);
}
