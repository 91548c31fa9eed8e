#include <doctest.h>

#include <cstdint>
#include <vector>

#include "hsifc/datasets.hpp"

using namespace hsifc;

TEST_CASE("registry lists the five benchmark scenes with fixed shapes") {
    const auto& reg = dataset_registry();
    REQUIRE_EQ(reg.size(), 5u);

    CHECK_EQ(reg[0].name, "Indian Pines");
    CHECK_EQ(reg[0].bands, 220);
    CHECK_EQ(reg[0].num_classes(), 16);
    CHECK_EQ(reg[0].total_labeled(), 10249);
    CHECK(reg[0].hidden_sizes == std::vector<int>{250, 300, 400, 300});

    CHECK_EQ(reg[1].name, "Salinas");
    CHECK_EQ(reg[1].bands, 224);
    CHECK_EQ(reg[1].num_classes(), 16);
    CHECK_EQ(reg[1].total_labeled(), 54129);
    CHECK(reg[1].hidden_sizes == std::vector<int>{250, 300, 400, 200});

    CHECK_EQ(reg[2].name, "Pavia Centre");
    CHECK_EQ(reg[2].bands, 102);
    CHECK_EQ(reg[2].num_classes(), 9);
    CHECK_EQ(reg[2].total_labeled(), 148152);

    CHECK_EQ(reg[3].name, "Pavia University");
    CHECK_EQ(reg[3].bands, 103);
    CHECK_EQ(reg[3].num_classes(), 9);
    CHECK_EQ(reg[3].total_labeled(), 42776);

    CHECK_EQ(reg[4].name, "Botswana");
    CHECK_EQ(reg[4].bands, 145);
    CHECK_EQ(reg[4].num_classes(), 14);
    CHECK_EQ(reg[4].total_labeled(), 3248);
    CHECK(reg[4].hidden_sizes == std::vector<int>{250, 300, 400, 64});

    for (const auto& d : reg) {
        CHECK_EQ(static_cast<int>(d.class_names.size()), d.num_classes());
        CHECK(d.reference_oa > 90.0);
        CHECK(d.reference_aa > 90.0);
    }
}

TEST_CASE("per-class labeled pixel counts match the published totals") {
    const auto& reg = dataset_registry();
    CHECK(reg[0].class_counts ==
          std::vector<std::int64_t>{46, 1428, 830, 237, 483, 730, 28, 478, 20, 972, 2455, 593,
                                    205, 1265, 386, 93});
    CHECK(reg[1].class_counts ==
          std::vector<std::int64_t>{2009, 3726, 1976, 1394, 2678, 3959, 3579, 11271, 6203, 3278,
                                    1068, 1927, 916, 1070, 7268, 1807});
    CHECK(reg[2].class_counts ==
          std::vector<std::int64_t>{65971, 7598, 3090, 2685, 6584, 9248, 7287, 42826, 2863});
    CHECK(reg[3].class_counts ==
          std::vector<std::int64_t>{6631, 18649, 2099, 3064, 1345, 5029, 1330, 3682, 947});
    CHECK(reg[4].class_counts ==
          std::vector<std::int64_t>{270, 101, 251, 215, 269, 269, 259, 203, 314, 248, 305, 181,
                                    268, 95});
}

TEST_CASE("reference accuracies match the published full-band results") {
    const auto& reg = dataset_registry();
    CHECK_EQ(reg[0].reference_oa, 93.8);
    CHECK_EQ(reg[0].reference_aa, 96.0);
    CHECK_EQ(reg[1].reference_oa, 95.7);
    CHECK_EQ(reg[1].reference_aa, 98.3);
    CHECK_EQ(reg[2].reference_oa, 99.2);
    CHECK_EQ(reg[2].reference_aa, 98.3);
    CHECK_EQ(reg[3].reference_oa, 96.7);
    CHECK_EQ(reg[3].reference_aa, 96.4);
    CHECK_EQ(reg[4].reference_oa, 98.3);
    CHECK_EQ(reg[4].reference_aa, 98.6);
}

TEST_CASE("lookup is case and separator insensitive") {
    CHECK(find_dataset("Indian Pines") != nullptr);
    CHECK(find_dataset("indian_pines") != nullptr);
    CHECK(find_dataset("INDIANPINES") != nullptr);
    CHECK(find_dataset("pavia-centre") != nullptr);
    CHECK(find_dataset("Pavia University") != nullptr);
    CHECK(find_dataset("botswana") != nullptr);
    CHECK_EQ(find_dataset("salinas")->bands, 224);
    CHECK(find_dataset("picnic") == nullptr);
    CHECK(find_dataset("") == nullptr);
    CHECK(find_dataset("pavia") == nullptr);
}
