#include "hsifc/datasets.hpp"

#include <algorithm>
#include <cctype>

namespace hsifc {

namespace {

std::string canonical_key(const std::string& name) {
    std::string key;
    key.reserve(name.size());
    for (unsigned char c : name) {
        if (std::isalnum(c)) key.push_back(static_cast<char>(std::tolower(c)));
    }
    return key;
}

std::vector<DatasetDescriptor> build_registry() {
    std::vector<DatasetDescriptor> reg;

    reg.push_back({
        "Indian Pines",
        220,
        {"Alfalfa", "Corn-notill", "Corn-mintill", "Corn", "Grass-pasture",
         "Grass-trees", "Grass-pasture-mowed", "Hay-windrowed", "Oats",
         "Soybean-notill", "Soybean-mintill", "Soybean-clean", "Wheat", "Woods",
         "Buildings-Grass-Trees-Drives", "Stone-Steel-Towers"},
        {46, 1428, 830, 237, 483, 730, 28, 478, 20, 972, 2455, 593, 205, 1265, 386, 93},
        {250, 300, 400, 300},
        93.8,
        96.0,
    });

    reg.push_back({
        "Salinas",
        224,
        {"Broccoli green weeds 1", "Broccoli green weeds 2", "Fallow",
         "Fallow rough plow", "Fallow smooth", "Stubble", "Celery",
         "Grapes untrained", "Soil vinyard develop", "Corn senesced green weeds",
         "Lettuce romaine 4wk", "Lettuce romaine 5wk", "Lettuce romaine 6wk",
         "Lettuce romaine 7wk", "Vinyard untrained", "Vinyard vertical trellis"},
        {2009, 3726, 1976, 1394, 2678, 3959, 3579, 11271, 6203, 3278, 1068, 1927,
         916, 1070, 7268, 1807},
        {250, 300, 400, 200},
        95.7,
        98.3,
    });

    reg.push_back({
        "Pavia Centre",
        102,
        {"Water", "Trees", "Asphalt", "Self-Blocking Bricks", "Bitumen", "Tiles",
         "Shadows", "Meadows", "Bare Soil"},
        {65971, 7598, 3090, 2685, 6584, 9248, 7287, 42826, 2863},
        {250, 300, 400, 200},
        99.2,
        98.3,
    });

    reg.push_back({
        "Pavia University",
        103,
        {"Asphalt", "Meadows", "Gravel", "Trees", "Painted metal sheets",
         "Bare Soil", "Bitumen", "Self-Blocking Bricks", "Shadows"},
        {6631, 18649, 2099, 3064, 1345, 5029, 1330, 3682, 947},
        {250, 300, 400, 200},
        96.7,
        96.4,
    });

    reg.push_back({
        "Botswana",
        145,
        {"Water", "Hippo grass", "Floodplain grasses 1", "Floodplain grasses 2",
         "Reeds", "Riparian", "Firescar", "Island interior", "Acacia woodlands",
         "Acacia shrublands", "Acacia grasslands", "Short mopane", "Mixed mopane",
         "Exposed soils"},
        {270, 101, 251, 215, 269, 269, 259, 203, 314, 248, 305, 181, 268, 95},
        {250, 300, 400, 64},
        98.3,
        98.6,
    });

    return reg;
}

}  // namespace

const std::vector<DatasetDescriptor>& dataset_registry() {
    static const std::vector<DatasetDescriptor> reg = build_registry();
    return reg;
}

const DatasetDescriptor* find_dataset(const std::string& name) {
    const std::string key = canonical_key(name);
    for (const auto& d : dataset_registry()) {
        if (canonical_key(d.name) == key) return &d;
    }
    return nullptr;
}

}  // namespace hsifc
