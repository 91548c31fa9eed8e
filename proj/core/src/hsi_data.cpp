#include "hsifc/hsi_data.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "hsifc/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "raster and model I/O assume a little-endian host");

namespace hsifc {

namespace {

std::string trim(std::string s) {
    const char* ws = " \t\r\n\v";
    auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// ENVI-subset header: ASCII `key = value` lines. Values wrapped in {...}
// may span lines; unknown keys are ignored.
std::map<std::string, std::string> parse_envi_header(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open header file: " + path.string());

    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;  // "ENVI" banner, comments
        std::string key = to_lower(trim(line.substr(0, eq)));
        std::string value = trim(line.substr(eq + 1));
        if (!value.empty() && value.front() == '{') {
            while (value.find('}') == std::string::npos && std::getline(in, line)) {
                value += ' ' + trim(line);
            }
        }
        if (!key.empty()) kv[key] = value;
    }
    return kv;
}

std::int64_t header_int(const std::map<std::string, std::string>& kv,
                        const std::string& key, const std::filesystem::path& path) {
    auto it = kv.find(key);
    if (it == kv.end()) {
        throw FormatError("header " + path.string() + " is missing required key '" + key + "'");
    }
    std::int64_t v = 0;
    auto s = trim(it->second);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
        throw FormatError("header " + path.string() + ": key '" + key +
                          "' has non-integer value '" + s + "'");
    }
    return v;
}

struct RasterLayout {
    std::int64_t samples = 0;
    std::int64_t lines = 0;
    std::int64_t bands = 0;
    int data_type = 0;   // 2=int16, 4=float32, 12=uint16
    int byte_order = 0;  // 0 little, 1 big
    std::size_t element_size() const { return data_type == 4 ? 4u : 2u; }
    std::int64_t element_count() const { return samples * lines * bands; }
};

RasterLayout parse_layout(const std::filesystem::path& header_path) {
    auto kv = parse_envi_header(header_path);

    RasterLayout lay;
    lay.samples = header_int(kv, "samples", header_path);
    lay.lines = header_int(kv, "lines", header_path);
    lay.bands = header_int(kv, "bands", header_path);
    if (lay.samples <= 0 || lay.lines <= 0 || lay.bands <= 0) {
        throw FormatError("header " + header_path.string() + " declares non-positive dimensions");
    }

    auto interleave_it = kv.find("interleave");
    if (interleave_it == kv.end()) {
        throw FormatError("header " + header_path.string() + " is missing required key 'interleave'");
    }
    if (to_lower(trim(interleave_it->second)) != "bsq") {
        throw UnsupportedFormatError("header " + header_path.string() + ": interleave '" +
                                     interleave_it->second + "' not supported (only bsq)");
    }

    lay.data_type = static_cast<int>(header_int(kv, "data type", header_path));
    if (lay.data_type != 2 && lay.data_type != 4 && lay.data_type != 12) {
        throw UnsupportedFormatError("header " + header_path.string() + ": data type " +
                                     std::to_string(lay.data_type) +
                                     " not supported (only 2, 4, 12)");
    }

    lay.byte_order = static_cast<int>(header_int(kv, "byte order", header_path));
    if (lay.byte_order != 0 && lay.byte_order != 1) {
        throw FormatError("header " + header_path.string() + ": byte order must be 0 or 1");
    }

    if (auto it = kv.find("header offset"); it != kv.end()) {
        std::int64_t off = header_int(kv, "header offset", header_path);
        if (off != 0) {
            throw UnsupportedFormatError("header " + header_path.string() +
                                         ": nonzero header offset not supported");
        }
    }
    return lay;
}

std::filesystem::path locate_raw_file(const std::filesystem::path& header_path) {
    std::filesystem::path stem = header_path;
    if (to_lower(header_path.extension().string()) == ".hdr") {
        stem.replace_extension();
    }
    const char* exts[] = {"", ".raw", ".img", ".dat", ".bsq"};
    for (const char* ext : exts) {
        std::filesystem::path candidate = stem;
        candidate += ext;
        if (std::filesystem::is_regular_file(candidate)) return candidate;
    }
    throw FormatError("no raw data file found for header " + header_path.string() +
                      " (tried stem plus .raw/.img/.dat/.bsq)");
}

std::vector<char> read_raw_bytes(const std::filesystem::path& raw,
                                 std::size_t expected_bytes) {
    std::error_code ec;
    auto actual = std::filesystem::file_size(raw, ec);
    if (ec) throw FormatError("cannot stat raw file " + raw.string());
    if (actual != expected_bytes) {
        throw FormatError("raw file " + raw.string() + " holds " + std::to_string(actual) +
                          " bytes, expected exactly " + std::to_string(expected_bytes));
    }
    std::ifstream in(raw, std::ios::binary);
    if (!in) throw FormatError("cannot open raw file " + raw.string());
    std::vector<char> bytes(expected_bytes);
    in.read(bytes.data(), static_cast<std::streamsize>(expected_bytes));
    if (static_cast<std::size_t>(in.gcount()) != expected_bytes) {
        throw FormatError("short read from raw file " + raw.string());
    }
    return bytes;
}

void swap_elements(std::vector<char>& bytes, std::size_t elem_size) {
    for (std::size_t i = 0; i < bytes.size(); i += elem_size) {
        std::reverse(bytes.begin() + i, bytes.begin() + i + elem_size);
    }
}

std::vector<float> decode_elements(const std::vector<char>& bytes, const RasterLayout& lay) {
    const auto n = static_cast<std::size_t>(lay.element_count());
    std::vector<float> out(n);
    switch (lay.data_type) {
        case 2: {
            std::int16_t v;
            for (std::size_t i = 0; i < n; ++i) {
                std::memcpy(&v, bytes.data() + i * 2, 2);
                out[i] = static_cast<float>(v);
            }
            break;
        }
        case 12: {
            std::uint16_t v;
            for (std::size_t i = 0; i < n; ++i) {
                std::memcpy(&v, bytes.data() + i * 2, 2);
                out[i] = static_cast<float>(v);
            }
            break;
        }
        case 4:
            std::memcpy(out.data(), bytes.data(), n * 4);
            break;
        default:
            throw UnsupportedFormatError("unsupported data type");
    }
    return out;
}

void write_envi_header(const std::filesystem::path& path, std::int64_t samples,
                       std::int64_t lines, std::int64_t bands, int data_type) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write header file " + path.string());
    out << "ENVI\n"
        << "samples = " << samples << "\n"
        << "lines = " << lines << "\n"
        << "bands = " << bands << "\n"
        << "header offset = 0\n"
        << "data type = " << data_type << "\n"
        << "interleave = bsq\n"
        << "byte order = 0\n";
    if (!out) throw FormatError("failed writing header file " + path.string());
}

std::filesystem::path raw_path_for(const std::filesystem::path& header_path) {
    std::filesystem::path raw = header_path;
    raw.replace_extension(".raw");
    return raw;
}

}  // namespace

std::vector<std::int64_t> LabelRaster::class_counts() const {
    std::vector<std::int64_t> counts(num_classes, 0);
    for (int v : labels) {
        if (v > 0) ++counts[v - 1];
    }
    return counts;
}

void PixelDataset::append(std::span<const float> sig, int label, std::int64_t pixel_index) {
    signatures.insert(signatures.end(), sig.begin(), sig.end());
    labels.push_back(label);
    pixel_indices.push_back(pixel_index);
}

void PixelDataset::reserve(std::size_t records) {
    signatures.reserve(records * static_cast<std::size_t>(bands));
    labels.reserve(records);
    pixel_indices.reserve(records);
}

std::vector<std::int64_t> PixelDataset::class_counts() const {
    std::vector<std::int64_t> counts(num_classes, 0);
    for (int v : labels) ++counts[v - 1];
    return counts;
}

SpectralCube load_envi_cube(const std::filesystem::path& header_path) {
    RasterLayout lay = parse_layout(header_path);
    auto raw = locate_raw_file(header_path);
    auto bytes = read_raw_bytes(raw, static_cast<std::size_t>(lay.element_count()) * lay.element_size());
    if (lay.byte_order == 1) swap_elements(bytes, lay.element_size());

    SpectralCube cube;
    cube.lines = static_cast<int>(lay.lines);
    cube.samples = static_cast<int>(lay.samples);
    cube.bands = static_cast<int>(lay.bands);
    cube.values = decode_elements(bytes, lay);

    if (lay.data_type == 4) {
        for (float v : cube.values) {
            if (!std::isfinite(v)) {
                throw FormatError("raw file " + raw.string() + " contains non-finite values");
            }
        }
    }
    return cube;
}

LabelRaster load_label_raster(const std::filesystem::path& header_path) {
    RasterLayout lay = parse_layout(header_path);
    if (lay.bands != 1) {
        throw FormatError("label raster " + header_path.string() + " must have exactly 1 band, got " +
                          std::to_string(lay.bands));
    }
    auto raw = locate_raw_file(header_path);
    auto bytes = read_raw_bytes(raw, static_cast<std::size_t>(lay.element_count()) * lay.element_size());
    if (lay.byte_order == 1) swap_elements(bytes, lay.element_size());
    auto values = decode_elements(bytes, lay);

    LabelRaster gt;
    gt.lines = static_cast<int>(lay.lines);
    gt.samples = static_cast<int>(lay.samples);
    gt.labels.resize(values.size());
    int max_label = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        float v = values[i];
        if (v < 0.0f) {
            throw FormatError("label raster " + header_path.string() + " contains a negative label");
        }
        if (v != std::floor(v)) {
            throw FormatError("label raster " + header_path.string() + " contains a non-integer label");
        }
        gt.labels[i] = static_cast<int>(v);
        max_label = std::max(max_label, gt.labels[i]);
    }
    gt.num_classes = max_label;
    return gt;
}

void save_envi_cube(const SpectralCube& cube, const std::filesystem::path& header_path) {
    const auto expected =
        static_cast<std::size_t>(cube.pixel_count()) * static_cast<std::size_t>(cube.bands);
    if (cube.values.size() != expected) {
        throw InvalidArgument("cube value count does not match its dimensions");
    }
    write_envi_header(header_path, cube.samples, cube.lines, cube.bands, 4);
    auto raw = raw_path_for(header_path);
    std::ofstream out(raw, std::ios::binary);
    if (!out) throw FormatError("cannot write raw file " + raw.string());
    out.write(reinterpret_cast<const char*>(cube.values.data()),
              static_cast<std::streamsize>(cube.values.size() * sizeof(float)));
    if (!out) throw FormatError("failed writing raw file " + raw.string());
}

void save_label_raster(const LabelRaster& gt, const std::filesystem::path& header_path) {
    if (gt.labels.size() != static_cast<std::size_t>(gt.pixel_count())) {
        throw InvalidArgument("label count does not match raster dimensions");
    }
    write_envi_header(header_path, gt.samples, gt.lines, 1, 12);
    std::vector<std::uint16_t> packed(gt.labels.size());
    for (std::size_t i = 0; i < gt.labels.size(); ++i) {
        if (gt.labels[i] < 0 || gt.labels[i] > 65535) {
            throw InvalidArgument("label out of uint16 range: " + std::to_string(gt.labels[i]));
        }
        packed[i] = static_cast<std::uint16_t>(gt.labels[i]);
    }
    auto raw = raw_path_for(header_path);
    std::ofstream out(raw, std::ios::binary);
    if (!out) throw FormatError("cannot write raw file " + raw.string());
    out.write(reinterpret_cast<const char*>(packed.data()),
              static_cast<std::streamsize>(packed.size() * sizeof(std::uint16_t)));
    if (!out) throw FormatError("failed writing raw file " + raw.string());
}

PixelDataset load_csv_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open CSV file " + path.string());

    PixelDataset ds;
    std::string line;
    std::int64_t row = 0;
    std::vector<float> sig;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        sig.clear();
        std::size_t pos = 0;
        int field = 0;
        int label = 0;
        while (pos <= line.size()) {
            auto comma = line.find(',', pos);
            std::string cell = trim(line.substr(pos, comma == std::string::npos
                                                         ? std::string::npos
                                                         : comma - pos));
            if (cell.empty()) {
                throw FormatError(path.string() + ": empty field in row " + std::to_string(row));
            }
            if (field == 0) {
                auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), label);
                if (ec != std::errc{} || p != cell.data() + cell.size()) {
                    throw FormatError(path.string() + ": non-integer label in row " + std::to_string(row));
                }
                if (label <= 0) {
                    throw FormatError(path.string() + ": label must be >= 1 in row " + std::to_string(row));
                }
            } else {
                float v = 0.0f;
                auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
                if (ec != std::errc{} || p != cell.data() + cell.size()) {
                    throw FormatError(path.string() + ": non-numeric value in row " + std::to_string(row));
                }
                sig.push_back(v);
            }
            ++field;
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (sig.empty()) {
            throw FormatError(path.string() + ": row " + std::to_string(row) + " has no values");
        }
        if (ds.bands == 0) {
            ds.bands = static_cast<int>(sig.size());
        } else if (static_cast<int>(sig.size()) != ds.bands) {
            throw FormatError(path.string() + ": row " + std::to_string(row) + " has " +
                              std::to_string(sig.size()) + " values, expected " +
                              std::to_string(ds.bands));
        }
        ds.append(sig, label, row);
        ds.num_classes = std::max(ds.num_classes, label);
        ++row;
    }
    if (ds.size() == 0) throw FormatError(path.string() + ": no records");
    return ds;
}

void write_csv_dataset(const PixelDataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write CSV file " + path.string());
    std::ostringstream os;
    os.precision(9);  // round-trips float32 exactly
    for (std::size_t i = 0; i < ds.size(); ++i) {
        os.str({});
        os << ds.labels[i];
        for (float v : ds.signature(i)) os << ',' << v;
        out << os.str() << '\n';
    }
    if (!out) throw FormatError("failed writing CSV file " + path.string());
}

PixelDataset extract_labeled_pixels(const SpectralCube& cube, const LabelRaster& gt) {
    if (cube.lines != gt.lines || cube.samples != gt.samples) {
        throw InvalidArgument("cube is " + std::to_string(cube.lines) + "x" +
                              std::to_string(cube.samples) + " but ground truth is " +
                              std::to_string(gt.lines) + "x" + std::to_string(gt.samples));
    }
    const std::int64_t pixels = cube.pixel_count();
    std::int64_t labeled = 0;
    for (int v : gt.labels) {
        if (v != 0) ++labeled;
    }

    PixelDataset ds;
    ds.bands = cube.bands;
    ds.num_classes = gt.num_classes;
    ds.reserve(static_cast<std::size_t>(labeled));

    std::vector<float> sig(cube.bands);
    for (std::int64_t p = 0; p < pixels; ++p) {
        int label = gt.labels[static_cast<std::size_t>(p)];
        if (label == 0) continue;
        for (int b = 0; b < cube.bands; ++b) sig[static_cast<std::size_t>(b)] = cube.at(b, p);
        ds.append(sig, label, p);
    }
    return ds;
}

BandStats fit_band_stats(const PixelDataset& train) {
    if (train.size() == 0) throw InvalidArgument("cannot fit band statistics on an empty dataset");
    const int bands = train.bands;
    const auto n = static_cast<double>(train.size());

    BandStats stats;
    stats.mean.assign(bands, 0.0);
    stats.stddev.assign(bands, 0.0);

    for (std::size_t i = 0; i < train.size(); ++i) {
        auto sig = train.signature(i);
        for (int b = 0; b < bands; ++b) stats.mean[b] += sig[b];
    }
    for (int b = 0; b < bands; ++b) stats.mean[b] /= n;

    for (std::size_t i = 0; i < train.size(); ++i) {
        auto sig = train.signature(i);
        for (int b = 0; b < bands; ++b) {
            double d = sig[b] - stats.mean[b];
            stats.stddev[b] += d * d;
        }
    }
    for (int b = 0; b < bands; ++b) {
        stats.stddev[b] = std::max(std::sqrt(stats.stddev[b] / n), kStddevFloor);
    }
    return stats;
}

PixelDataset apply_standardization(const PixelDataset& ds, const BandStats& stats) {
    if (stats.bands() != ds.bands) {
        throw InvalidArgument("band statistics cover " + std::to_string(stats.bands()) +
                              " bands but dataset has " + std::to_string(ds.bands));
    }
    PixelDataset out = ds;
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto sig = out.signature(i);
        for (int b = 0; b < out.bands; ++b) {
            sig[b] = static_cast<float>((static_cast<double>(sig[b]) - stats.mean[b]) / stats.stddev[b]);
        }
    }
    return out;
}

}  // namespace hsifc
