#include "hsifc/model_io.hpp"

#include <cstring>
#include <fstream>
#include <limits>
#include <vector>

#include "hsifc/errors.hpp"

namespace hsifc {

namespace {

constexpr std::uint32_t kMaxDim = 1u << 20;  // rejects absurd dims from corrupt files
constexpr std::uint32_t kMaxHidden = 256;

class Writer {
public:
    explicit Writer(const std::filesystem::path& path) : out_(path, std::ios::binary) {
        if (!out_) throw FormatError("cannot write model file " + path.string());
        path_ = path.string();
    }
    template <typename T>
    void pod(T v) {
        out_.write(reinterpret_cast<const char*>(&v), sizeof(T));
    }
    template <typename T>
    void array(const T* data, std::size_t count) {
        out_.write(reinterpret_cast<const char*>(data),
                   static_cast<std::streamsize>(count * sizeof(T)));
    }
    void finish() {
        out_.flush();
        if (!out_) throw FormatError("failed writing model file " + path_);
    }

private:
    std::ofstream out_;
    std::string path_;
};

class Reader {
public:
    Reader(std::vector<char> bytes, std::string path)
        : bytes_(std::move(bytes)), path_(std::move(path)) {}

    template <typename T>
    T pod() {
        T v;
        take(reinterpret_cast<char*>(&v), sizeof(T));
        return v;
    }
    template <typename T>
    void array(T* data, std::size_t count) {
        take(reinterpret_cast<char*>(data), count * sizeof(T));
    }
    void expect_eof() const {
        if (pos_ != bytes_.size()) {
            throw FormatError("model file " + path_ + " has trailing bytes");
        }
    }

private:
    void take(char* dst, std::size_t n) {
        if (bytes_.size() - pos_ < n) {
            throw FormatError("model file " + path_ + " is truncated");
        }
        std::memcpy(dst, bytes_.data() + pos_, n);
        pos_ += n;
    }

    std::vector<char> bytes_;
    std::string path_;
    std::size_t pos_ = 0;
};

std::uint32_t checked_dim(std::uint32_t v, const std::string& what, const std::string& path) {
    if (v == 0 || v > kMaxDim) {
        throw FormatError("model file " + path + ": implausible " + what + " " + std::to_string(v));
    }
    return v;
}

}  // namespace

void save_model(const Network& net, const BandStats& stats, const std::filesystem::path& path) {
    if (stats.bands() != net.spec.input_size) {
        throw InvalidArgument("band stats cover " + std::to_string(stats.bands()) +
                              " bands but the network expects " +
                              std::to_string(net.spec.input_size));
    }
    if (net.blocks.size() != net.spec.hidden_sizes.size()) {
        throw InvalidArgument("network block count does not match its spec");
    }

    Writer w(path);
    w.array(kModelMagic, 4);
    w.pod(kModelVersion);
    w.pod(static_cast<std::uint32_t>(net.spec.input_size));
    w.pod(static_cast<std::uint32_t>(net.spec.hidden_sizes.size()));
    for (int h : net.spec.hidden_sizes) w.pod(static_cast<std::uint32_t>(h));
    w.pod(static_cast<std::uint32_t>(net.spec.output_size));
    w.pod(net.spec.bn_epsilon);
    w.pod(net.spec.bn_momentum);

    for (const auto& blk : net.blocks) {
        w.array(blk.weight.data(), static_cast<std::size_t>(blk.weight.size()));
        w.array(blk.bias.data(), static_cast<std::size_t>(blk.bias.size()));
        w.array(blk.gamma.data(), static_cast<std::size_t>(blk.gamma.size()));
        w.array(blk.beta.data(), static_cast<std::size_t>(blk.beta.size()));
        w.array(blk.running_mean.data(), static_cast<std::size_t>(blk.running_mean.size()));
        w.array(blk.running_var.data(), static_cast<std::size_t>(blk.running_var.size()));
    }
    w.array(net.out_weight.data(), static_cast<std::size_t>(net.out_weight.size()));
    w.array(net.out_bias.data(), static_cast<std::size_t>(net.out_bias.size()));

    w.pod(static_cast<std::uint32_t>(stats.bands()));
    w.array(stats.mean.data(), stats.mean.size());
    w.array(stats.stddev.data(), stats.stddev.size());
    w.finish();
}

std::pair<Network, BandStats> load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open model file " + path.string());
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Reader r(std::move(bytes), path.string());

    char magic[4];
    r.array(magic, 4);
    if (std::memcmp(magic, kModelMagic, 4) != 0) {
        throw FormatError("model file " + path.string() + " has wrong magic bytes");
    }
    const auto version = r.pod<std::uint16_t>();
    if (version != kModelVersion) {
        throw FormatError("model file " + path.string() + " has unsupported version " +
                          std::to_string(version));
    }

    Network net;
    net.spec.input_size =
        static_cast<int>(checked_dim(r.pod<std::uint32_t>(), "input size", path.string()));
    const auto num_hidden = r.pod<std::uint32_t>();
    if (num_hidden > kMaxHidden) {
        throw FormatError("model file " + path.string() + ": implausible hidden layer count " +
                          std::to_string(num_hidden));
    }
    for (std::uint32_t k = 0; k < num_hidden; ++k) {
        net.spec.hidden_sizes.push_back(
            static_cast<int>(checked_dim(r.pod<std::uint32_t>(), "hidden size", path.string())));
    }
    net.spec.output_size =
        static_cast<int>(checked_dim(r.pod<std::uint32_t>(), "output size", path.string()));
    net.spec.bn_epsilon = r.pod<double>();
    net.spec.bn_momentum = r.pod<double>();

    int fan_in = net.spec.input_size;
    for (int h : net.spec.hidden_sizes) {
        HiddenBlockT<float> blk;
        blk.weight.resize(h, fan_in);
        blk.bias.resize(h);
        blk.gamma.resize(h);
        blk.beta.resize(h);
        blk.running_mean.resize(h);
        blk.running_var.resize(h);
        r.array(blk.weight.data(), static_cast<std::size_t>(blk.weight.size()));
        r.array(blk.bias.data(), static_cast<std::size_t>(blk.bias.size()));
        r.array(blk.gamma.data(), static_cast<std::size_t>(blk.gamma.size()));
        r.array(blk.beta.data(), static_cast<std::size_t>(blk.beta.size()));
        r.array(blk.running_mean.data(), static_cast<std::size_t>(blk.running_mean.size()));
        r.array(blk.running_var.data(), static_cast<std::size_t>(blk.running_var.size()));
        net.blocks.push_back(std::move(blk));
        fan_in = h;
    }
    net.out_weight.resize(net.spec.output_size, fan_in);
    net.out_bias.resize(net.spec.output_size);
    r.array(net.out_weight.data(), static_cast<std::size_t>(net.out_weight.size()));
    r.array(net.out_bias.data(), static_cast<std::size_t>(net.out_bias.size()));

    BandStats stats;
    const auto band_count = checked_dim(r.pod<std::uint32_t>(), "band count", path.string());
    if (static_cast<int>(band_count) != net.spec.input_size) {
        throw FormatError("model file " + path.string() + ": band stats cover " +
                          std::to_string(band_count) + " bands, expected " +
                          std::to_string(net.spec.input_size));
    }
    stats.mean.resize(band_count);
    stats.stddev.resize(band_count);
    r.array(stats.mean.data(), stats.mean.size());
    r.array(stats.stddev.data(), stats.stddev.size());
    r.expect_eof();

    net.mode = Mode::inference;
    return {std::move(net), std::move(stats)};
}

}  // namespace hsifc
