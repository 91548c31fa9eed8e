#include "hsifc/nn_core.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "hsifc/errors.hpp"
#include "hsifc/rng.hpp"

namespace hsifc {

namespace {

template <typename S>
struct ForwardCacheT {
    std::vector<MatX<S>> activations;  // input of each hidden block, then of the output layer
    std::vector<MatX<S>> normalized;   // xhat per hidden block
    std::vector<VecX<S>> rstd;         // 1/sqrt(var + eps) per hidden block
};

template <typename S>
void check_batch(const NetworkT<S>& net, const MatX<S>& batch, bool training) {
    if (batch.cols() != net.spec.input_size) {
        throw InvalidArgument("batch has " + std::to_string(batch.cols()) +
                              " columns but the network expects " +
                              std::to_string(net.spec.input_size));
    }
    if (training && batch.rows() < 2) {
        throw InvalidArgument("training-mode forward needs at least 2 records for batch statistics");
    }
}

template <typename S>
void check_labels(const MatX<S>& batch, const std::vector<int>& labels, int num_classes) {
    if (static_cast<Eigen::Index>(labels.size()) != batch.rows()) {
        throw InvalidArgument("label count does not match batch rows");
    }
    for (int l : labels) {
        if (l < 1 || l > num_classes) {
            throw InvalidArgument("label " + std::to_string(l) + " outside 1.." +
                                  std::to_string(num_classes));
        }
    }
}

// Core forward over all blocks. Never mutates net; in training mode the
// per-block batch means/vars are reported through the out-parameters so the
// mutating wrappers can fold them into the running statistics.
template <typename S>
MatX<S> forward_pass(const NetworkT<S>& net, const MatX<S>& batch, bool training,
                     ForwardCacheT<S>* cache, std::vector<VecX<S>>* batch_means,
                     std::vector<VecX<S>>* batch_vars) {
    const auto n = static_cast<S>(batch.rows());
    MatX<S> x = batch;
    if (cache) cache->activations.push_back(x);

    for (const auto& blk : net.blocks) {
        MatX<S> z = x * blk.weight.transpose();
        z.rowwise() += blk.bias.transpose();

        VecX<S> mean;
        VecX<S> var;
        if (training) {
            mean = z.colwise().mean().transpose();
            MatX<S> centered = z.rowwise() - mean.transpose();
            var = (centered.array().square().colwise().sum() / n).matrix().transpose();
            if (batch_means) batch_means->push_back(mean);
            if (batch_vars) batch_vars->push_back(var);
        } else {
            mean = blk.running_mean;
            var = blk.running_var;
        }

        VecX<S> rstd = (var.array() + static_cast<S>(net.spec.bn_epsilon)).rsqrt().matrix();
        MatX<S> xhat = z.rowwise() - mean.transpose();
        xhat.array().rowwise() *= rstd.transpose().array();

        MatX<S> y = xhat;
        y.array().rowwise() *= blk.gamma.transpose().array();
        y.rowwise() += blk.beta.transpose();
        x = y.cwiseMax(S(0));

        if (cache) {
            cache->normalized.push_back(std::move(xhat));
            cache->rstd.push_back(std::move(rstd));
            cache->activations.push_back(x);
        }
    }

    MatX<S> logits = x * net.out_weight.transpose();
    logits.rowwise() += net.out_bias.transpose();
    return logits;
}

template <typename S>
void update_running_stats(NetworkT<S>& net, const std::vector<VecX<S>>& means,
                          const std::vector<VecX<S>>& vars) {
    const S mom = static_cast<S>(net.spec.bn_momentum);
    for (std::size_t k = 0; k < net.blocks.size(); ++k) {
        auto& blk = net.blocks[k];
        blk.running_mean = mom * blk.running_mean + (S(1) - mom) * means[k];
        blk.running_var = mom * blk.running_var + (S(1) - mom) * vars[k];
    }
}

// Mean of -log softmax(logits)[label], max-subtracted for stability.
// When dlogits is given it receives d(loss)/d(logits) = (softmax - onehot)/N.
template <typename S>
S softmax_cross_entropy(const MatX<S>& logits, const std::vector<int>& labels, MatX<S>* dlogits) {
    const auto n = logits.rows();
    if (dlogits) dlogits->resize(logits.rows(), logits.cols());
    S total = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const S mx = logits.row(i).maxCoeff();
        const auto shifted = (logits.row(i).array() - mx).eval();
        const S denom = shifted.exp().sum();
        const int cls = labels[static_cast<std::size_t>(i)] - 1;
        total += std::log(denom) - shifted(cls);
        if (dlogits) {
            dlogits->row(i) = (shifted.exp() / denom).matrix();
            (*dlogits)(i, cls) -= S(1);
        }
    }
    if (dlogits) *dlogits /= static_cast<S>(n);
    return total / static_cast<S>(n);
}

}  // namespace

template <typename S>
NetworkT<S> init_network(const NetworkSpec& spec, std::uint64_t seed) {
    if (spec.input_size < 1 || spec.output_size < 1) {
        throw InvalidArgument("network needs positive input and output sizes");
    }
    for (int h : spec.hidden_sizes) {
        if (h < 1) throw InvalidArgument("hidden sizes must be positive");
    }
    if (!(spec.bn_epsilon > 0.0)) throw InvalidArgument("bn_epsilon must be positive");
    if (!(spec.bn_momentum > 0.0 && spec.bn_momentum < 1.0)) {
        throw InvalidArgument("bn_momentum must lie strictly between 0 and 1");
    }

    NetworkT<S> net;
    net.spec = spec;
    net.mode = Mode::training;

    Rng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto fill_dense = [&](MatX<S>& w, int out, int in) {
        w.resize(out, in);
        const double scale = std::sqrt(2.0 / in);
        for (int i = 0; i < out; ++i) {
            for (int j = 0; j < in; ++j) w(i, j) = static_cast<S>(scale * normal(rng));
        }
    };

    int in = spec.input_size;
    for (int h : spec.hidden_sizes) {
        HiddenBlockT<S> blk;
        fill_dense(blk.weight, h, in);
        blk.bias = VecX<S>::Zero(h);
        blk.gamma = VecX<S>::Ones(h);
        blk.beta = VecX<S>::Zero(h);
        blk.running_mean = VecX<S>::Zero(h);
        blk.running_var = VecX<S>::Ones(h);
        net.blocks.push_back(std::move(blk));
        in = h;
    }
    fill_dense(net.out_weight, spec.output_size, in);
    net.out_bias = VecX<S>::Zero(spec.output_size);
    return net;
}

std::int64_t trainable_parameter_count(const NetworkSpec& spec) {
    std::int64_t total = 0;
    std::int64_t in = spec.input_size;
    for (int h : spec.hidden_sizes) {
        total += in * h + h + 2 * h;  // dense W + b, then gamma + beta
        in = h;
    }
    total += in * spec.output_size + spec.output_size;
    return total;
}

template <typename S>
MatX<S> forward(NetworkT<S>& net, const MatX<S>& batch) {
    const bool training = net.mode == Mode::training;
    check_batch(net, batch, training);
    if (!training) return forward_pass<S>(net, batch, false, nullptr, nullptr, nullptr);

    std::vector<VecX<S>> means;
    std::vector<VecX<S>> vars;
    MatX<S> logits = forward_pass<S>(net, batch, true, nullptr, &means, &vars);
    update_running_stats(net, means, vars);
    return logits;
}

template <typename S>
MatX<S> forward_inference(const NetworkT<S>& net, const MatX<S>& batch) {
    check_batch(net, batch, false);
    return forward_pass<S>(net, batch, false, nullptr, nullptr, nullptr);
}

template <typename S>
std::pair<S, GradientsT<S>> loss_and_gradients(NetworkT<S>& net, const MatX<S>& batch,
                                               const std::vector<int>& labels) {
    if (net.mode != Mode::training) {
        throw InvalidArgument("loss_and_gradients requires training mode");
    }
    check_batch(net, batch, true);
    check_labels(batch, labels, net.spec.output_size);

    ForwardCacheT<S> cache;
    std::vector<VecX<S>> means;
    std::vector<VecX<S>> vars;
    MatX<S> logits = forward_pass<S>(net, batch, true, &cache, &means, &vars);
    update_running_stats(net, means, vars);

    MatX<S> dlogits;
    const S loss = softmax_cross_entropy(logits, labels, &dlogits);

    GradientsT<S> g = zero_gradients_like(net);
    const std::size_t num_blocks = net.blocks.size();
    g.out_weight = dlogits.transpose() * cache.activations[num_blocks];
    g.out_bias = dlogits.colwise().sum().transpose();
    MatX<S> dx = dlogits * net.out_weight;

    for (std::size_t k = num_blocks; k-- > 0;) {
        const auto& blk = net.blocks[k];
        const MatX<S>& a_out = cache.activations[k + 1];
        const MatX<S>& xhat = cache.normalized[k];
        const VecX<S>& rstd = cache.rstd[k];

        // relu gate: a_out > 0 exactly where the pre-relu value was positive
        MatX<S> dy = ((a_out.array() > S(0)).template cast<S>() * dx.array()).matrix();
        g.blocks[k].beta = dy.colwise().sum().transpose();
        g.blocks[k].gamma = (dy.array() * xhat.array()).colwise().sum().matrix().transpose();

        MatX<S> dxhat = dy;
        dxhat.array().rowwise() *= blk.gamma.transpose().array();

        // batch-norm backward through the batch-statistics path:
        // dz = rstd * (dxhat - mean(dxhat) - xhat * mean(dxhat*xhat))
        VecX<S> mean_dxhat = dxhat.colwise().mean().transpose();
        VecX<S> mean_dxhat_xhat = (dxhat.array() * xhat.array()).colwise().mean().matrix().transpose();
        MatX<S> dz = xhat;
        dz.array().rowwise() *= mean_dxhat_xhat.transpose().array();
        dz = dxhat - dz;
        dz.rowwise() -= mean_dxhat.transpose();
        dz.array().rowwise() *= rstd.transpose().array();

        g.blocks[k].weight = dz.transpose() * cache.activations[k];
        g.blocks[k].bias = dz.colwise().sum().transpose();
        dx = dz * blk.weight;
    }
    return {loss, std::move(g)};
}

template <typename S>
S loss_only(const NetworkT<S>& net, const MatX<S>& batch, const std::vector<int>& labels,
            bool use_batch_stats) {
    check_batch(net, batch, use_batch_stats);
    check_labels(batch, labels, net.spec.output_size);
    MatX<S> logits = forward_pass<S>(net, batch, use_batch_stats, nullptr, nullptr, nullptr);
    return softmax_cross_entropy<S>(logits, labels, nullptr);
}

template <typename S>
GradientsT<S> zero_gradients_like(const NetworkT<S>& net) {
    GradientsT<S> g;
    g.blocks.reserve(net.blocks.size());
    for (const auto& blk : net.blocks) {
        BlockGradsT<S> bg;
        bg.weight = MatX<S>::Zero(blk.weight.rows(), blk.weight.cols());
        bg.bias = VecX<S>::Zero(blk.bias.size());
        bg.gamma = VecX<S>::Zero(blk.gamma.size());
        bg.beta = VecX<S>::Zero(blk.beta.size());
        g.blocks.push_back(std::move(bg));
    }
    g.out_weight = MatX<S>::Zero(net.out_weight.rows(), net.out_weight.cols());
    g.out_bias = VecX<S>::Zero(net.out_bias.size());
    return g;
}

template <typename S>
OptimizerStateT<S> make_optimizer_state(const NetworkT<S>& net) {
    OptimizerStateT<S> state;
    state.m = zero_gradients_like(net);
    state.v = zero_gradients_like(net);
    state.t = 0;
    return state;
}

template <typename S>
std::vector<std::span<S>> trainable_spans(NetworkT<S>& net) {
    std::vector<std::span<S>> spans;
    spans.reserve(net.blocks.size() * 4 + 2);
    for (auto& blk : net.blocks) {
        spans.emplace_back(blk.weight.data(), static_cast<std::size_t>(blk.weight.size()));
        spans.emplace_back(blk.bias.data(), static_cast<std::size_t>(blk.bias.size()));
        spans.emplace_back(blk.gamma.data(), static_cast<std::size_t>(blk.gamma.size()));
        spans.emplace_back(blk.beta.data(), static_cast<std::size_t>(blk.beta.size()));
    }
    spans.emplace_back(net.out_weight.data(), static_cast<std::size_t>(net.out_weight.size()));
    spans.emplace_back(net.out_bias.data(), static_cast<std::size_t>(net.out_bias.size()));
    return spans;
}

template <typename S>
std::vector<std::span<S>> gradient_spans(GradientsT<S>& g) {
    std::vector<std::span<S>> spans;
    spans.reserve(g.blocks.size() * 4 + 2);
    for (auto& blk : g.blocks) {
        spans.emplace_back(blk.weight.data(), static_cast<std::size_t>(blk.weight.size()));
        spans.emplace_back(blk.bias.data(), static_cast<std::size_t>(blk.bias.size()));
        spans.emplace_back(blk.gamma.data(), static_cast<std::size_t>(blk.gamma.size()));
        spans.emplace_back(blk.beta.data(), static_cast<std::size_t>(blk.beta.size()));
    }
    spans.emplace_back(g.out_weight.data(), static_cast<std::size_t>(g.out_weight.size()));
    spans.emplace_back(g.out_bias.data(), static_cast<std::size_t>(g.out_bias.size()));
    return spans;
}

template <typename S>
std::vector<std::span<const S>> gradient_spans(const GradientsT<S>& g) {
    std::vector<std::span<const S>> spans;
    spans.reserve(g.blocks.size() * 4 + 2);
    for (const auto& blk : g.blocks) {
        spans.emplace_back(blk.weight.data(), static_cast<std::size_t>(blk.weight.size()));
        spans.emplace_back(blk.bias.data(), static_cast<std::size_t>(blk.bias.size()));
        spans.emplace_back(blk.gamma.data(), static_cast<std::size_t>(blk.gamma.size()));
        spans.emplace_back(blk.beta.data(), static_cast<std::size_t>(blk.beta.size()));
    }
    spans.emplace_back(g.out_weight.data(), static_cast<std::size_t>(g.out_weight.size()));
    spans.emplace_back(g.out_bias.data(), static_cast<std::size_t>(g.out_bias.size()));
    return spans;
}

template <typename S>
void adam_step(NetworkT<S>& net, const GradientsT<S>& grads, OptimizerStateT<S>& state,
               const TrainConfig& cfg) {
    auto params = trainable_spans(net);
    auto g = gradient_spans(grads);
    auto m = gradient_spans(state.m);
    auto v = gradient_spans(state.v);
    if (g.size() != params.size() || m.size() != params.size()) {
        throw InvalidArgument("gradient or optimizer shapes do not match the network");
    }

    state.t += 1;
    const S b1 = static_cast<S>(cfg.beta1);
    const S b2 = static_cast<S>(cfg.beta2);
    const S lr = static_cast<S>(cfg.learning_rate);
    const S eps = static_cast<S>(cfg.adam_epsilon);
    const S bc1 = static_cast<S>(1.0 - std::pow(cfg.beta1, static_cast<double>(state.t)));
    const S bc2 = static_cast<S>(1.0 - std::pow(cfg.beta2, static_cast<double>(state.t)));

    for (std::size_t i = 0; i < params.size(); ++i) {
        if (g[i].size() != params[i].size()) {
            throw InvalidArgument("gradient span size does not match parameter span");
        }
        for (std::size_t j = 0; j < params[i].size(); ++j) {
            const S gj = g[i][j];
            m[i][j] = b1 * m[i][j] + (S(1) - b1) * gj;
            v[i][j] = b2 * v[i][j] + (S(1) - b2) * gj * gj;
            const S mhat = m[i][j] / bc1;
            const S vhat = v[i][j] / bc2;
            params[i][j] -= lr * mhat / (std::sqrt(vhat) + eps);
        }
    }
}

template <typename S>
TrainReport train(NetworkT<S>& net, const PixelDataset& train_set, const TrainConfig& cfg) {
    if (cfg.epochs < 0) throw InvalidArgument("epochs must be >= 0");
    if (cfg.batch_size < 2) {
        throw InvalidArgument("batch_size must be >= 2 for batch statistics");
    }
    if (static_cast<std::size_t>(cfg.batch_size) > train_set.size()) {
        throw InvalidArgument("batch_size exceeds training-set size");
    }
    if (train_set.bands != net.spec.input_size) {
        throw InvalidArgument("training set has " + std::to_string(train_set.bands) +
                              " bands but the network expects " +
                              std::to_string(net.spec.input_size));
    }
    for (int l : train_set.labels) {
        if (l < 1 || l > net.spec.output_size) {
            throw InvalidArgument("training label " + std::to_string(l) + " outside 1.." +
                                  std::to_string(net.spec.output_size));
        }
    }

    const auto t0 = std::chrono::steady_clock::now();
    net.mode = Mode::training;
    auto state = make_optimizer_state(net);
    TrainReport report;

    std::vector<std::size_t> order(train_set.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(cfg.shuffle_seed);

    const auto batch_size = static_cast<std::size_t>(cfg.batch_size);
    MatX<S> batch;
    std::vector<int> labels;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        double loss_sum = 0.0;
        std::size_t records_seen = 0;
        for (std::size_t start = 0; start < order.size(); start += batch_size) {
            const std::size_t n = std::min(batch_size, order.size() - start);
            if (n < 2) break;  // trailing singleton: no batch variance, dropped
            batch.resize(static_cast<Eigen::Index>(n), train_set.bands);
            labels.resize(n);
            for (std::size_t r = 0; r < n; ++r) {
                const std::size_t src = order[start + r];
                auto sig = train_set.signature(src);
                for (int b = 0; b < train_set.bands; ++b) {
                    batch(static_cast<Eigen::Index>(r), b) = static_cast<S>(sig[b]);
                }
                labels[r] = train_set.labels[src];
            }
            auto [loss, grads] = loss_and_gradients(net, batch, labels);
            adam_step(net, grads, state, cfg);
            loss_sum += static_cast<double>(loss) * static_cast<double>(n);
            records_seen += n;
        }
        report.epoch_losses.push_back(loss_sum / static_cast<double>(records_seen));
    }

    net.mode = Mode::inference;
    auto preds = predict(net, train_set);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (preds[i] == train_set.labels[i]) ++correct;
    }
    report.final_train_accuracy =
        static_cast<double>(correct) / static_cast<double>(train_set.size());
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

template <typename S>
std::vector<int> predict(const NetworkT<S>& net, const PixelDataset& ds) {
    if (net.mode != Mode::inference) throw InvalidArgument("predict requires inference mode");
    if (ds.bands != net.spec.input_size) {
        throw InvalidArgument("dataset has " + std::to_string(ds.bands) +
                              " bands but the network expects " +
                              std::to_string(net.spec.input_size));
    }

    constexpr std::size_t chunk = 1024;
    const int num_classes = net.spec.output_size;
    std::vector<int> out(ds.size());
    MatX<S> batch;
    for (std::size_t start = 0; start < ds.size(); start += chunk) {
        const std::size_t n = std::min(chunk, ds.size() - start);
        batch.resize(static_cast<Eigen::Index>(n), ds.bands);
        for (std::size_t r = 0; r < n; ++r) {
            auto sig = ds.signature(start + r);
            for (int b = 0; b < ds.bands; ++b) {
                batch(static_cast<Eigen::Index>(r), b) = static_cast<S>(sig[b]);
            }
        }
        MatX<S> logits = forward_pass<S>(net, batch, false, nullptr, nullptr, nullptr);
        for (std::size_t r = 0; r < n; ++r) {
            int best = 0;
            for (int c = 1; c < num_classes; ++c) {
                if (logits(static_cast<Eigen::Index>(r), c) >
                    logits(static_cast<Eigen::Index>(r), best)) {
                    best = c;  // strict > keeps the lowest index on ties
                }
            }
            out[start + r] = best + 1;
        }
    }
    return out;
}

double max_relative_gradient_error(const NetworkT<double>& net, const MatX<double>& batch,
                                   const std::vector<int>& labels,
                                   const GradientsT<double>& analytic) {
    NetworkT<double> probe = net;
    auto params = trainable_spans(probe);
    auto a = gradient_spans(analytic);
    if (a.size() != params.size()) {
        throw InvalidArgument("analytic gradient shapes do not match the network");
    }

    constexpr double h = 1e-5;
    double max_err = 0.0;
    for (std::size_t i = 0; i < params.size(); ++i) {
        for (std::size_t j = 0; j < params[i].size(); ++j) {
            const double orig = params[i][j];
            params[i][j] = orig + h;
            const double lp = loss_only(probe, batch, labels, true);
            params[i][j] = orig - h;
            const double lm = loss_only(probe, batch, labels, true);
            params[i][j] = orig;
            double numeric = (lp - lm) / (2.0 * h);
            // central differences cannot resolve slopes below the roundoff of the
            // two loss evaluations; inside that band the measurement is zero
            const double fd_noise = 32.0 * std::numeric_limits<double>::epsilon() *
                                    std::max(std::abs(lp), std::abs(lm)) / (2.0 * h);
            if (std::abs(numeric) <= fd_noise) {
                numeric = 0.0;
            }
            const double denom = std::max(std::abs(a[i][j]) + std::abs(numeric), 1e-8);
            max_err = std::max(max_err, std::abs(a[i][j] - numeric) / denom);
        }
    }
    return max_err;
}

double gradient_check(const NetworkSpec& spec, std::uint64_t seed, const MatX<double>& batch,
                      const std::vector<int>& labels) {
    if (trainable_parameter_count(spec) > 5000) {
        throw InvalidArgument("gradient_check is limited to networks with <= 5000 parameters");
    }
    auto net = init_network<double>(spec, seed);
    NetworkT<double> scratch = net;  // running-stat updates stay off the probed net
    auto [loss, grads] = loss_and_gradients(scratch, batch, labels);
    (void)loss;
    return max_relative_gradient_error(net, batch, labels, grads);
}

template NetworkT<float> init_network<float>(const NetworkSpec&, std::uint64_t);
template NetworkT<double> init_network<double>(const NetworkSpec&, std::uint64_t);
template MatX<float> forward<float>(NetworkT<float>&, const MatX<float>&);
template MatX<double> forward<double>(NetworkT<double>&, const MatX<double>&);
template MatX<float> forward_inference<float>(const NetworkT<float>&, const MatX<float>&);
template MatX<double> forward_inference<double>(const NetworkT<double>&, const MatX<double>&);
template std::pair<float, GradientsT<float>> loss_and_gradients<float>(
    NetworkT<float>&, const MatX<float>&, const std::vector<int>&);
template std::pair<double, GradientsT<double>> loss_and_gradients<double>(
    NetworkT<double>&, const MatX<double>&, const std::vector<int>&);
template float loss_only<float>(const NetworkT<float>&, const MatX<float>&,
                                const std::vector<int>&, bool);
template double loss_only<double>(const NetworkT<double>&, const MatX<double>&,
                                  const std::vector<int>&, bool);
template GradientsT<float> zero_gradients_like<float>(const NetworkT<float>&);
template GradientsT<double> zero_gradients_like<double>(const NetworkT<double>&);
template OptimizerStateT<float> make_optimizer_state<float>(const NetworkT<float>&);
template OptimizerStateT<double> make_optimizer_state<double>(const NetworkT<double>&);
template void adam_step<float>(NetworkT<float>&, const GradientsT<float>&,
                               OptimizerStateT<float>&, const TrainConfig&);
template void adam_step<double>(NetworkT<double>&, const GradientsT<double>&,
                                OptimizerStateT<double>&, const TrainConfig&);
template TrainReport train<float>(NetworkT<float>&, const PixelDataset&, const TrainConfig&);
template TrainReport train<double>(NetworkT<double>&, const PixelDataset&, const TrainConfig&);
template std::vector<int> predict<float>(const NetworkT<float>&, const PixelDataset&);
template std::vector<int> predict<double>(const NetworkT<double>&, const PixelDataset&);
template std::vector<std::span<float>> trainable_spans<float>(NetworkT<float>&);
template std::vector<std::span<double>> trainable_spans<double>(NetworkT<double>&);
template std::vector<std::span<float>> gradient_spans<float>(GradientsT<float>&);
template std::vector<std::span<double>> gradient_spans<double>(GradientsT<double>&);
template std::vector<std::span<const float>> gradient_spans<float>(const GradientsT<float>&);
template std::vector<std::span<const double>> gradient_spans<double>(const GradientsT<double>&);

}  // namespace hsifc
