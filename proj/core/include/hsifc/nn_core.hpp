#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hsifc/hsi_data.hpp"

namespace hsifc {

template <typename S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using MatXf = MatX<float>;
using MatXd = MatX<double>;

struct NetworkSpec {
    int input_size = 0;
    std::vector<int> hidden_sizes;  // one entry per hidden block
    int output_size = 0;
    double bn_epsilon = 1e-5;
    double bn_momentum = 0.9;
};

/// Weights, biases and affine batch-norm parameters; gamma/beta are
/// trainable, running_mean/running_var are accumulated statistics.
template <typename S>
struct HiddenBlockT {
    MatX<S> weight;  // out x in
    VecX<S> bias;
    VecX<S> gamma;
    VecX<S> beta;
    VecX<S> running_mean;
    VecX<S> running_var;
};

enum class Mode { training, inference };

/// Hidden blocks compute dense -> batch norm -> relu; the output layer is
/// dense only. In training mode batch statistics normalize and the running
/// stats advance as running <- momentum*running + (1-momentum)*batch;
/// inference mode normalizes with the running stats and never mutates them.
template <typename S>
struct NetworkT {
    NetworkSpec spec;
    std::vector<HiddenBlockT<S>> blocks;
    MatX<S> out_weight;  // C x last_hidden
    VecX<S> out_bias;
    Mode mode = Mode::training;
};

using Network = NetworkT<float>;
using NetworkD = NetworkT<double>;

/// Gradients of the trainable parameters (running stats excluded).
template <typename S>
struct BlockGradsT {
    MatX<S> weight;
    VecX<S> bias;
    VecX<S> gamma;
    VecX<S> beta;
};

template <typename S>
struct GradientsT {
    std::vector<BlockGradsT<S>> blocks;
    MatX<S> out_weight;
    VecX<S> out_bias;
};

using Gradients = GradientsT<float>;

struct TrainConfig {
    int epochs = 100;
    int batch_size = 256;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_epsilon = 1e-8;
    std::uint64_t shuffle_seed = 0;
};

template <typename S>
struct OptimizerStateT {
    GradientsT<S> m;
    GradientsT<S> v;
    std::int64_t t = 0;
};

using OptimizerState = OptimizerStateT<float>;

struct TrainReport {
    std::vector<double> epoch_losses;  // record-weighted mean loss per epoch
    double final_train_accuracy = 0.0;
    double wall_seconds = 0.0;
};

/// Dense weights get zero-mean normal draws scaled by sqrt(2 / fan_in);
/// biases and beta start at 0, gamma at 1, running stats at (0, 1).
/// The returned network is in training mode.
template <typename S>
NetworkT<S> init_network(const NetworkSpec& spec, std::uint64_t seed);

/// Weights, bias, gamma, beta per block followed by the output layer.
std::int64_t trainable_parameter_count(const NetworkSpec& spec);

/// Mode-dispatched forward. Training mode requires batch rows >= 2 and
/// advances the running statistics; inference mode leaves net untouched.
template <typename S>
MatX<S> forward(NetworkT<S>& net, const MatX<S>& batch);

/// Inference-mode forward regardless of net.mode; never mutates.
template <typename S>
MatX<S> forward_inference(const NetworkT<S>& net, const MatX<S>& batch);

/// Mean softmax cross-entropy over the batch plus exact analytic gradients
/// through dense, batch-norm (batch-statistics path) and relu. Training mode
/// only; advances running statistics like forward.
template <typename S>
std::pair<S, GradientsT<S>> loss_and_gradients(NetworkT<S>& net, const MatX<S>& batch,
                                               const std::vector<int>& labels);

/// Loss without gradients or running-stat updates. use_batch_stats selects
/// the training-mode normalization path (needed for finite differences).
template <typename S>
S loss_only(const NetworkT<S>& net, const MatX<S>& batch, const std::vector<int>& labels,
            bool use_batch_stats);

template <typename S>
GradientsT<S> zero_gradients_like(const NetworkT<S>& net);

template <typename S>
OptimizerStateT<S> make_optimizer_state(const NetworkT<S>& net);

/// Adaptive-moment update with bias correction; increments state.t.
template <typename S>
void adam_step(NetworkT<S>& net, const GradientsT<S>& grads, OptimizerStateT<S>& state,
               const TrainConfig& cfg);

/// Shuffled mini-batch epochs of loss_and_gradients + adam_step. A trailing
/// batch with fewer than 2 records is dropped (batch statistics need
/// variance). Leaves net in inference mode, also when epochs == 0.
template <typename S>
TrainReport train(NetworkT<S>& net, const PixelDataset& train_set, const TrainConfig& cfg);

/// Per record: argmax over the C logits, ties toward the lowest class index,
/// label = position + 1. Requires inference mode.
template <typename S>
std::vector<int> predict(const NetworkT<S>& net, const PixelDataset& ds);

/// Flat views over the trainable parameters in a fixed order:
/// per block weight, bias, gamma, beta; then output weight, output bias.
template <typename S>
std::vector<std::span<S>> trainable_spans(NetworkT<S>& net);

template <typename S>
std::vector<std::span<S>> gradient_spans(GradientsT<S>& grads);
template <typename S>
std::vector<std::span<const S>> gradient_spans(const GradientsT<S>& grads);

/// Max over trainable parameters of |analytic - numeric| divided by
/// max(|analytic| + |numeric|, 1e-8), with central differences (step 1e-5)
/// evaluated through the batch-statistics path in double precision.
double max_relative_gradient_error(const NetworkT<double>& net, const MatX<double>& batch,
                                   const std::vector<int>& labels,
                                   const GradientsT<double>& analytic);

/// Convenience wrapper: seeded double-precision network, analytic gradients,
/// then max_relative_gradient_error. Limited to <= 5000 parameters.
double gradient_check(const NetworkSpec& spec, std::uint64_t seed, const MatX<double>& batch,
                      const std::vector<int>& labels);

}  // namespace hsifc
