#pragma once

#include "gradalign/graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gradalign {

enum class Activation { Relu, Identity };

/// One parameter set per attribute channel, shared by the source and
/// target networks. Layer l maps dim_in(l) -> hidden; dim_in(0) is the
/// attribute dimension, all later input dims equal hidden.
struct EncoderParams {
    std::vector<Eigen::MatrixXd> weights;
    std::vector<double> eps;  // GIN self-weight per layer, fixed (not trained)
    Activation activation = Activation::Relu;

    int num_layers() const { return static_cast<int>(weights.size()); }
};

struct TrainConfig {
    int num_layers = 2;
    int hidden_dim = 128;
    double learning_rate = 0.005;
    int epochs = 200;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    std::uint64_t rng_seed = 0;
};

/// Hidden representations H^(1)..H^(L), one n x h matrix per layer.
using LayerEmbeddings = std::vector<Eigen::MatrixXd>;

/// Symmetric-uniform (Glorot) initialization from the seeded generator.
EncoderParams init_params(int input_dim, const TrainConfig& cfg);

/// H^(0) = attrs; H^(l+1) = act(((1 + eps_l) I + A_hat) H^(l) W^(l)).
LayerEmbeddings gin_forward(const Graph& g, const Eigen::MatrixXd& attrs,
                            const EncoderParams& params);

/// Layer-wise reconstruction loss over both networks:
/// sum_* sum_l || A_hat_* - Hn_*^(l) Hn_*^(l)^T ||_F^2 / n_*^2,
/// with Hn the row-wise unit-normalized embedding.
double reconstruction_loss(const LayerEmbeddings& emb_s, const LayerEmbeddings& emb_t,
                           const Graph& g_s, const Graph& g_t);

/// Analytic gradients of reconstruction_loss w.r.t. every weight matrix,
/// accumulated over the two networks. Writes the loss to loss_out when given.
std::vector<Eigen::MatrixXd> loss_gradients(const Graph& g_s, const Graph& g_t,
                                            const Eigen::MatrixXd& attrs_s,
                                            const Eigen::MatrixXd& attrs_t,
                                            const EncoderParams& params,
                                            double* loss_out = nullptr);

struct TrainResult {
    EncoderParams params;
    std::vector<double> loss_history;  // loss at epoch 0 .. epochs
};

/// Full-batch Adam on the reconstruction loss, parameters shared across
/// the two networks. Deterministic for a fixed rng_seed. Throws
/// std::runtime_error (with the epoch index) if the loss goes non-finite.
TrainResult train(const Graph& g_s, const Graph& g_t,
                  const Eigen::MatrixXd& attrs_s, const Eigen::MatrixXd& attrs_t,
                  const TrainConfig& cfg);

/// Compares analytic gradients against central finite differences
/// (step 1e-5) on a random <= 8-node problem; returns the max relative
/// error. Parameters landing near a relu kink are perturbed away first.
double gradient_check(const TrainConfig& cfg, std::uint64_t trial_seed);

/// Internal kink guard, exposed for tests: true when every pre-activation
/// entry is at least `margin` away from zero on both networks.
bool away_from_kinks(const Graph& g_s, const Graph& g_t,
                     const Eigen::MatrixXd& attrs_s, const Eigen::MatrixXd& attrs_t,
                     const EncoderParams& params, double margin);

/// Numerical check of the pre-activation 1-layer GCN bound: for matched
/// neighborhoods with per-pair attribute differences of norm <= epsilon
/// and a shared random W, asserts ||h_u - h_v||_2 <= sigma_max(W) * epsilon
/// on every trial. On failure returns false and, when given, describes the
/// first violating trial in *failure.
bool theorem_bound_check(double epsilon, int trials, std::uint64_t rng_seed,
                         std::string* failure = nullptr);

/// Versioned JSON checkpoint; round-trips bit-exactly.
void save_params(const EncoderParams& params, const std::string& path);
EncoderParams load_params(const std::string& path);

}  // namespace gradalign
