// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nudf/field.hpp"
#include "nudf/sampler.hpp"
#include "nudf/types.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nudf {

// Fully connected distance regressor over a Fourier-encoded point. The
// encoding is [x, y, z] followed, per frequency k = 0..n_frequencies-1 and
// per axis, by sin(2^k pi a) and cos(2^k pi a); input dimension is
// 3 + 6 * n_frequencies.
struct MlpConfig {
    int n_frequencies = 8;
    int hidden_layers = 2;
    int hidden_width = 256;
    enum class Activation { Relu, Softplus } activation = Activation::Relu;

    int input_dim() const { return 3 + 6 * n_frequencies; }
};

struct TrainConfig {
    double learning_rate = 1e-4;
    std::size_t batch_size = 4096;
    int max_epochs = 2000;
    int early_stop_patience = 50;      // epochs without validation improvement
    double holdout_fraction = 0.1;     // validation share of the sample set
    std::optional<double> target_clamp;  // cap labels at this distance when set
    std::uint64_t seed = 0;
};

struct TrainReport {
    int epochs = 0;
    double final_train_l1 = 0;         // full training split at the kept weights
    double final_val_l1 = 0;           // best validation L1 (the kept weights)
    std::vector<double> train_curve;   // per-epoch median batch L1
    std::vector<double> val_curve;     // per-epoch validation L1
};

// Neural unsigned distance field. eval() clamps the raw network output to
// >= 0 and extends outside the domain box by clamping the query into the box
// and adding the clamp distance; grad() differentiates the raw output only
// (the >= 0 clamp is not differentiated). Weights are public so tests can
// hand-build tiny networks.
class MlpField : public DistanceField {
public:
    MlpConfig config;
    std::vector<Eigen::MatrixXd> weights;  // layer l: (out x in), layer 0 input is the encoding
    std::vector<Eigen::VectorXd> biases;

    double eval(const Vec3& p) const override;
    Vec3 grad(const Vec3& p) const override;
    Box3 domain() const override { return domain_; }
    void set_domain(const Box3& box) { domain_ = box; }

    // float32 fast paths (one GEMM per layer over the whole batch).
    void eval_batch(const std::vector<Vec3>& points, std::vector<double>& out) const override;
    void eval_grad_batch(const std::vector<Vec3>& points, std::vector<double>& dist,
                         std::vector<Vec3>& grads) const override;

    // Same results as eval_batch but in double precision end to end; the
    // confirmation path for points accepted via the float path.
    void eval_batch_double(const std::vector<Vec3>& points, std::vector<double>& out) const;

private:
    Box3 domain_{Vec3(-1, -1, -1), Vec3(1, 1, 1)};
};

// Glorot-uniform weights (limit sqrt(6/(fan_in+fan_out))), zero biases,
// drawn in layer order, row major within a layer; deterministic per seed.
MlpField init_mlp(const MlpConfig& cfg, std::uint64_t seed);

// Raw network output max'ed with zero; no domain extension.
double forward(const MlpField& mlp, const Vec3& p);

// Exact derivative of the raw output with respect to p, chained through the
// positional encoding; defined everywhere the activations are (ReLU kinks
// use the left derivative, activation' (0) = 0).
Vec3 input_gradient(const MlpField& mlp, const Vec3& p);

// Minimizes mean |raw(p) - d| with Adam (beta1 0.9, beta2 0.999, eps 1e-8)
// over seeded-shuffle minibatches; 10% (holdout_fraction) of the samples are
// held out and the weights with the best held-out L1 are kept. Training math
// runs in float32; the result is written back to the field.
TrainReport train(MlpField& mlp, const SampleSet& samples, const TrainConfig& cfg);

// Weights file: magic "NUDW0001", u32 n_frequencies, u32 n_layers, then per
// layer u32 in, u32 out, float32 row-major weights (out x in), float32
// biases; little-endian. The activation is not stored; load_weights assumes
// the default (relu).
void save_weights(const MlpField& mlp, const std::string& path);
MlpField load_weights(const std::string& path);

}  // namespace nudf
