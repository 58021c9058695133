// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#include "nudf/mlp.hpp"

#include "nudf/parallel.hpp"
#include "nudf/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

namespace nudf {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kEvalChunk = 65536;  // caps the encoded-batch working set

template <typename Scalar>
void encode_point(const Vec3& p, int n_frequencies, Scalar* dst) {
    dst[0] = Scalar(p.x());
    dst[1] = Scalar(p.y());
    dst[2] = Scalar(p.z());
    int at = 3;
    double freq = kPi;
    for (int k = 0; k < n_frequencies; ++k, freq *= 2)
        for (int a = 0; a < 3; ++a) {
            const double arg = freq * p[a];
            dst[at++] = Scalar(std::sin(arg));
            dst[at++] = Scalar(std::cos(arg));
        }
}

// Pulls the encoding's chain rule out of a gradient w.r.t. the encoded
// vector: g_enc (dim) -> g_p (3). sin/cos values are reread from the
// encoding itself.
template <typename Scalar, typename VecEnc, typename VecGrad>
Vec3 chain_encoding(const VecEnc& enc, const VecGrad& g_enc, int n_frequencies) {
    Vec3 g(static_cast<double>(g_enc[0]), static_cast<double>(g_enc[1]), static_cast<double>(g_enc[2]));
    int at = 3;
    double freq = kPi;
    for (int k = 0; k < n_frequencies; ++k, freq *= 2)
        for (int a = 0; a < 3; ++a, at += 2)
            g[a] += freq * (double(enc[at + 1]) * double(g_enc[at]) - double(enc[at]) * double(g_enc[at + 1]));
    return g;
}

template <typename Scalar>
Scalar activate(Scalar z, MlpConfig::Activation act) {
    if (act == MlpConfig::Activation::Relu) return z > Scalar(0) ? z : Scalar(0);
    // Numerically stable softplus.
    return z > Scalar(0) ? z + Scalar(std::log1p(std::exp(double(-z)))) : Scalar(std::log1p(std::exp(double(z))));
}

template <typename Scalar>
Scalar activate_derivative(Scalar z, MlpConfig::Activation act) {
    if (act == MlpConfig::Activation::Relu) return z > Scalar(0) ? Scalar(1) : Scalar(0);
    return Scalar(1.0 / (1.0 + std::exp(double(-z))));
}

void check_network(const MlpField& mlp) {
    if (mlp.weights.empty() || mlp.weights.size() != mlp.biases.size())
        throw InputError("network has no layers or mismatched weights/biases");
    if (mlp.weights.front().cols() != mlp.config.input_dim())
        throw InputError("first layer width does not match the encoding dimension");
    for (std::size_t l = 0; l < mlp.weights.size(); ++l) {
        if (mlp.weights[l].rows() != mlp.biases[l].size()) throw InputError("bias/weight row mismatch");
        if (l + 1 < mlp.weights.size() && mlp.weights[l].rows() != mlp.weights[l + 1].cols())
            throw InputError("consecutive layer dimensions disagree");
    }
    if (mlp.weights.back().rows() != 1) throw InputError("output layer must have one unit");
}

double raw_forward(const MlpField& mlp, const Vec3& p) {
    Eigen::VectorXd x(mlp.config.input_dim());
    encode_point(p, mlp.config.n_frequencies, x.data());
    for (std::size_t l = 0; l < mlp.weights.size(); ++l) {
        Eigen::VectorXd z = mlp.weights[l] * x + mlp.biases[l];
        if (l + 1 == mlp.weights.size()) return z[0];
        for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = activate(z[i], mlp.config.activation);
        x = std::move(z);
    }
    return 0;  // unreachable; weights are never empty past check_network
}

// Little-endian scalar packing for the weights file.
void append_u32_le(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}
void append_f32_le(std::string& out, float f) { append_u32_le(out, std::bit_cast<std::uint32_t>(f)); }
std::uint32_t read_u32_le(const char* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(std::uint8_t(p[i])) << (8 * i);
    return v;
}
float read_f32_le(const char* p) { return std::bit_cast<float>(read_u32_le(p)); }

}  // namespace

MlpField init_mlp(const MlpConfig& cfg, std::uint64_t seed) {
    if (cfg.n_frequencies < 0) throw InputError("n_frequencies must be >= 0");
    if (cfg.hidden_layers < 0) throw InputError("hidden_layers must be >= 0");
    if (cfg.hidden_width < 1) throw InputError("hidden_width must be >= 1");

    std::vector<int> dims{cfg.input_dim()};
    for (int l = 0; l < cfg.hidden_layers; ++l) dims.push_back(cfg.hidden_width);
    dims.push_back(1);

    MlpField mlp;
    mlp.config = cfg;
    Rng rng(seed);
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        const int in = dims[l], out = dims[l + 1];
        const double limit = std::sqrt(6.0 / double(in + out));
        Eigen::MatrixXd w(out, in);
        for (int r = 0; r < out; ++r)
            for (int c = 0; c < in; ++c) w(r, c) = rng.uniform(-limit, limit);
        mlp.weights.push_back(std::move(w));
        mlp.biases.push_back(Eigen::VectorXd::Zero(out));
    }
    return mlp;
}

double forward(const MlpField& mlp, const Vec3& p) {
    check_network(mlp);
    return std::max(raw_forward(mlp, p), 0.0);
}

Vec3 input_gradient(const MlpField& mlp, const Vec3& p) {
    check_network(mlp);
    const std::size_t n_layers = mlp.weights.size();

    Eigen::VectorXd x(mlp.config.input_dim());
    encode_point(p, mlp.config.n_frequencies, x.data());

    std::vector<Eigen::VectorXd> pre(n_layers);  // pre-activations per hidden layer
    Eigen::VectorXd a = x;
    for (std::size_t l = 0; l + 1 < n_layers; ++l) {
        pre[l] = mlp.weights[l] * a + mlp.biases[l];
        a.resize(pre[l].size());
        for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = activate(pre[l][i], mlp.config.activation);
    }

    // Backward from the scalar output to the encoding.
    Eigen::VectorXd g = mlp.weights.back().transpose() * Eigen::VectorXd::Ones(1);
    for (std::size_t l = n_layers - 1; l-- > 0;) {
        for (Eigen::Index i = 0; i < g.size(); ++i) g[i] *= activate_derivative(pre[l][i], mlp.config.activation);
        g = mlp.weights[l].transpose() * g;
    }
    return chain_encoding<double>(x, g, mlp.config.n_frequencies);
}

double MlpField::eval(const Vec3& p) const {
    const Box3 dom = domain();
    const Vec3 q = p.cwiseMax(dom.min()).cwiseMin(dom.max());
    return forward(*this, q) + (p - q).norm();
}

Vec3 MlpField::grad(const Vec3& p) const {
    const Box3 dom = domain();
    const Vec3 q = p.cwiseMax(dom.min()).cwiseMin(dom.max());
    const Vec3 diff = p - q;
    const double outside = diff.norm();
    Vec3 g = input_gradient(*this, q);
    if (outside > 0)
        for (int axis = 0; axis < 3; ++axis)
            if (diff[axis] != 0) g[axis] = diff[axis] / outside;
    return g;
}

namespace {

// Shared float batch pass: values always; gradients when grads != nullptr.
// Applies the >= 0 clamp and the outside-the-box extension exactly like the
// scalar path, just in float32.
void batch_pass_float(const MlpField& mlp, const std::vector<Vec3>& points, std::vector<double>& out,
                      std::vector<Vec3>* grads) {
    check_network(mlp);
    const std::size_t n_layers = mlp.weights.size();
    std::vector<Eigen::MatrixXf> w(n_layers);
    std::vector<Eigen::VectorXf> b(n_layers);
    for (std::size_t l = 0; l < n_layers; ++l) {
        w[l] = mlp.weights[l].cast<float>();
        b[l] = mlp.biases[l].cast<float>();
    }
    const Box3 dom = mlp.domain();
    const MlpConfig::Activation act = mlp.config.activation;

    out.resize(points.size());
    if (grads) grads->resize(points.size());

    parallel_chunks(points.size(), kEvalChunk, [&](std::size_t begin, std::size_t end) {
        const Eigen::Index nb = Eigen::Index(end - begin);
        Eigen::MatrixXf x(mlp.config.input_dim(), nb);
        std::vector<Vec3> diffs(grads ? std::size_t(nb) : 0);
        for (Eigen::Index i = 0; i < nb; ++i) {
            const Vec3& p = points[begin + std::size_t(i)];
            const Vec3 q = p.cwiseMax(dom.min()).cwiseMin(dom.max());
            if (grads) diffs[std::size_t(i)] = p - q;
            encode_point(q, mlp.config.n_frequencies, x.col(i).data());
        }

        std::vector<Eigen::MatrixXf> pre(n_layers - 1);
        Eigen::MatrixXf a = x;
        for (std::size_t l = 0; l + 1 < n_layers; ++l) {
            pre[l] = (w[l] * a).colwise() + b[l];
            a = pre[l].unaryExpr([act](float z) { return activate(z, act); });
        }
        const Eigen::RowVectorXf raw = (w[n_layers - 1] * a).row(0) + Eigen::RowVectorXf::Constant(nb, b[n_layers - 1][0]);

        for (Eigen::Index i = 0; i < nb; ++i) {
            const Vec3& p = points[begin + std::size_t(i)];
            const Vec3 q = p.cwiseMax(dom.min()).cwiseMin(dom.max());
            out[begin + std::size_t(i)] = double(std::max(raw[i], 0.0f)) + (p - q).norm();
        }

        if (!grads) return;
        // d raw / d encoding for every column in one backward sweep.
        Eigen::MatrixXf g = w[n_layers - 1].transpose() * Eigen::RowVectorXf::Ones(nb);
        for (std::size_t l = n_layers - 1; l-- > 0;) {
            g.array() *= pre[l].unaryExpr([act](float z) { return activate_derivative(z, act); }).array();
            g = (w[l].transpose() * g).eval();
        }
        for (Eigen::Index i = 0; i < nb; ++i) {
            Vec3 gp = chain_encoding<float>(x.col(i), g.col(i), mlp.config.n_frequencies);
            const Vec3& diff = diffs[std::size_t(i)];
            const double outside = diff.norm();
            if (outside > 0)
                for (int axis = 0; axis < 3; ++axis)
                    if (diff[axis] != 0) gp[axis] = diff[axis] / outside;
            (*grads)[begin + std::size_t(i)] = gp;
        }
    });
}

}  // namespace

void MlpField::eval_batch(const std::vector<Vec3>& points, std::vector<double>& out) const {
    batch_pass_float(*this, points, out, nullptr);
}

void MlpField::eval_grad_batch(const std::vector<Vec3>& points, std::vector<double>& dist,
                               std::vector<Vec3>& grads) const {
    batch_pass_float(*this, points, dist, &grads);
}

void MlpField::eval_batch_double(const std::vector<Vec3>& points, std::vector<double>& out) const {
    check_network(*this);
    const std::size_t n_layers = weights.size();
    const Box3 dom = domain();
    out.resize(points.size());
    parallel_chunks(points.size(), kEvalChunk, [&](std::size_t begin, std::size_t end) {
        const Eigen::Index nb = Eigen::Index(end - begin);
        Eigen::MatrixXd x(config.input_dim(), nb);
        for (Eigen::Index i = 0; i < nb; ++i) {
            const Vec3& p = points[begin + std::size_t(i)];
            const Vec3 q = p.cwiseMax(dom.min()).cwiseMin(dom.max());
            encode_point(q, config.n_frequencies, x.col(i).data());
        }
        Eigen::MatrixXd a = x;
        const MlpConfig::Activation act = config.activation;
        for (std::size_t l = 0; l + 1 < n_layers; ++l)
            a = ((weights[l] * a).colwise() + biases[l]).unaryExpr([act](double z) { return activate(z, act); });
        const Eigen::RowVectorXd raw =
            (weights[n_layers - 1] * a).row(0) + Eigen::RowVectorXd::Constant(nb, biases[n_layers - 1][0]);
        for (Eigen::Index i = 0; i < nb; ++i) {
            const Vec3& p = points[begin + std::size_t(i)];
            const Vec3 q = p.cwiseMax(dom.min()).cwiseMin(dom.max());
            out[begin + std::size_t(i)] = std::max(raw[i], 0.0) + (p - q).norm();
        }
    });
}

TrainReport train(MlpField& mlp, const SampleSet& samples, const TrainConfig& cfg) {
    check_network(mlp);
    if (samples.size() < 100) throw InputError("train: need at least 100 samples");
    if (cfg.batch_size < 1) throw InputError("train: batch_size must be >= 1");
    if (!(cfg.holdout_fraction > 0) || !(cfg.holdout_fraction < 1))
        throw InputError("train: holdout_fraction must be inside (0,1)");
    if (cfg.max_epochs < 1 || cfg.early_stop_patience < 1) throw InputError("train: epochs and patience must be >= 1");
    if (!(cfg.learning_rate > 0)) throw InputError("train: learning_rate must be > 0");

    const std::size_t n = samples.size();
    const int dim = mlp.config.input_dim();
    const MlpConfig::Activation act = mlp.config.activation;

    Eigen::MatrixXf X(dim, Eigen::Index(n));
    Eigen::VectorXf y(static_cast<Eigen::Index>(n));
    parallel_for(n, [&](std::size_t i) {
        encode_point(samples.positions[i], mlp.config.n_frequencies, X.col(Eigen::Index(i)).data());
        double d = samples.distances[i];
        if (cfg.target_clamp) d = std::min(d, *cfg.target_clamp);
        y[Eigen::Index(i)] = float(d);
    });

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    Rng split_rng(cfg.seed, 1);
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[split_rng.uniform_index(i + 1)]);
    const std::size_t n_val = std::max<std::size_t>(1, std::size_t(cfg.holdout_fraction * double(n)));
    if (n_val >= n) throw InputError("train: holdout leaves no training samples");
    std::vector<std::size_t> val_idx(perm.begin(), perm.begin() + std::ptrdiff_t(n_val));
    std::vector<std::size_t> train_idx(perm.begin() + std::ptrdiff_t(n_val), perm.end());

    const std::size_t n_layers = mlp.weights.size();
    std::vector<Eigen::MatrixXf> w(n_layers), mw(n_layers), vw(n_layers);
    std::vector<Eigen::VectorXf> b(n_layers), mb(n_layers), vb(n_layers);
    for (std::size_t l = 0; l < n_layers; ++l) {
        w[l] = mlp.weights[l].cast<float>();
        b[l] = mlp.biases[l].cast<float>();
        mw[l] = Eigen::MatrixXf::Zero(w[l].rows(), w[l].cols());
        vw[l] = mw[l];
        mb[l] = Eigen::VectorXf::Zero(b[l].size());
        vb[l] = mb[l];
    }

    // One forward/backward pass over the columns listed in idx[off..off+nb).
    std::vector<Eigen::MatrixXf> pre(n_layers - 1), acts(n_layers - 1);
    std::vector<Eigen::MatrixXf> dw(n_layers);
    std::vector<Eigen::VectorXf> db(n_layers);
    Eigen::MatrixXf xb;
    Eigen::VectorXf yb;

    auto gather = [&](const std::vector<std::size_t>& idx, std::size_t off, std::size_t nb) {
        xb.resize(dim, Eigen::Index(nb));
        yb.resize(Eigen::Index(nb));
        for (std::size_t i = 0; i < nb; ++i) {
            xb.col(Eigen::Index(i)) = X.col(Eigen::Index(idx[off + i]));
            yb[Eigen::Index(i)] = y[Eigen::Index(idx[off + i])];
        }
    };

    auto forward_batch = [&](const Eigen::MatrixXf& input) -> Eigen::RowVectorXf {
        const Eigen::MatrixXf* a = &input;
        for (std::size_t l = 0; l + 1 < n_layers; ++l) {
            pre[l] = (w[l] * (*a)).colwise() + b[l];
            acts[l] = pre[l].unaryExpr([act](float z) { return activate(z, act); });
            a = &acts[l];
        }
        return (w[n_layers - 1] * (*a)).row(0) + Eigen::RowVectorXf::Constant(a->cols(), b[n_layers - 1][0]);
    };

    long step = 0;
    const float lr = float(cfg.learning_rate), beta1 = 0.9f, beta2 = 0.999f, eps = 1e-8f;
    auto adam_update = [&]() {
        const float c1 = 1.0f - std::pow(beta1, float(step));
        const float c2 = 1.0f - std::pow(beta2, float(step));
        for (std::size_t l = 0; l < n_layers; ++l) {
            mw[l] = beta1 * mw[l] + (1 - beta1) * dw[l];
            vw[l] = beta2 * vw[l] + (1 - beta2) * dw[l].cwiseProduct(dw[l]);
            w[l].array() -= lr * (mw[l].array() / c1) / ((vw[l].array() / c2).sqrt() + eps);
            mb[l] = beta1 * mb[l] + (1 - beta1) * db[l];
            vb[l] = beta2 * vb[l] + (1 - beta2) * db[l].cwiseProduct(db[l]);
            b[l].array() -= lr * (mb[l].array() / c1) / ((vb[l].array() / c2).sqrt() + eps);
        }
    };

    auto split_l1 = [&](const std::vector<std::size_t>& idx) {
        double sum = 0;
        for (std::size_t off = 0; off < idx.size(); off += cfg.batch_size) {
            const std::size_t nb = std::min(cfg.batch_size, idx.size() - off);
            gather(idx, off, nb);
            const Eigen::RowVectorXf out = forward_batch(xb);
            sum += double((out.transpose() - yb).cwiseAbs().sum());
        }
        return sum / double(idx.size());
    };

    TrainReport report;
    Rng epoch_rng(cfg.seed, 2);
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<Eigen::MatrixXf> best_w = w;
    std::vector<Eigen::VectorXf> best_b = b;
    int stale = 0;

    for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        for (std::size_t i = train_idx.size() - 1; i > 0; --i)
            std::swap(train_idx[i], train_idx[epoch_rng.uniform_index(i + 1)]);

        std::vector<double> batch_losses;
        batch_losses.reserve(train_idx.size() / cfg.batch_size + 1);
        for (std::size_t off = 0; off < train_idx.size(); off += cfg.batch_size) {
            const std::size_t nb = std::min(cfg.batch_size, train_idx.size() - off);
            gather(train_idx, off, nb);
            const Eigen::RowVectorXf out = forward_batch(xb);
            const Eigen::RowVectorXf err = out - yb.transpose();
            const double loss = double(err.cwiseAbs().sum()) / double(nb);
            if (!std::isfinite(loss))
                throw NumericalError("training loss became non-finite at epoch " + std::to_string(epoch) +
                                     "; lower learning_rate (currently " + std::to_string(cfg.learning_rate) + ")");
            batch_losses.push_back(loss);

            // L1 subgradient, zero exactly on the data.
            Eigen::MatrixXf delta =
                err.unaryExpr([](float e) { return e > 0 ? 1.0f : (e < 0 ? -1.0f : 0.0f); }) / float(nb);
            for (std::size_t l = n_layers; l-- > 0;) {
                const Eigen::MatrixXf& a_prev = l == 0 ? xb : acts[l - 1];
                dw[l].noalias() = delta * a_prev.transpose();
                db[l] = delta.rowwise().sum();
                if (l == 0) break;
                delta = (w[l].transpose() * delta).eval();
                delta.array() *= pre[l - 1].unaryExpr([act](float z) { return activate_derivative(z, act); }).array();
            }
            ++step;
            adam_update();
        }

        std::sort(batch_losses.begin(), batch_losses.end());
        const std::size_t mid = batch_losses.size() / 2;
        report.train_curve.push_back(batch_losses.size() % 2 ? batch_losses[mid]
                                                             : 0.5 * (batch_losses[mid - 1] + batch_losses[mid]));

        const double val = split_l1(val_idx);
        report.val_curve.push_back(val);
        report.epochs = epoch + 1;

        if (val < best_val) {
            best_val = val;
            best_w = w;
            best_b = b;
            stale = 0;
        } else if (++stale >= cfg.early_stop_patience) {
            break;
        }
    }

    w = best_w;
    b = best_b;
    for (std::size_t l = 0; l < n_layers; ++l) {
        mlp.weights[l] = w[l].cast<double>();
        mlp.biases[l] = b[l].cast<double>();
    }
    report.final_train_l1 = split_l1(train_idx);
    report.final_val_l1 = best_val;
    return report;
}

void save_weights(const MlpField& mlp, const std::string& path) {
    check_network(mlp);
    std::string bytes;
    bytes.append("NUDW0001", 8);
    append_u32_le(bytes, std::uint32_t(mlp.config.n_frequencies));
    append_u32_le(bytes, std::uint32_t(mlp.weights.size()));
    for (std::size_t l = 0; l < mlp.weights.size(); ++l) {
        const auto& wl = mlp.weights[l];
        append_u32_le(bytes, std::uint32_t(wl.cols()));
        append_u32_le(bytes, std::uint32_t(wl.rows()));
        for (Eigen::Index r = 0; r < wl.rows(); ++r)
            for (Eigen::Index c = 0; c < wl.cols(); ++c) append_f32_le(bytes, float(wl(r, c)));
        for (Eigen::Index r = 0; r < mlp.biases[l].size(); ++r) append_f32_le(bytes, float(mlp.biases[l][r]));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(bytes.data(), std::streamsize(bytes.size()));
    if (!out) throw IoError("write failed: " + path);
}

MlpField load_weights(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() < 16) throw FormatError("weights file too short for its header: " + path);
    if (bytes.compare(0, 8, "NUDW0001") != 0) throw FormatError("bad magic in weights file: " + path);

    MlpField mlp;
    mlp.config.n_frequencies = int(read_u32_le(bytes.data() + 8));
    const std::uint32_t n_layers = read_u32_le(bytes.data() + 12);
    if (n_layers == 0 || n_layers > 64) throw FormatError("implausible layer count in " + path);

    std::size_t at = 16;
    for (std::uint32_t l = 0; l < n_layers; ++l) {
        if (at + 8 > bytes.size()) throw FormatError("truncated weights file: " + path);
        const std::uint32_t in_dim = read_u32_le(bytes.data() + at);
        const std::uint32_t out_dim = read_u32_le(bytes.data() + at + 4);
        at += 8;
        if (in_dim == 0 || out_dim == 0) throw FormatError("zero layer dimension in " + path);
        const std::size_t need = 4 * (std::size_t(in_dim) * out_dim + out_dim);
        if (at + need > bytes.size()) throw FormatError("truncated weights file: " + path);
        Eigen::MatrixXd w(out_dim, in_dim);
        for (std::uint32_t r = 0; r < out_dim; ++r)
            for (std::uint32_t c = 0; c < in_dim; ++c, at += 4) w(r, c) = double(read_f32_le(bytes.data() + at));
        Eigen::VectorXd b(out_dim);
        for (std::uint32_t r = 0; r < out_dim; ++r, at += 4) b[r] = double(read_f32_le(bytes.data() + at));
        mlp.weights.push_back(std::move(w));
        mlp.biases.push_back(std::move(b));
    }
    if (at != bytes.size()) throw FormatError("trailing bytes in weights file: " + path);

    mlp.config.hidden_layers = int(n_layers) - 1;
    mlp.config.hidden_width = n_layers >= 2 ? int(mlp.weights[0].rows()) : MlpConfig{}.hidden_width;
    if (mlp.weights.front().cols() != mlp.config.input_dim())
        throw FormatError("layer dimensions do not match the frequency count in " + path);
    if (mlp.weights.back().rows() != 1) throw FormatError("output layer must have one unit in " + path);
    return mlp;
}

}  // namespace nudf
