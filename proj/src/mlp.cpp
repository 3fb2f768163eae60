#include <cmath>
#include <vector>

#include "fqgate/classifiers.hpp"
#include "fqgate/rng.hpp"
#include "scoring_internal.hpp"

namespace fqgate {

namespace {

double softplus(double z) {
    if (z > 0.0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double apply_activation(const std::string& activation, double z) {
    return activation == "tanh" ? std::tanh(z) : sigmoid(z);
}

double activation_slope(const std::string& activation, double a) {
    return activation == "tanh" ? 1.0 - a * a : a * (1.0 - a);
}

MlpParams zeros_like(const MlpParams& p) {
    MlpParams g = p;
    for (auto& layer : g.layers) {
        for (auto& row : layer.weights) std::fill(row.begin(), row.end(), 0.0);
        std::fill(layer.biases.begin(), layer.biases.end(), 0.0);
    }
    return g;
}

bool all_finite(const MlpParams& p) {
    for (const auto& layer : p.layers) {
        for (const auto& row : layer.weights)
            for (double w : row)
                if (!std::isfinite(w)) return false;
        for (double b : layer.biases)
            if (!std::isfinite(b)) return false;
    }
    return true;
}

// Forward pass keeping per-layer activations; returns the final pre-activation
// so the loss can use the softplus form of cross-entropy.
double forward(const MlpParams& p, const FeatureVector& fv,
               std::vector<std::vector<double>>& activations) {
    activations.resize(p.layers.size() + 1);
    activations[0].assign(fv.values.begin(), fv.values.end());
    double final_pre = 0.0;
    for (std::size_t l = 0; l < p.layers.size(); ++l) {
        const MlpLayer& layer = p.layers[l];
        const auto& in = activations[l];
        auto& out = activations[l + 1];
        out.resize(layer.biases.size());
        for (std::size_t o = 0; o < out.size(); ++o) {
            double z = layer.biases[o];
            for (std::size_t i = 0; i < in.size(); ++i) z += layer.weights[o][i] * in[i];
            out[o] = apply_activation(layer.activation, z);
            if (l + 1 == p.layers.size()) final_pre = z;
        }
    }
    return final_pre;
}

// Full-batch backprop with mean-reduced cross-entropy; gradients land in g.
double backprop(const MlpParams& p, const std::vector<FeatureVector>& x,
                const std::vector<int>& y, MlpParams& g) {
    const std::size_t n = x.size();
    const double inv_n = 1.0 / static_cast<double>(n);
    const std::size_t depth = p.layers.size();
    double loss = 0.0;
    std::vector<std::vector<double>> activations;
    std::vector<double> delta, delta_prev;
    for (std::size_t s = 0; s < n; ++s) {
        const double z_out = forward(p, x[s], activations);
        loss += (softplus(z_out) - static_cast<double>(y[s]) * z_out) * inv_n;

        delta.assign(1, (sigmoid(z_out) - static_cast<double>(y[s])) * inv_n);
        for (std::size_t l = depth; l-- > 0;) {
            MlpLayer& grad = g.layers[l];
            const auto& in = activations[l];
            for (std::size_t o = 0; o < delta.size(); ++o) {
                grad.biases[o] += delta[o];
                for (std::size_t i = 0; i < in.size(); ++i)
                    grad.weights[o][i] += delta[o] * in[i];
            }
            if (l == 0) break;
            delta_prev.assign(in.size(), 0.0);
            const MlpLayer& layer = p.layers[l];
            for (std::size_t o = 0; o < delta.size(); ++o)
                for (std::size_t i = 0; i < in.size(); ++i)
                    delta_prev[i] += layer.weights[o][i] * delta[o];
            for (std::size_t i = 0; i < in.size(); ++i)
                delta_prev[i] *= activation_slope(p.layers[l - 1].activation, in[i]);
            std::swap(delta, delta_prev);
        }
    }
    return loss;
}

MlpLayer init_layer(std::size_t out_dim, std::size_t in_dim, const std::string& activation,
                    Rng& rng) {
    MlpLayer layer;
    layer.activation = activation;
    layer.weights.assign(out_dim, std::vector<double>(in_dim));
    layer.biases.assign(out_dim, 0.0);
    for (auto& row : layer.weights)
        for (double& w : row) w = rng.uniform(-0.5, 0.5);
    for (double& b : layer.biases) b = rng.uniform(-0.5, 0.5);
    return layer;
}

}  // namespace

double mlp_loss(const MlpParams& p, const std::vector<FeatureVector>& x,
                const std::vector<int>& y) {
    const double inv_n = 1.0 / static_cast<double>(x.size());
    double loss = 0.0;
    std::vector<std::vector<double>> activations;
    for (std::size_t s = 0; s < x.size(); ++s) {
        const double z_out = forward(p, x[s], activations);
        loss += (softplus(z_out) - static_cast<double>(y[s]) * z_out) * inv_n;
    }
    return loss;
}

MlpParams mlp_gradient(const MlpParams& p, const std::vector<FeatureVector>& x,
                       const std::vector<int>& y) {
    MlpParams g = zeros_like(p);
    backprop(p, x, y, g);
    return g;
}

MlpParams train_mlp(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                    const MlpConfig& cfg, std::uint64_t seed, bool* convergence_warning) {
    Rng rng(seed);
    MlpParams p;
    p.layers.push_back(init_layer(static_cast<std::size_t>(cfg.hidden1), FeatureVector::kDim,
                                  "tanh", rng));
    p.layers.push_back(init_layer(static_cast<std::size_t>(cfg.hidden2),
                                  static_cast<std::size_t>(cfg.hidden1), "tanh", rng));
    p.layers.push_back(init_layer(1, static_cast<std::size_t>(cfg.hidden2), "sigmoid", rng));

    bool warning = false;
    MlpParams last_good = p;
    for (long long epoch = 0; epoch < cfg.epochs; ++epoch) {
        MlpParams g = zeros_like(p);
        const double loss = backprop(p, x, y, g);
        if (!std::isfinite(loss)) {
            p = last_good;
            warning = true;
            break;
        }
        last_good = p;
        for (std::size_t l = 0; l < p.layers.size(); ++l) {
            MlpLayer& layer = p.layers[l];
            const MlpLayer& grad = g.layers[l];
            for (std::size_t o = 0; o < layer.biases.size(); ++o) {
                layer.biases[o] -= cfg.learning_rate * grad.biases[o];
                for (std::size_t i = 0; i < layer.weights[o].size(); ++i)
                    layer.weights[o][i] -= cfg.learning_rate * grad.weights[o][i];
            }
        }
    }
    if (!all_finite(p)) {
        p = last_good;
        warning = true;
    }
    if (convergence_warning) *convergence_warning = warning;
    return p;
}

namespace detail {

double mlp_forward(const MlpParams& p, const FeatureVector& fv) {
    std::vector<std::vector<double>> activations;
    const double z_out = forward(p, fv, activations);
    return sigmoid(z_out);
}

}  // namespace detail

}  // namespace fqgate
