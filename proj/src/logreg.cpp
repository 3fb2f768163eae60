#include <cmath>

#include "fqgate/classifiers.hpp"
#include "scoring_internal.hpp"

namespace fqgate {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// log(1 + e^z) without overflow for large |z|.
double softplus(double z) {
    if (z > 0.0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

}  // namespace

LogRegGradient logreg_loss_and_gradient(const LogRegParams& p, const std::vector<FeatureVector>& x,
                                        const std::vector<int>& y, double l2_lambda) {
    const auto n = x.size();
    const double inv_n = 1.0 / static_cast<double>(n);
    LogRegGradient g;
    for (std::size_t i = 0; i < n; ++i) {
        double z = p.bias;
        for (std::size_t d = 0; d < FeatureVector::kDim; ++d) z += p.weights[d] * x[i].values[d];
        // cross-entropy: -y log s - (1-y) log(1-s) = softplus(z) - y z
        g.loss += softplus(z) - static_cast<double>(y[i]) * z;
        const double residual = sigmoid(z) - static_cast<double>(y[i]);
        for (std::size_t d = 0; d < FeatureVector::kDim; ++d)
            g.d_weights[d] += residual * x[i].values[d];
        g.d_bias += residual;
    }
    g.loss *= inv_n;
    g.d_bias *= inv_n;
    double w_sq = 0.0;
    for (std::size_t d = 0; d < FeatureVector::kDim; ++d) {
        g.d_weights[d] = g.d_weights[d] * inv_n + l2_lambda * p.weights[d];
        w_sq += p.weights[d] * p.weights[d];
    }
    g.loss += 0.5 * l2_lambda * w_sq;
    return g;
}

LogRegParams train_logreg(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                          const LogRegConfig& cfg) {
    LogRegParams p;  // zero-initialized
    for (long long it = 0; it < cfg.max_iterations; ++it) {
        const LogRegGradient g = logreg_loss_and_gradient(p, x, y, cfg.l2_lambda);
        double norm_sq = g.d_bias * g.d_bias;
        for (double dw : g.d_weights) norm_sq += dw * dw;
        if (std::sqrt(norm_sq) < cfg.gradient_tolerance) break;
        for (std::size_t d = 0; d < FeatureVector::kDim; ++d)
            p.weights[d] -= cfg.learning_rate * g.d_weights[d];
        p.bias -= cfg.learning_rate * g.d_bias;
    }
    return p;
}

namespace detail {

double logreg_score(const LogRegParams& p, const FeatureVector& fv) {
    double z = p.bias;
    for (std::size_t d = 0; d < FeatureVector::kDim; ++d) z += p.weights[d] * fv.values[d];
    return sigmoid(z);
}

}  // namespace detail

}  // namespace fqgate
