#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "fqgate/geometry.hpp"
#include "fqgate/types.hpp"

namespace fqgate {

enum class ModelFamily { LogReg, Knn, Svc, RandomForest, Mlp };

// Canonical names used in model files: logreg, knn, svc, random_forest, mlp.
std::string family_name(ModelFamily family);
// Accepts the canonical names plus the "rf" shorthand.
ModelFamily family_from_name(const std::string& name);

struct LogRegConfig {
    double learning_rate = 0.1;
    long long max_iterations = 5000;
    double gradient_tolerance = 1e-6;
    double l2_lambda = 1e-4;  // applied to weights only, never the bias

    bool operator==(const LogRegConfig&) const = default;
};

struct KnnConfig {
    long long k = 5;

    bool operator==(const KnnConfig&) const = default;
};

struct SvcConfig {
    double gamma = 0.1;  // RBF kernel exp(-gamma * ||a - b||^2); 1/num_features
    double c = 1.0;
    double tolerance = 1e-3;  // KKT tolerance at convergence

    bool operator==(const SvcConfig&) const = default;
};

struct ForestConfig {
    long long tree_count = 100;
    long long features_per_split = 4;  // ceil(sqrt(10))
    long long min_samples_split = 2;

    bool operator==(const ForestConfig&) const = default;
};

struct MlpConfig {
    long long hidden1 = 16;
    long long hidden2 = 8;
    double learning_rate = 0.05;
    long long epochs = 2000;

    bool operator==(const MlpConfig&) const = default;
};

using FamilyConfig = std::variant<LogRegConfig, KnnConfig, SvcConfig, ForestConfig, MlpConfig>;

struct TrainConfig {
    ModelFamily family = ModelFamily::RandomForest;
    std::uint64_t seed = 0;
    FamilyConfig family_params = ForestConfig{};
};

TrainConfig default_train_config(ModelFamily family, std::uint64_t seed = 0);

struct LogRegParams {
    std::array<double, FeatureVector::kDim> weights{};
    double bias = 0.0;

    bool operator==(const LogRegParams&) const = default;
};

struct KnnParams {
    long long k = 5;
    std::vector<FeatureVector> features;  // ingestion order; index breaks distance ties
    std::vector<QualityLabel> labels;

    bool operator==(const KnnParams&) const = default;
};

struct SvcParams {
    double gamma = 0.1;
    double bias = 0.0;
    std::vector<FeatureVector> support_vectors;
    std::vector<double> dual_coefficients;  // alpha_i * y_i with y in {-1,+1}
    // P(High | f) = 1 / (1 + exp(platt_slope * f + platt_intercept))
    double platt_slope = 0.0;
    double platt_intercept = 0.0;

    bool operator==(const SvcParams&) const = default;
};

struct TreeNode {
    int split_feature = -1;  // -1 marks a leaf
    double split_threshold = 0.0;
    int left = -1;
    int right = -1;
    int leaf_class = -1;  // 1 High / 0 Low at leaves, -1 elsewhere

    bool operator==(const TreeNode&) const = default;
};

struct Tree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root; children follow their parent

    bool operator==(const Tree&) const = default;
};

struct ForestParams {
    std::vector<Tree> trees;

    bool operator==(const ForestParams&) const = default;
};

struct MlpLayer {
    std::vector<std::vector<double>> weights;  // [out][in]
    std::vector<double> biases;
    std::string activation;  // "tanh" or "sigmoid"

    bool operator==(const MlpLayer&) const = default;
};

struct MlpParams {
    std::vector<MlpLayer> layers;

    bool operator==(const MlpParams&) const = default;
};

using ModelParams = std::variant<LogRegParams, KnnParams, SvcParams, ForestParams, MlpParams>;

struct TrainMeta {
    std::uint64_t seed = 0;
    long long sample_count = 0;
    long long timestamp = 0;  // SOURCE_DATE_EPOCH when set, else 0
    bool convergence_warning = false;

    bool operator==(const TrainMeta&) const = default;
};

struct TrainedModel {
    ModelFamily family = ModelFamily::RandomForest;
    std::vector<std::string> feature_order;
    ModelParams params;
    TrainMeta meta;

    bool operator==(const TrainedModel&) const = default;
};

struct QualityScore {
    double value = 0.0;
    QualityLabel label = QualityLabel::Low;

    bool is_high() const { return label == QualityLabel::High; }
};

double gini_impurity(long long n_high, long long n_low);

TrainedModel train(const Dataset& train_set, const TrainConfig& cfg);

QualityScore score(const TrainedModel& model, const FeatureVector& fv, double threshold = 0.5);
double score_value(const TrainedModel& model, const FeatureVector& fv);

// Single-tree vote, 1 High / 0 Low.
int tree_predict(const Tree& tree, const FeatureVector& fv);

// --- training internals, exposed so tests can check them against oracles ---

struct LogRegGradient {
    double loss = 0.0;
    std::array<double, FeatureVector::kDim> d_weights{};
    double d_bias = 0.0;
};

// Labels y are 1 = High, 0 = Low throughout.
LogRegGradient logreg_loss_and_gradient(const LogRegParams& p, const std::vector<FeatureVector>& x,
                                        const std::vector<int>& y, double l2_lambda);
LogRegParams train_logreg(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                          const LogRegConfig& cfg);

double mlp_loss(const MlpParams& p, const std::vector<FeatureVector>& x, const std::vector<int>& y);
// Returns gradients in an MlpParams of identical shape.
MlpParams mlp_gradient(const MlpParams& p, const std::vector<FeatureVector>& x,
                       const std::vector<int>& y);
MlpParams train_mlp(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                    const MlpConfig& cfg, std::uint64_t seed, bool* convergence_warning);

// Uncalibrated signed decision value sum(alpha_i y_i K(sv_i, fv)) + bias.
double svc_decision_value(const SvcParams& p, const FeatureVector& fv);

struct SvcTrainResult {
    SvcParams params;
    std::vector<double> alphas;  // one per training point
    std::vector<int> y_signs;    // +1 High / -1 Low
    bool converged = true;
};

SvcTrainResult train_svc(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                         const SvcConfig& cfg, std::uint64_t seed);

ForestParams train_forest(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                          const ForestConfig& cfg, std::uint64_t seed);

}  // namespace fqgate
