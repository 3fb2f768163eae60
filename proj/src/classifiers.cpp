#include "fqgate/classifiers.hpp"

#include <cstdlib>
#include <variant>

#include "fqgate/errors.hpp"
#include "fqgate/geometry.hpp"
#include "scoring_internal.hpp"

namespace fqgate {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

long long resolve_timestamp() {
    if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end != env && *end == '\0') return v;
    }
    return 0;
}

void validate_family_config(const TrainConfig& cfg) {
    if (cfg.family_params.index() != static_cast<std::size_t>(cfg.family))
        throw InvalidConfigError("family_params do not match the declared family");
    std::visit(
        Overloaded{
            [](const LogRegConfig& c) {
                if (!(c.learning_rate > 0.0) || c.max_iterations < 1 ||
                    !(c.gradient_tolerance >= 0.0) || !(c.l2_lambda >= 0.0))
                    throw InvalidConfigError("bad logreg config");
            },
            [](const KnnConfig& c) {
                if (c.k < 1) throw InvalidConfigError("knn k must be >= 1");
            },
            [](const SvcConfig& c) {
                if (!(c.gamma > 0.0) || !(c.c > 0.0) || !(c.tolerance > 0.0))
                    throw InvalidConfigError("bad svc config");
            },
            [](const ForestConfig& c) {
                if (c.tree_count < 1 || c.features_per_split < 1 ||
                    c.features_per_split > static_cast<long long>(FeatureVector::kDim) ||
                    c.min_samples_split < 2)
                    throw InvalidConfigError("bad random_forest config");
            },
            [](const MlpConfig& c) {
                if (c.hidden1 < 1 || c.hidden2 < 1 || !(c.learning_rate > 0.0) || c.epochs < 1)
                    throw InvalidConfigError("bad mlp config");
            },
        },
        cfg.family_params);
}

}  // namespace

std::string family_name(ModelFamily family) {
    switch (family) {
        case ModelFamily::LogReg: return "logreg";
        case ModelFamily::Knn: return "knn";
        case ModelFamily::Svc: return "svc";
        case ModelFamily::RandomForest: return "random_forest";
        case ModelFamily::Mlp: return "mlp";
    }
    throw InvalidConfigError("unhandled model family");
}

ModelFamily family_from_name(const std::string& name) {
    if (name == "logreg") return ModelFamily::LogReg;
    if (name == "knn") return ModelFamily::Knn;
    if (name == "svc") return ModelFamily::Svc;
    if (name == "rf" || name == "random_forest") return ModelFamily::RandomForest;
    if (name == "mlp") return ModelFamily::Mlp;
    throw InvalidConfigError("unknown model family '" + name + "'");
}

TrainConfig default_train_config(ModelFamily family, std::uint64_t seed) {
    TrainConfig cfg;
    cfg.family = family;
    cfg.seed = seed;
    switch (family) {
        case ModelFamily::LogReg: cfg.family_params = LogRegConfig{}; break;
        case ModelFamily::Knn: cfg.family_params = KnnConfig{}; break;
        case ModelFamily::Svc: cfg.family_params = SvcConfig{}; break;
        case ModelFamily::RandomForest: cfg.family_params = ForestConfig{}; break;
        case ModelFamily::Mlp: cfg.family_params = MlpConfig{}; break;
    }
    return cfg;
}

TrainedModel train(const Dataset& train_set, const TrainConfig& cfg) {
    validate_family_config(cfg);
    if (train_set.empty()) throw TooFewSamplesError("training set is empty");

    const std::size_t n = train_set.size();
    std::vector<FeatureVector> x;
    std::vector<int> y;
    std::vector<QualityLabel> labels;
    x.reserve(n);
    y.reserve(n);
    labels.reserve(n);
    long long n_high = 0;
    for (const FaceSample& sample : train_set.samples) {
        if (!sample.label)
            throw UnlabeledSampleError("sample '" + sample.sample_id + "' has no label");
        x.push_back(extract_features(sample.keypoints, sample.bbox));
        const int yi = *sample.label == QualityLabel::High ? 1 : 0;
        y.push_back(yi);
        labels.push_back(*sample.label);
        n_high += yi;
    }
    const long long n_low = static_cast<long long>(n) - n_high;

    TrainedModel model;
    model.family = cfg.family;
    model.feature_order = canonical_feature_order();
    model.meta = TrainMeta{cfg.seed, static_cast<long long>(n), resolve_timestamp(), false};

    switch (cfg.family) {
        case ModelFamily::LogReg: {
            if (n_high == 0 || n_low == 0)
                throw SingleClassTrainingSetError("logreg needs both classes present");
            model.params = train_logreg(x, y, std::get<LogRegConfig>(cfg.family_params));
            break;
        }
        case ModelFamily::Knn: {
            const auto& kc = std::get<KnnConfig>(cfg.family_params);
            if (static_cast<long long>(n) < kc.k)
                throw TooFewSamplesError("knn needs at least k training samples");
            model.params = KnnParams{kc.k, std::move(x), std::move(labels)};
            break;
        }
        case ModelFamily::Svc: {
            if (n_high == 0 || n_low == 0)
                throw SingleClassTrainingSetError("svc needs both classes present");
            SvcTrainResult r = train_svc(x, y, std::get<SvcConfig>(cfg.family_params), cfg.seed);
            model.params = std::move(r.params);
            model.meta.convergence_warning = !r.converged;
            break;
        }
        case ModelFamily::RandomForest: {
            model.params =
                train_forest(x, y, std::get<ForestConfig>(cfg.family_params), cfg.seed);
            break;
        }
        case ModelFamily::Mlp: {
            if (n_high == 0 || n_low == 0)
                throw SingleClassTrainingSetError("mlp needs both classes present");
            bool warning = false;
            model.params =
                train_mlp(x, y, std::get<MlpConfig>(cfg.family_params), cfg.seed, &warning);
            model.meta.convergence_warning = warning;
            break;
        }
    }
    return model;
}

double score_value(const TrainedModel& model, const FeatureVector& fv) {
    if (model.feature_order != canonical_feature_order())
        throw FeatureOrderMismatchError("model declares an unsupported feature order");
    return std::visit(
        Overloaded{
            [&](const LogRegParams& p) { return detail::logreg_score(p, fv); },
            [&](const KnnParams& p) { return detail::knn_vote_fraction(p, fv); },
            [&](const SvcParams& p) { return detail::svc_score(p, fv); },
            [&](const ForestParams& p) { return detail::forest_score(p, fv); },
            [&](const MlpParams& p) { return detail::mlp_forward(p, fv); },
        },
        model.params);
}

QualityScore score(const TrainedModel& model, const FeatureVector& fv, double threshold) {
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw InvalidConfigError("threshold must lie in [0, 1]");
    QualityScore qs;
    qs.value = score_value(model, fv);
    // Exact half votes from KNN stay Low at the default threshold (conservative
    // even-vote rule); every other family labels by inclusive threshold.
    const bool tie_vote = model.family == ModelFamily::Knn && qs.value == 0.5;
    const bool high = tie_vote ? qs.value > threshold : qs.value >= threshold;
    qs.label = high ? QualityLabel::High : QualityLabel::Low;
    return qs;
}

}  // namespace fqgate
