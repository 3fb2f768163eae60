#include "fqgate/model_io.hpp"

#include <cmath>
#include <fstream>
#include <variant>

#include "json.hpp"

#include "fqgate/errors.hpp"

namespace fqgate {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

ordered_json feature_vector_json(const FeatureVector& fv) {
    return ordered_json(fv.values);
}

FeatureVector feature_vector_from_json(const json& j) {
    if (!j.is_array() || j.size() != FeatureVector::kDim)
        throw CorruptModelFileError("feature vector must have exactly 10 components");
    FeatureVector fv;
    for (std::size_t d = 0; d < FeatureVector::kDim; ++d) fv.values[d] = j[d].get<double>();
    return fv;
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw CorruptModelFileError(std::string(what) + " is not finite");
}

ordered_json params_json(const ModelParams& params) {
    return std::visit(
        Overloaded{
            [](const LogRegParams& p) {
                ordered_json j;
                j["weights"] = p.weights;
                j["bias"] = p.bias;
                return j;
            },
            [](const KnnParams& p) {
                ordered_json j;
                j["k"] = p.k;
                auto features = ordered_json::array();
                for (const FeatureVector& fv : p.features)
                    features.push_back(feature_vector_json(fv));
                j["features"] = std::move(features);
                auto labels = ordered_json::array();
                for (QualityLabel label : p.labels) labels.push_back(label_name(label));
                j["labels"] = std::move(labels);
                return j;
            },
            [](const SvcParams& p) {
                ordered_json j;
                j["kernel"] = "rbf";
                j["gamma"] = p.gamma;
                j["bias"] = p.bias;
                auto svs = ordered_json::array();
                for (const FeatureVector& fv : p.support_vectors)
                    svs.push_back(feature_vector_json(fv));
                j["support_vectors"] = std::move(svs);
                j["dual_coefficients"] = p.dual_coefficients;
                j["platt_slope"] = p.platt_slope;
                j["platt_intercept"] = p.platt_intercept;
                return j;
            },
            [](const ForestParams& p) {
                ordered_json j;
                auto trees = ordered_json::array();
                for (const Tree& tree : p.trees) {
                    auto nodes = ordered_json::array();
                    for (const TreeNode& n : tree.nodes)
                        nodes.push_back({n.split_feature, n.split_threshold, n.left, n.right,
                                         n.leaf_class});
                    trees.push_back(std::move(nodes));
                }
                j["trees"] = std::move(trees);
                return j;
            },
            [](const MlpParams& p) {
                ordered_json j;
                auto layers = ordered_json::array();
                for (const MlpLayer& layer : p.layers) {
                    ordered_json lj;
                    lj["weights"] = layer.weights;
                    lj["biases"] = layer.biases;
                    lj["activation"] = layer.activation;
                    layers.push_back(std::move(lj));
                }
                j["layers"] = std::move(layers);
                return j;
            },
        },
        params);
}

LogRegParams logreg_from_json(const json& j) {
    LogRegParams p;
    const json& w = j.at("weights");
    if (!w.is_array() || w.size() != FeatureVector::kDim)
        throw CorruptModelFileError("logreg weights must have 10 components");
    for (std::size_t d = 0; d < FeatureVector::kDim; ++d) {
        p.weights[d] = w[d].get<double>();
        require_finite(p.weights[d], "logreg weight");
    }
    p.bias = j.at("bias").get<double>();
    require_finite(p.bias, "logreg bias");
    return p;
}

KnnParams knn_from_json(const json& j) {
    KnnParams p;
    p.k = j.at("k").get<long long>();
    for (const json& fv : j.at("features")) p.features.push_back(feature_vector_from_json(fv));
    for (const json& label : j.at("labels")) {
        const auto name = label.get<std::string>();
        if (name == "high") p.labels.push_back(QualityLabel::High);
        else if (name == "low") p.labels.push_back(QualityLabel::Low);
        else throw CorruptModelFileError("knn label must be \"high\" or \"low\"");
    }
    if (p.features.empty() || p.features.size() != p.labels.size())
        throw CorruptModelFileError("knn features and labels must align and be nonempty");
    if (p.k < 1 || static_cast<std::size_t>(p.k) > p.features.size())
        throw CorruptModelFileError("knn k must lie in [1, n_stored]");
    return p;
}

SvcParams svc_from_json(const json& j) {
    if (j.at("kernel").get<std::string>() != "rbf")
        throw CorruptModelFileError("svc kernel must be \"rbf\"");
    SvcParams p;
    p.gamma = j.at("gamma").get<double>();
    p.bias = j.at("bias").get<double>();
    for (const json& fv : j.at("support_vectors"))
        p.support_vectors.push_back(feature_vector_from_json(fv));
    p.dual_coefficients = j.at("dual_coefficients").get<std::vector<double>>();
    p.platt_slope = j.at("platt_slope").get<double>();
    p.platt_intercept = j.at("platt_intercept").get<double>();

    if (!(p.gamma > 0.0)) throw CorruptModelFileError("svc gamma must be > 0");
    require_finite(p.bias, "svc bias");
    require_finite(p.platt_slope, "svc platt_slope");
    require_finite(p.platt_intercept, "svc platt_intercept");
    if (p.support_vectors.empty() || p.support_vectors.size() != p.dual_coefficients.size())
        throw CorruptModelFileError("svc support vectors and dual coefficients must align");
    bool has_positive = false, has_negative = false;
    for (double c : p.dual_coefficients) {
        require_finite(c, "svc dual coefficient");
        if (c > 0.0) has_positive = true;
        if (c < 0.0) has_negative = true;
    }
    if (!has_positive || !has_negative)
        throw CorruptModelFileError("svc needs support vectors from both classes");
    return p;
}

ForestParams forest_from_json(const json& j) {
    ForestParams p;
    const json& trees = j.at("trees");
    if (!trees.is_array() || trees.empty())
        throw CorruptModelFileError("random_forest needs at least one tree");
    for (const json& tj : trees) {
        if (!tj.is_array() || tj.empty())
            throw CorruptModelFileError("each tree needs at least one node");
        Tree tree;
        const int node_count = static_cast<int>(tj.size());
        for (const json& nj : tj) {
            if (!nj.is_array() || nj.size() != 5)
                throw CorruptModelFileError(
                    "tree node must be [split_feature, split_threshold, left, right, leaf_class]");
            TreeNode n{nj[0].get<int>(), nj[1].get<double>(), nj[2].get<int>(), nj[3].get<int>(),
                       nj[4].get<int>()};
            const int index = static_cast<int>(tree.nodes.size());
            if (n.split_feature < 0) {
                if (n.leaf_class != 0 && n.leaf_class != 1)
                    throw CorruptModelFileError("leaf class must be 0 or 1");
                if (n.left != -1 || n.right != -1)
                    throw CorruptModelFileError("leaf nodes cannot have children");
            } else {
                if (n.split_feature >= static_cast<int>(FeatureVector::kDim))
                    throw CorruptModelFileError("split feature out of range");
                require_finite(n.split_threshold, "split threshold");
                // Children are emitted after their parent, so forward-only
                // indices guarantee an acyclic walk.
                if (n.left <= index || n.left >= node_count || n.right <= index ||
                    n.right >= node_count)
                    throw CorruptModelFileError("tree child indices out of range");
                if (n.leaf_class != -1)
                    throw CorruptModelFileError("internal nodes carry no leaf class");
            }
            tree.nodes.push_back(n);
        }
        p.trees.push_back(std::move(tree));
    }
    return p;
}

MlpParams mlp_from_json(const json& j) {
    MlpParams p;
    for (const json& lj : j.at("layers")) {
        MlpLayer layer;
        layer.weights = lj.at("weights").get<std::vector<std::vector<double>>>();
        layer.biases = lj.at("biases").get<std::vector<double>>();
        layer.activation = lj.at("activation").get<std::string>();
        if (layer.activation != "tanh" && layer.activation != "sigmoid")
            throw CorruptModelFileError("mlp activation must be \"tanh\" or \"sigmoid\"");
        if (layer.weights.size() != layer.biases.size() || layer.weights.empty())
            throw CorruptModelFileError("mlp layer weights and biases must align");
        for (const auto& row : layer.weights)
            for (double w : row) require_finite(w, "mlp weight");
        for (double b : layer.biases) require_finite(b, "mlp bias");
        p.layers.push_back(std::move(layer));
    }
    if (p.layers.empty()) throw CorruptModelFileError("mlp needs at least one layer");

    std::size_t in_dim = FeatureVector::kDim;
    for (const MlpLayer& layer : p.layers) {
        for (const auto& row : layer.weights)
            if (row.size() != in_dim)
                throw CorruptModelFileError("mlp layer input width mismatch");
        in_dim = layer.weights.size();
    }
    if (in_dim != 1) throw CorruptModelFileError("mlp output layer must have a single unit");
    return p;
}

}  // namespace

void save_model(const TrainedModel& model, const std::string& path) {
    ordered_json doc;
    doc["format_version"] = kModelFormatVersion;
    doc["family"] = family_name(model.family);
    doc["feature_order"] = model.feature_order;
    doc["parameters"] = params_json(model.params);
    doc["train_meta"] = {{"seed", model.meta.seed},
                         {"sample_count", model.meta.sample_count},
                         {"timestamp", model.meta.timestamp},
                         {"convergence_warning", model.meta.convergence_warning}};

    std::ofstream out(path);
    if (!out) throw IoError("cannot write model file '" + path + "'");
    out << doc.dump(2) << '\n';
    out.flush();
    if (!out) throw IoError("write failure on '" + path + "'");
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw CorruptModelFileError(path + ": " + e.what());
    }

    try {
        if (!doc.is_object() || !doc.contains("format_version"))
            throw CorruptModelFileError(path + ": missing format_version");
        if (!doc["format_version"].is_number_integer() ||
            doc["format_version"].get<int>() != kModelFormatVersion)
            throw FormatVersionMismatchError(path + ": unsupported format_version " +
                                             doc["format_version"].dump());

        TrainedModel model;
        const auto family = doc.at("family").get<std::string>();
        if (family == "logreg") model.family = ModelFamily::LogReg;
        else if (family == "knn") model.family = ModelFamily::Knn;
        else if (family == "svc") model.family = ModelFamily::Svc;
        else if (family == "random_forest") model.family = ModelFamily::RandomForest;
        else if (family == "mlp") model.family = ModelFamily::Mlp;
        else throw CorruptModelFileError(path + ": unknown family '" + family + "'");

        model.feature_order = doc.at("feature_order").get<std::vector<std::string>>();

        const json& params = doc.at("parameters");
        switch (model.family) {
            case ModelFamily::LogReg: model.params = logreg_from_json(params); break;
            case ModelFamily::Knn: model.params = knn_from_json(params); break;
            case ModelFamily::Svc: model.params = svc_from_json(params); break;
            case ModelFamily::RandomForest: model.params = forest_from_json(params); break;
            case ModelFamily::Mlp: model.params = mlp_from_json(params); break;
        }

        const json& meta = doc.at("train_meta");
        model.meta.seed = meta.at("seed").get<std::uint64_t>();
        model.meta.sample_count = meta.at("sample_count").get<long long>();
        model.meta.timestamp = meta.at("timestamp").get<long long>();
        model.meta.convergence_warning = meta.at("convergence_warning").get<bool>();
        return model;
    } catch (const json::exception& e) {
        throw CorruptModelFileError(path + ": " + e.what());
    }
}

}  // namespace fqgate
