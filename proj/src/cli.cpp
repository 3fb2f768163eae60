#include "fqgate/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fqgate/classifiers.hpp"
#include "fqgate/dataset_io.hpp"
#include "fqgate/errors.hpp"
#include "fqgate/metrics.hpp"
#include "fqgate/model_io.hpp"
#include "fqgate/split.hpp"
#include "fqgate/synthetic.hpp"
#include "fqgate/verification.hpp"

namespace fqgate {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

bool given(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidConfigError(path + ": " + e.what());
    }
    if (!doc.is_object()) throw InvalidConfigError(path + ": config must be a JSON object");
    return doc;
}

void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw InvalidConfigError("unknown config key '" + key + "' in " + where);
    }
}

template <typename T>
void config_get(const json& j, const char* key, T& target) {
    if (!j.contains(key)) return;
    try {
        target = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidConfigError(std::string("config key '") + key + "' has the wrong type");
    }
}

// Flags win over config values, so config application is gated on the flag
// not having been passed.
template <typename T>
void config_get_unless(const json& j, const char* key, const CLI::Option* flag, T& target) {
    if (given(flag)) return;
    config_get(j, key, target);
}

void ensure_distinct_outputs(const std::vector<std::string>& inputs,
                             const std::vector<std::string>& outputs) {
    std::vector<fs::path> out_paths;
    for (const std::string& o : outputs) out_paths.push_back(fs::absolute(o).lexically_normal());
    for (std::size_t a = 0; a < out_paths.size(); ++a)
        for (std::size_t b = a + 1; b < out_paths.size(); ++b)
            if (out_paths[a] == out_paths[b])
                throw InvalidConfigError("output paths collide: '" + outputs[a] + "'");
    for (const std::string& i : inputs) {
        const fs::path ip = fs::absolute(i).lexically_normal();
        for (std::size_t a = 0; a < out_paths.size(); ++a)
            if (ip == out_paths[a])
                throw InvalidConfigError("output path '" + outputs[a] +
                                         "' collides with an input file");
    }
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
}

std::string quartet_line(const ClassificationReport& rep) {
    return "accuracy=" + format_percent(rep.accuracy) + " precision=" +
           format_percent(rep.precision) + " recall=" + format_percent(rep.recall) +
           " f1=" + format_percent(rep.f1);
}

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// --- synth ---------------------------------------------------------------

SynthConfig synth_config_from_json(const json& cfg_doc, const CLI::Option* seed_flag,
                                   SynthConfig base) {
    reject_unknown_keys(cfg_doc,
                        {"out", "seed", "n_subjects", "images_per_subject", "yaw_half_range",
                         "pitch_half_range", "scale_min", "scale_max", "landmark_noise_frac",
                         "embedding_dim", "high_quality_rule", "degradation"},
                        "synth config");
    config_get_unless(cfg_doc, "seed", seed_flag, base.seed);
    config_get(cfg_doc, "n_subjects", base.n_subjects);
    config_get(cfg_doc, "images_per_subject", base.images_per_subject);
    config_get(cfg_doc, "yaw_half_range", base.yaw_half_range);
    config_get(cfg_doc, "pitch_half_range", base.pitch_half_range);
    config_get(cfg_doc, "scale_min", base.scale_min);
    config_get(cfg_doc, "scale_max", base.scale_max);
    config_get(cfg_doc, "landmark_noise_frac", base.landmark_noise_frac);
    config_get(cfg_doc, "embedding_dim", base.embedding_dim);
    if (cfg_doc.contains("high_quality_rule")) {
        const json& rule = cfg_doc.at("high_quality_rule");
        reject_unknown_keys(rule, {"max_abs_yaw", "max_abs_pitch", "min_bbox_area"},
                            "high_quality_rule");
        config_get(rule, "max_abs_yaw", base.rule.max_abs_yaw);
        config_get(rule, "max_abs_pitch", base.rule.max_abs_pitch);
        config_get(rule, "min_bbox_area", base.rule.min_bbox_area);
    }
    if (cfg_doc.contains("degradation")) {
        const json& deg = cfg_doc.at("degradation");
        reject_unknown_keys(deg, {"base_sigma", "pose_sigma_gain", "scale_sigma_gain"},
                            "degradation");
        config_get(deg, "base_sigma", base.degradation.base_sigma);
        config_get(deg, "pose_sigma_gain", base.degradation.pose_sigma_gain);
        config_get(deg, "scale_sigma_gain", base.degradation.scale_sigma_gain);
    }
    return base;
}

int run_synth(const std::string& out_dir, const SynthConfig& cfg) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());

    const std::string dataset_path = (fs::path(out_dir) / "dataset.jsonl").string();
    const std::string gallery_path = (fs::path(out_dir) / "gallery.json").string();
    ensure_distinct_outputs({}, {dataset_path, gallery_path});

    const SynthOutput out = generate(cfg);
    save_dataset_jsonl(out.dataset, dataset_path);
    save_gallery_json(out.gallery, gallery_path);

    long long high = 0;
    for (const FaceSample& s : out.dataset.samples)
        if (s.label && *s.label == QualityLabel::High) ++high;
    const long long total = static_cast<long long>(out.dataset.size());
    std::cout << "generated " << total << " samples (high " << high << ", low " << total - high
              << ") across " << out.gallery.entries.size() << " subjects\n";
    std::cout << "dataset -> " << dataset_path << '\n';
    std::cout << "gallery -> " << gallery_path << '\n';
    return 0;
}

// --- train ----------------------------------------------------------------

FamilyConfig family_params_from_json(ModelFamily family, const json& params) {
    FamilyConfig cfg = default_train_config(family).family_params;
    switch (family) {
        case ModelFamily::LogReg: {
            auto& c = std::get<LogRegConfig>(cfg);
            reject_unknown_keys(
                params, {"learning_rate", "max_iterations", "gradient_tolerance", "l2_lambda"},
                "family_params");
            config_get(params, "learning_rate", c.learning_rate);
            config_get(params, "max_iterations", c.max_iterations);
            config_get(params, "gradient_tolerance", c.gradient_tolerance);
            config_get(params, "l2_lambda", c.l2_lambda);
            break;
        }
        case ModelFamily::Knn: {
            auto& c = std::get<KnnConfig>(cfg);
            reject_unknown_keys(params, {"k"}, "family_params");
            config_get(params, "k", c.k);
            break;
        }
        case ModelFamily::Svc: {
            auto& c = std::get<SvcConfig>(cfg);
            reject_unknown_keys(params, {"gamma", "c", "tolerance"}, "family_params");
            config_get(params, "gamma", c.gamma);
            config_get(params, "c", c.c);
            config_get(params, "tolerance", c.tolerance);
            break;
        }
        case ModelFamily::RandomForest: {
            auto& c = std::get<ForestConfig>(cfg);
            reject_unknown_keys(params, {"tree_count", "features_per_split", "min_samples_split"},
                                "family_params");
            config_get(params, "tree_count", c.tree_count);
            config_get(params, "features_per_split", c.features_per_split);
            config_get(params, "min_samples_split", c.min_samples_split);
            break;
        }
        case ModelFamily::Mlp: {
            auto& c = std::get<MlpConfig>(cfg);
            reject_unknown_keys(params, {"hidden1", "hidden2", "learning_rate", "epochs"},
                                "family_params");
            config_get(params, "hidden1", c.hidden1);
            config_get(params, "hidden2", c.hidden2);
            config_get(params, "learning_rate", c.learning_rate);
            config_get(params, "epochs", c.epochs);
            break;
        }
    }
    return cfg;
}

int run_train(const std::string& dataset_path, const std::string& family_name_arg,
              std::uint64_t seed, const std::string& model_path, std::string report_path,
              double train_fraction, bool stratified, double threshold, const json& cfg_doc) {
    if (report_path.empty()) report_path = model_path + ".report.json";
    ensure_distinct_outputs({dataset_path}, {model_path, report_path});

    const ModelFamily family = family_from_name(family_name_arg);
    TrainConfig cfg = default_train_config(family, seed);
    if (cfg_doc.contains("family_params"))
        cfg.family_params = family_params_from_json(family, cfg_doc.at("family_params"));

    LoadedDataset loaded = load_dataset_jsonl(dataset_path);
    print_warnings(loaded.warnings);

    SplitSpec split_spec;
    split_spec.train_fraction = train_fraction;
    split_spec.seed = split_seed_for(seed);
    split_spec.stratified = stratified;
    const auto [train_set, test_set] = split_dataset(loaded.dataset, split_spec);

    const TrainedModel model = train(train_set, cfg);
    if (model.meta.convergence_warning)
        std::cerr << "warning: " << family_name(family)
                  << " training hit its iteration cap before converging\n";

    const ClassificationReport rep = evaluate(model, test_set, threshold);
    save_model(model, model_path);
    write_json_file(classification_report_json(rep), report_path);

    std::cout << "train n=" << train_set.size() << " test n=" << test_set.size() << '\n';
    std::cout << quartet_line(rep) << '\n';
    std::cout << "model -> " << model_path << '\n';
    std::cout << "report -> " << report_path << '\n';
    return 0;
}

// --- evaluate ---------------------------------------------------------------

int run_evaluate(const std::string& model_path, const std::string& dataset_path, double threshold,
                 const std::string& report_path) {
    ensure_distinct_outputs({model_path, dataset_path}, {report_path});
    const TrainedModel model = load_model(model_path);
    LoadedDataset loaded = load_dataset_jsonl(dataset_path);
    print_warnings(loaded.warnings);

    const ClassificationReport rep = evaluate(model, loaded.dataset, threshold);
    write_json_file(classification_report_json(rep), report_path);
    std::cout << quartet_line(rep) << '\n';
    std::cout << "report -> " << report_path << '\n';
    return 0;
}

// --- gate -------------------------------------------------------------------

int run_gate(const std::string& model_path, const std::string& dataset_path,
             double quality_threshold, double min_bbox_area, const std::string& out_path,
             std::string scores_path) {
    if (scores_path.empty()) scores_path = out_path + ".scores.csv";
    ensure_distinct_outputs({model_path, dataset_path}, {out_path, scores_path});
    if (!(quality_threshold >= 0.0 && quality_threshold <= 1.0))
        throw InvalidConfigError("quality_threshold must lie in [0, 1]");
    if (!(min_bbox_area >= 0.0)) throw InvalidConfigError("min_bbox_area must be >= 0");

    const TrainedModel model = load_model(model_path);
    LoadedDataset loaded = load_dataset_jsonl(dataset_path);
    print_warnings(loaded.warnings);

    const ResolutionGateConfig gate_cfg{min_bbox_area};
    Dataset filtered;
    filtered.name = loaded.dataset.name + "/gated";

    std::ofstream csv(scores_path);
    if (!csv) throw IoError("cannot write scores file '" + scores_path + "'");
    csv << "sample_id,bbox_area,score,decision\n";
    for (const FaceSample& s : loaded.dataset.samples) {
        const double area = bbox_area(s.bbox);
        const double value = score_value(model, extract_features(s.keypoints, s.bbox));
        const bool passes = resolution_gate(s.bbox, gate_cfg) && value >= quality_threshold;
        csv << s.sample_id << ',' << g17(area) << ',' << g17(value) << ','
            << (passes ? "pass" : "reject") << '\n';
        if (passes) filtered.samples.push_back(s);
    }
    csv.flush();
    if (!csv) throw IoError("write failure on '" + scores_path + "'");

    save_dataset_jsonl(filtered, out_path);
    std::cout << "passed " << filtered.size() << " of " << loaded.dataset.size() << " samples ("
              << loaded.dataset.size() - filtered.size() << " filtered out)\n";
    std::cout << "filtered dataset -> " << out_path << '\n';
    std::cout << "scores -> " << scores_path << '\n';
    return 0;
}

// --- verify-impact -----------------------------------------------------------

int run_verify_impact(const std::string& gallery_path, const std::string& dataset_path,
                      const std::string& model_path, double similarity_threshold,
                      double quality_threshold, double min_bbox_area,
                      const std::string& out_path) {
    std::vector<std::string> inputs = {gallery_path, dataset_path};
    if (!model_path.empty()) inputs.push_back(model_path);
    ensure_distinct_outputs(inputs, {out_path});

    const Gallery gallery = load_gallery_json(gallery_path);
    LoadedDataset loaded = load_dataset_jsonl(dataset_path);
    print_warnings(loaded.warnings);

    VerificationConfig cfg;
    cfg.similarity_threshold = similarity_threshold;
    cfg.quality_threshold = quality_threshold;
    cfg.gate.min_bbox_area = min_bbox_area;

    const VerificationReport baseline = run_experiment(gallery, loaded.dataset, nullptr, cfg);
    nlohmann::ordered_json doc;
    doc["format_version"] = 1;
    doc["baseline"] = verification_report_json(baseline);

    auto describe = [](const VerificationReport& r) {
        std::string line = "n_attempts=" + std::to_string(r.n_attempts) +
                           " frr=" + format_percent(r.frr) + "%";
        if (r.mean_similarity) line += " mean_similarity=" + g17(*r.mean_similarity);
        if (r.n_filtered_out) line += " filtered_out=" + std::to_string(*r.n_filtered_out);
        return line;
    };
    std::cout << "baseline: " << describe(baseline) << '\n';

    if (!model_path.empty()) {
        const TrainedModel model = load_model(model_path);
        const VerificationReport gated = run_experiment(gallery, loaded.dataset, &model, cfg);
        doc["gated"] = verification_report_json(gated);
        std::cout << "gated:    " << describe(gated) << '\n';
    }

    write_json_file(doc, out_path);
    std::cout << "report -> " << out_path << '\n';
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"face quality gating: synthetic benchmark, classifiers, verification impact"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "generate the synthetic benchmark");
    std::string synth_out;
    std::uint64_t synth_seed = 0;
    std::string synth_config;
    synth->add_option("--out", synth_out, "output directory")->required();
    auto* synth_seed_opt = synth->add_option("--seed", synth_seed, "generator seed");
    synth->add_option("--config", synth_config, "JSON config file");

    // train
    auto* train_cmd = app.add_subcommand("train", "train a classifier with an 80/20 evaluation");
    std::string train_dataset, train_family, train_out, train_report, train_config;
    std::uint64_t train_seed = 0;
    double train_fraction = 0.8;
    bool no_stratify = false;
    double train_threshold = 0.5;
    auto* train_dataset_opt =
        train_cmd->add_option("--dataset", train_dataset, "labeled dataset JSONL");
    auto* train_family_opt = train_cmd->add_option(
        "--family", train_family, "logreg|knn|svc|rf|random_forest|mlp");
    auto* train_seed_opt = train_cmd->add_option("--seed", train_seed, "training seed");
    auto* train_out_opt = train_cmd->add_option("--out", train_out, "model output path");
    auto* train_report_opt =
        train_cmd->add_option("--report", train_report, "report output path (default <out>.report.json)");
    auto* train_fraction_opt =
        train_cmd->add_option("--train-fraction", train_fraction, "train split fraction");
    auto* no_stratify_opt =
        train_cmd->add_flag("--no-stratify", no_stratify, "disable stratified splitting");
    auto* train_threshold_opt =
        train_cmd->add_option("--threshold", train_threshold, "decision threshold for evaluation");
    train_cmd->add_option("--config", train_config, "JSON config file");

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "evaluate a saved model on a labeled dataset");
    std::string eval_model, eval_dataset, eval_out, eval_config;
    double eval_threshold = 0.5;
    auto* eval_model_opt = eval_cmd->add_option("--model", eval_model, "model file");
    auto* eval_dataset_opt = eval_cmd->add_option("--dataset", eval_dataset, "dataset JSONL");
    auto* eval_threshold_opt =
        eval_cmd->add_option("--threshold", eval_threshold, "decision threshold");
    auto* eval_out_opt = eval_cmd->add_option("--out", eval_out, "report output path");
    eval_cmd->add_option("--config", eval_config, "JSON config file");

    // gate
    auto* gate_cmd = app.add_subcommand("gate", "filter a dataset through the quality gate");
    std::string gate_model, gate_dataset, gate_out, gate_scores, gate_config;
    double gate_quality = 0.5, gate_min_area = 4096.0;
    auto* gate_model_opt = gate_cmd->add_option("--model", gate_model, "model file");
    auto* gate_dataset_opt = gate_cmd->add_option("--dataset", gate_dataset, "dataset JSONL");
    auto* gate_quality_opt =
        gate_cmd->add_option("--quality-threshold", gate_quality, "minimum quality score");
    auto* gate_min_area_opt =
        gate_cmd->add_option("--min-bbox-area", gate_min_area, "resolution gate in px^2");
    auto* gate_out_opt = gate_cmd->add_option("--out", gate_out, "filtered dataset path");
    auto* gate_scores_opt =
        gate_cmd->add_option("--scores", gate_scores, "per-sample CSV path (default <out>.scores.csv)");
    gate_cmd->add_option("--config", gate_config, "JSON config file");

    // verify-impact
    auto* verify_cmd =
        app.add_subcommand("verify-impact", "baseline vs gated verification comparison");
    std::string verify_gallery, verify_dataset, verify_model, verify_out, verify_config;
    double verify_sim = 0.5, verify_quality = 0.5, verify_min_area = 4096.0;
    auto* verify_gallery_opt =
        verify_cmd->add_option("--gallery", verify_gallery, "gallery JSON file");
    auto* verify_dataset_opt =
        verify_cmd->add_option("--dataset", verify_dataset, "probe dataset JSONL");
    auto* verify_model_opt =
        verify_cmd->add_option("--model", verify_model, "model file (omit for baseline only)");
    auto* verify_sim_opt = verify_cmd->add_option("--similarity-threshold", verify_sim,
                                                  "cosine match threshold");
    auto* verify_quality_opt =
        verify_cmd->add_option("--quality-threshold", verify_quality, "minimum quality score");
    auto* verify_min_area_opt =
        verify_cmd->add_option("--min-bbox-area", verify_min_area, "resolution gate in px^2");
    auto* verify_out_opt = verify_cmd->add_option("--out", verify_out, "report output path");
    verify_cmd->add_option("--config", verify_config, "JSON config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (synth->parsed()) {
            SynthConfig cfg;
            cfg.seed = synth_seed;
            if (!synth_config.empty())
                cfg = synth_config_from_json(load_config_file(synth_config), synth_seed_opt, cfg);
            return run_synth(synth_out, cfg);
        }

        if (train_cmd->parsed()) {
            json cfg_doc = json::object();
            if (!train_config.empty()) {
                cfg_doc = load_config_file(train_config);
                reject_unknown_keys(cfg_doc,
                                    {"dataset", "family", "seed", "out", "report",
                                     "train_fraction", "stratified", "threshold", "family_params"},
                                    "train config");
                config_get_unless(cfg_doc, "dataset", train_dataset_opt, train_dataset);
                config_get_unless(cfg_doc, "family", train_family_opt, train_family);
                config_get_unless(cfg_doc, "seed", train_seed_opt, train_seed);
                config_get_unless(cfg_doc, "out", train_out_opt, train_out);
                config_get_unless(cfg_doc, "report", train_report_opt, train_report);
                config_get_unless(cfg_doc, "train_fraction", train_fraction_opt, train_fraction);
                config_get_unless(cfg_doc, "threshold", train_threshold_opt, train_threshold);
                if (!given(no_stratify_opt) && cfg_doc.contains("stratified")) {
                    bool stratified = true;
                    config_get(cfg_doc, "stratified", stratified);
                    no_stratify = !stratified;
                }
            }
            if (train_dataset.empty()) throw InvalidConfigError("train needs --dataset");
            if (train_family.empty()) throw InvalidConfigError("train needs --family");
            if (train_out.empty()) throw InvalidConfigError("train needs --out");
            return run_train(train_dataset, train_family, train_seed, train_out, train_report,
                             train_fraction, !no_stratify, train_threshold, cfg_doc);
        }

        if (eval_cmd->parsed()) {
            if (!eval_config.empty()) {
                const json cfg_doc = load_config_file(eval_config);
                reject_unknown_keys(cfg_doc, {"model", "dataset", "threshold", "out"},
                                    "evaluate config");
                config_get_unless(cfg_doc, "model", eval_model_opt, eval_model);
                config_get_unless(cfg_doc, "dataset", eval_dataset_opt, eval_dataset);
                config_get_unless(cfg_doc, "threshold", eval_threshold_opt, eval_threshold);
                config_get_unless(cfg_doc, "out", eval_out_opt, eval_out);
            }
            if (eval_model.empty()) throw InvalidConfigError("evaluate needs --model");
            if (eval_dataset.empty()) throw InvalidConfigError("evaluate needs --dataset");
            if (eval_out.empty()) throw InvalidConfigError("evaluate needs --out");
            return run_evaluate(eval_model, eval_dataset, eval_threshold, eval_out);
        }

        if (gate_cmd->parsed()) {
            if (!gate_config.empty()) {
                const json cfg_doc = load_config_file(gate_config);
                reject_unknown_keys(
                    cfg_doc, {"model", "dataset", "quality_threshold", "min_bbox_area", "out",
                              "scores"},
                    "gate config");
                config_get_unless(cfg_doc, "model", gate_model_opt, gate_model);
                config_get_unless(cfg_doc, "dataset", gate_dataset_opt, gate_dataset);
                config_get_unless(cfg_doc, "quality_threshold", gate_quality_opt, gate_quality);
                config_get_unless(cfg_doc, "min_bbox_area", gate_min_area_opt, gate_min_area);
                config_get_unless(cfg_doc, "out", gate_out_opt, gate_out);
                config_get_unless(cfg_doc, "scores", gate_scores_opt, gate_scores);
            }
            if (gate_model.empty()) throw InvalidConfigError("gate needs --model");
            if (gate_dataset.empty()) throw InvalidConfigError("gate needs --dataset");
            if (gate_out.empty()) throw InvalidConfigError("gate needs --out");
            return run_gate(gate_model, gate_dataset, gate_quality, gate_min_area, gate_out,
                            gate_scores);
        }

        if (verify_cmd->parsed()) {
            if (!verify_config.empty()) {
                const json cfg_doc = load_config_file(verify_config);
                reject_unknown_keys(cfg_doc,
                                    {"gallery", "dataset", "model", "similarity_threshold",
                                     "quality_threshold", "min_bbox_area", "out"},
                                    "verify-impact config");
                config_get_unless(cfg_doc, "gallery", verify_gallery_opt, verify_gallery);
                config_get_unless(cfg_doc, "dataset", verify_dataset_opt, verify_dataset);
                config_get_unless(cfg_doc, "model", verify_model_opt, verify_model);
                config_get_unless(cfg_doc, "similarity_threshold", verify_sim_opt, verify_sim);
                config_get_unless(cfg_doc, "quality_threshold", verify_quality_opt,
                                  verify_quality);
                config_get_unless(cfg_doc, "min_bbox_area", verify_min_area_opt, verify_min_area);
                config_get_unless(cfg_doc, "out", verify_out_opt, verify_out);
            }
            if (verify_gallery.empty()) throw InvalidConfigError("verify-impact needs --gallery");
            if (verify_dataset.empty()) throw InvalidConfigError("verify-impact needs --dataset");
            if (verify_out.empty()) throw InvalidConfigError("verify-impact needs --out");
            return run_verify_impact(verify_gallery, verify_dataset, verify_model, verify_sim,
                                     verify_quality, verify_min_area, verify_out);
        }
    } catch (const InvalidConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;  // no subcommand matched (unreachable with require_subcommand)
}

}  // namespace fqgate
