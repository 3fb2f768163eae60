#include "fqgate/verification.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fqgate/classifiers.hpp"
#include "fqgate/errors.hpp"

namespace fqgate {

namespace {

void validate_config(const VerificationConfig& cfg) {
    if (!(cfg.similarity_threshold >= -1.0 && cfg.similarity_threshold <= 1.0))
        throw InvalidConfigError("similarity_threshold must lie in [-1, 1]");
    if (!(cfg.quality_threshold >= 0.0 && cfg.quality_threshold <= 1.0))
        throw InvalidConfigError("quality_threshold must lie in [0, 1]");
    if (!(cfg.gate.min_bbox_area >= 0.0))
        throw InvalidConfigError("min_bbox_area must be >= 0");
}

}  // namespace

double cosine_similarity(const Embedding& e1, const Embedding& e2) {
    if (e1.dim() != e2.dim())
        throw DimensionMismatchError("embeddings have different dimensions");
    const double n1 = e1.norm();
    const double n2 = e2.norm();
    if (n1 == 0.0 || n2 == 0.0) throw ZeroNormEmbeddingError("zero-norm embedding");
    double dot = 0.0;
    for (std::size_t i = 0; i < e1.values.size(); ++i) dot += e1.values[i] * e2.values[i];
    return std::clamp(dot / (n1 * n2), -1.0, 1.0);
}

VerifyOutcome verify_pair(const Embedding& ref, const Embedding& probe,
                          const VerificationConfig& cfg) {
    validate_config(cfg);
    VerifyOutcome out;
    out.similarity = cosine_similarity(ref, probe);
    out.is_match = out.similarity >= cfg.similarity_threshold;
    return out;
}

VerificationReport run_experiment(const Gallery& gallery, const Dataset& probes,
                                  const TrainedModel* model, const VerificationConfig& cfg) {
    validate_config(cfg);
    if (probes.empty()) throw TooFewSamplesError("probe dataset is empty");

    VerificationReport report;
    report.condition = model ? Condition::Gated : Condition::Baseline;
    long long filtered = 0;
    std::vector<double> similarities;
    similarities.reserve(probes.size());

    for (const FaceSample& probe : probes.samples) {
        const auto ref = gallery.entries.find(probe.subject_id);
        if (ref == gallery.entries.end())
            throw UnknownSubjectError("no gallery reference for subject '" + probe.subject_id +
                                      "'");
        if (!probe.embedding)
            throw MissingEmbeddingError("probe '" + probe.sample_id + "' has no embedding");

        if (model) {
            const FeatureVector fv = extract_features(probe.keypoints, probe.bbox);
            const bool passes = resolution_gate(probe.bbox, cfg.gate) &&
                                score_value(*model, fv) >= cfg.quality_threshold;
            if (!passes) {
                ++filtered;
                continue;
            }
        }

        const double sim = cosine_similarity(ref->second, *probe.embedding);
        similarities.push_back(sim);
        if (sim < cfg.similarity_threshold) ++report.n_rejected;
    }

    report.n_attempts = static_cast<long long>(similarities.size());
    report.frr = report.n_attempts > 0
                     ? static_cast<double>(report.n_rejected) / static_cast<double>(report.n_attempts)
                     : 0.0;
    if (!similarities.empty()) {
        // Sequential accumulation in probe order keeps the mean bit-stable.
        double sum = 0.0;
        for (double s : similarities) sum += s;
        const double mean = sum / static_cast<double>(similarities.size());
        double sq = 0.0;
        for (double s : similarities) sq += (s - mean) * (s - mean);
        report.mean_similarity = mean;
        report.std_similarity = std::sqrt(sq / static_cast<double>(similarities.size()));
    }
    if (model) report.n_filtered_out = filtered;
    return report;
}

}  // namespace fqgate
