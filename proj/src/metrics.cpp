#include "fqgate/metrics.hpp"

#include <cstdio>

#include "fqgate/classifiers.hpp"
#include "fqgate/errors.hpp"
#include "fqgate/geometry.hpp"

namespace fqgate {

ClassificationReport report_from_confusion(const ConfusionMatrix& cm) {
    if (cm.tp < 0 || cm.fp < 0 || cm.fn < 0 || cm.tn < 0)
        throw InvalidConfigError("confusion counts must be non-negative");
    ClassificationReport rep;
    rep.confusion = cm;
    rep.n = cm.total();
    if (rep.n == 0) throw TooFewSamplesError("cannot compute metrics over zero samples");

    rep.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(rep.n);
    if (cm.tp + cm.fp > 0)
        rep.precision = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
    if (cm.tp + cm.fn > 0)
        rep.recall = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
    if (rep.precision && rep.recall && *rep.precision + *rep.recall > 0.0)
        rep.f1 = 2.0 * *rep.precision * *rep.recall / (*rep.precision + *rep.recall);
    return rep;
}

ClassificationReport evaluate(const TrainedModel& model, const Dataset& test_set,
                              double threshold) {
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw InvalidConfigError("threshold must lie in [0, 1]");
    if (test_set.empty()) throw TooFewSamplesError("cannot evaluate on an empty dataset");

    ConfusionMatrix cm;
    for (const auto& sample : test_set.samples) {
        if (!sample.label)
            throw UnlabeledSampleError("sample '" + sample.sample_id + "' has no label");
        const FeatureVector fv = extract_features(sample.keypoints, sample.bbox);
        const QualityScore qs = score(model, fv, threshold);
        const bool truth_high = *sample.label == QualityLabel::High;
        if (qs.is_high() && truth_high) ++cm.tp;
        else if (qs.is_high() && !truth_high) ++cm.fp;
        else if (!qs.is_high() && truth_high) ++cm.fn;
        else ++cm.tn;
    }
    return report_from_confusion(cm);
}

std::string format_percent(std::optional<double> fraction) {
    if (!fraction) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", *fraction * 100.0);
    return buf;
}

}  // namespace fqgate
