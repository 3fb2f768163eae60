#pragma once

#include <optional>
#include <string>

#include "fqgate/types.hpp"

namespace fqgate {

struct TrainedModel;

// Positive class = High throughout.
struct ConfusionMatrix {
    long long tp = 0;
    long long fp = 0;
    long long fn = 0;
    long long tn = 0;

    long long total() const { return tp + fp + fn + tn; }

    bool operator==(const ConfusionMatrix&) const = default;
};

// Metrics with a zero denominator are left unset rather than reported as 0.
struct ClassificationReport {
    double accuracy = 0.0;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
    ConfusionMatrix confusion;
    long long n = 0;

    bool operator==(const ClassificationReport&) const = default;
};

ClassificationReport report_from_confusion(const ConfusionMatrix& cm);

// Scores every sample in test_set with the model and tallies against labels.
ClassificationReport evaluate(const TrainedModel& model, const Dataset& test_set,
                              double threshold = 0.5);

// Fraction -> "96.67" (two decimals, percent scale); "n/a" when unset.
std::string format_percent(std::optional<double> fraction);

}  // namespace fqgate
