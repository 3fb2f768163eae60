#pragma once

#include <map>
#include <optional>
#include <string>

#include "fqgate/geometry.hpp"
#include "fqgate/types.hpp"

namespace fqgate {

struct TrainedModel;

// One high-quality reference embedding per subject.
struct Gallery {
    std::map<std::string, Embedding> entries;

    bool operator==(const Gallery&) const = default;
};

struct VerificationConfig {
    double similarity_threshold = 0.5;
    double quality_threshold = 0.5;
    ResolutionGateConfig gate;
};

enum class Condition { Baseline, Gated };

struct VerificationReport {
    Condition condition = Condition::Baseline;
    long long n_attempts = 0;
    long long n_rejected = 0;
    double frr = 0.0;  // n_rejected / n_attempts over compared probes
    std::optional<double> mean_similarity;  // unset when nothing was compared
    std::optional<double> std_similarity;   // population (/n)
    std::optional<long long> n_filtered_out;  // gated condition only

    bool operator==(const VerificationReport&) const = default;
};

struct VerifyOutcome {
    double similarity = 0.0;
    bool is_match = false;
};

double cosine_similarity(const Embedding& e1, const Embedding& e2);

VerifyOutcome verify_pair(const Embedding& ref, const Embedding& probe,
                          const VerificationConfig& cfg);

// Baseline when model is null: every probe is compared against its subject's
// reference. Gated otherwise: probes failing the resolution gate or scoring
// below quality_threshold are excluded before comparison.
VerificationReport run_experiment(const Gallery& gallery, const Dataset& probes,
                                  const TrainedModel* model, const VerificationConfig& cfg);

}  // namespace fqgate
