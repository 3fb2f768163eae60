#pragma once

#include "fqgate/classifiers.hpp"

// Per-family score kernels behind the public score() dispatch.
namespace fqgate::detail {

double logreg_score(const LogRegParams& p, const FeatureVector& fv);
double knn_vote_fraction(const KnnParams& p, const FeatureVector& fv);
double svc_score(const SvcParams& p, const FeatureVector& fv);
double forest_score(const ForestParams& p, const FeatureVector& fv);
double mlp_forward(const MlpParams& p, const FeatureVector& fv);

}  // namespace fqgate::detail
