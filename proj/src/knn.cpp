#include <algorithm>
#include <vector>

#include "fqgate/classifiers.hpp"
#include "scoring_internal.hpp"

namespace fqgate::detail {

double knn_vote_fraction(const KnnParams& p, const FeatureVector& fv) {
    const std::size_t n = p.features.size();
    std::vector<std::pair<double, std::size_t>> by_distance;
    by_distance.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double d_sq = 0.0;
        for (std::size_t d = 0; d < FeatureVector::kDim; ++d) {
            const double diff = p.features[i].values[d] - fv.values[d];
            d_sq += diff * diff;
        }
        by_distance.emplace_back(d_sq, i);
    }
    // Equidistant neighbors rank by ingestion index.
    std::sort(by_distance.begin(), by_distance.end());

    const auto k = static_cast<std::size_t>(p.k);
    std::size_t high_votes = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (p.labels[by_distance[i].second] == QualityLabel::High) ++high_votes;
    }
    return static_cast<double>(high_votes) / static_cast<double>(k);
}

}  // namespace fqgate::detail
