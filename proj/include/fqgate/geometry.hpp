#pragma once

#include <array>
#include <string>
#include <vector>

#include "fqgate/types.hpp"

namespace fqgate {

// Keypoints mapped into the unit square of their bounding box:
// x' = (x - x_min) / (x_max - x_min), same for y.
struct NormalizedKeyPoints {
    std::array<Point, KeyPointSet::kCount> points{};

    bool operator==(const NormalizedKeyPoints&) const = default;
};

// Flattened normalized keypoints, interleaved [x'1, y'1, ..., x'5, y'5].
struct FeatureVector {
    static constexpr std::size_t kDim = 2 * KeyPointSet::kCount;

    std::array<double, kDim> values{};

    bool operator==(const FeatureVector&) const = default;
};

struct ResolutionGateConfig {
    double min_bbox_area = 4096.0;  // 64x64 px
};

// Component names matching FeatureVector layout, used to stamp model files.
const std::vector<std::string>& canonical_feature_order();

NormalizedKeyPoints normalize_keypoints(const KeyPointSet& kp, const BoundingBox& box);
FeatureVector extract_features(const KeyPointSet& kp, const BoundingBox& box);

double bbox_area(const BoundingBox& box);
bool resolution_gate(const BoundingBox& box, const ResolutionGateConfig& cfg);

}  // namespace fqgate
