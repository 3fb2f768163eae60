#include "fqgate/geometry.hpp"

#include "fqgate/errors.hpp"

namespace fqgate {

namespace {

void require_non_degenerate(const BoundingBox& box) {
    if (!(box.x_max > box.x_min) || !(box.y_max > box.y_min))
        throw DegenerateBoxError("bounding box has non-positive extent");
}

}  // namespace

const std::vector<std::string>& canonical_feature_order() {
    static const std::vector<std::string> order = {
        "left_eye_x",    "left_eye_y",    "right_eye_x",  "right_eye_y",  "nose_tip_x",
        "nose_tip_y",    "left_mouth_x",  "left_mouth_y", "right_mouth_x", "right_mouth_y",
    };
    return order;
}

NormalizedKeyPoints normalize_keypoints(const KeyPointSet& kp, const BoundingBox& box) {
    require_non_degenerate(box);
    const double w = box.x_max - box.x_min;
    const double h = box.y_max - box.y_min;
    NormalizedKeyPoints out;
    for (std::size_t i = 0; i < KeyPointSet::kCount; ++i) {
        out.points[i].x = (kp.points[i].x - box.x_min) / w;
        out.points[i].y = (kp.points[i].y - box.y_min) / h;
    }
    return out;
}

FeatureVector extract_features(const KeyPointSet& kp, const BoundingBox& box) {
    const NormalizedKeyPoints norm = normalize_keypoints(kp, box);
    FeatureVector fv;
    for (std::size_t i = 0; i < KeyPointSet::kCount; ++i) {
        fv.values[2 * i] = norm.points[i].x;
        fv.values[2 * i + 1] = norm.points[i].y;
    }
    return fv;
}

double bbox_area(const BoundingBox& box) {
    require_non_degenerate(box);
    return (box.x_max - box.x_min) * (box.y_max - box.y_min);
}

bool resolution_gate(const BoundingBox& box, const ResolutionGateConfig& cfg) {
    if (cfg.min_bbox_area < 0.0) throw InvalidConfigError("min_bbox_area must be >= 0");
    return bbox_area(box) >= cfg.min_bbox_area;
}

}  // namespace fqgate
