#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace fqgate {

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

// The five canonical landmarks, in this fixed order:
//   [left_eye, right_eye, nose_tip, left_mouth_corner, right_mouth_corner]
struct KeyPointSet {
    static constexpr std::size_t kCount = 5;
    std::array<Point, kCount> points{};

    bool operator==(const KeyPointSet&) const = default;
};

struct BoundingBox {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }

    bool operator==(const BoundingBox&) const = default;
};

enum class QualityLabel { High, Low };

inline const char* label_name(QualityLabel l) { return l == QualityLabel::High ? "high" : "low"; }
inline int label_to_int(QualityLabel l) { return l == QualityLabel::High ? 1 : 0; }

struct Embedding {
    std::vector<double> values;

    std::size_t dim() const { return values.size(); }
    double norm() const;

    bool operator==(const Embedding&) const = default;
};

struct FaceSample {
    std::string sample_id;
    std::string subject_id;
    KeyPointSet keypoints;
    BoundingBox bbox;
    std::optional<QualityLabel> label;
    std::optional<Embedding> embedding;
    // Open extension namespace carried through dataset files untouched.
    nlohmann::json ext;

    bool operator==(const FaceSample&) const = default;
};

struct Dataset {
    std::string name;
    std::vector<FaceSample> samples;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }

    bool operator==(const Dataset&) const = default;
};

// Checks every type invariant and returns the sample unchanged, or throws
// exactly one of: NonFiniteValueError, DegenerateBoxError,
// KeypointOutsideBoxError, DimensionMismatchError, ZeroNormEmbeddingError.
const FaceSample& validate_sample(const FaceSample& sample);

struct SplitSpec {
    double train_fraction = 0.8;
    std::uint64_t seed = 0;
    bool stratified = true;
};

}  // namespace fqgate
