#include "fqgate/types.hpp"

#include <cmath>

#include "fqgate/errors.hpp"

namespace fqgate {

double Embedding::norm() const {
    double sum = 0.0;
    for (double v : values) sum += v * v;
    return std::sqrt(sum);
}

const FaceSample& validate_sample(const FaceSample& sample) {
    const BoundingBox& box = sample.bbox;
    for (double v : {box.x_min, box.y_min, box.x_max, box.y_max}) {
        if (!std::isfinite(v))
            throw NonFiniteValueError("sample '" + sample.sample_id + "': non-finite bbox coordinate");
    }
    for (const Point& p : sample.keypoints.points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw NonFiniteValueError("sample '" + sample.sample_id + "': non-finite keypoint coordinate");
    }
    if (!(box.x_max > box.x_min) || !(box.y_max > box.y_min))
        throw DegenerateBoxError("sample '" + sample.sample_id + "': bounding box has zero or negative extent");
    for (const Point& p : sample.keypoints.points) {
        // Points on the border are valid (closed interval).
        if (p.x < box.x_min || p.x > box.x_max || p.y < box.y_min || p.y > box.y_max)
            throw KeypointOutsideBoxError("sample '" + sample.sample_id + "': keypoint outside bounding box");
    }
    if (sample.embedding) {
        const Embedding& e = *sample.embedding;
        if (e.dim() < 2)
            throw DimensionMismatchError("sample '" + sample.sample_id + "': embedding dimension must be >= 2");
        for (double v : e.values) {
            if (!std::isfinite(v))
                throw NonFiniteValueError("sample '" + sample.sample_id + "': non-finite embedding entry");
        }
        if (!(e.norm() > 0.0))
            throw ZeroNormEmbeddingError("sample '" + sample.sample_id + "': embedding has zero norm");
    }
    return sample;
}

}  // namespace fqgate
