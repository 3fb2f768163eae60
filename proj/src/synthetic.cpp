#include "fqgate/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "fqgate/errors.hpp"
#include "fqgate/geometry.hpp"

namespace fqgate {

namespace {

// Mixture weights of the capture simulation: most subjects walk roughly toward
// the camera (cooperative draws near the frontal/high-resolution end), a fixed
// fraction are caught at arbitrary pose/distance (adverse draws over the full
// configured ranges).
constexpr double kAdverseProb = 0.2;
constexpr double kCoopYawFrac = 0.24;
constexpr double kCoopPitchFrac = 0.25;
constexpr double kCoopScaleFrac = 0.35;
// Frame region the face center lands in (1920x1080 with a margin).
constexpr double kCenterXMin = 200.0, kCenterXMax = 1720.0;
constexpr double kCenterYMin = 150.0, kCenterYMax = 930.0;

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

void validate_config(const SynthConfig& cfg) {
    if (cfg.n_subjects < 1) throw InvalidConfigError("n_subjects must be >= 1");
    if (cfg.images_per_subject < 1) throw InvalidConfigError("images_per_subject must be >= 1");
    if (!(cfg.yaw_half_range >= 0.0) || !(cfg.pitch_half_range >= 0.0))
        throw InvalidConfigError("pose ranges must be >= 0");
    if (!(cfg.scale_min > 0.0) || !(cfg.scale_max >= cfg.scale_min))
        throw InvalidConfigError("scale range must satisfy 0 < min <= max");
    if (!(cfg.landmark_noise_frac >= 0.0))
        throw InvalidConfigError("landmark_noise_frac must be >= 0");
    if (cfg.embedding_dim < 2) throw InvalidConfigError("embedding_dim must be >= 2");
    if (!(cfg.rule.max_abs_yaw >= 0.0) || !(cfg.rule.max_abs_pitch >= 0.0) ||
        !(cfg.rule.min_bbox_area >= 0.0))
        throw InvalidConfigError("high-quality rule bounds must be >= 0");
    if (!(cfg.degradation.base_sigma >= 0.0) || !(cfg.degradation.pose_sigma_gain >= 0.0) ||
        !(cfg.degradation.scale_sigma_gain >= 0.0))
        throw InvalidConfigError("degradation gains must be >= 0");
}

}  // namespace

const FaceTemplate& FaceTemplate::canonical() {
    static const FaceTemplate tpl{{{
        {-0.3, -0.25, 0.0},  // left eye
        {0.3, -0.25, 0.0},   // right eye
        {0.0, 0.05, 0.25},   // nose tip
        {-0.2, 0.35, 0.05},  // left mouth corner
        {0.2, 0.35, 0.05},   // right mouth corner
    }}};
    return tpl;
}

Projected project_pose(const FaceTemplate& tpl, double yaw_deg, double pitch_deg, double roll_deg,
                       double scale_px, Point center) {
    if (!(scale_px > 0.0)) throw InvalidConfigError("scale must be > 0");
    const double cy = std::cos(deg_to_rad(yaw_deg)), sy = std::sin(deg_to_rad(yaw_deg));
    const double cp = std::cos(deg_to_rad(pitch_deg)), sp = std::sin(deg_to_rad(pitch_deg));
    const double cr = std::cos(deg_to_rad(roll_deg)), sr = std::sin(deg_to_rad(roll_deg));

    // Template inter-eye distance is 0.6, so this makes it scale_px at yaw 0.
    const double k = scale_px / 0.6;

    Projected out;
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
    for (std::size_t i = 0; i < KeyPointSet::kCount; ++i) {
        const Vec3& p = tpl.points[i];
        // Ry(yaw)
        const double x1 = cy * p.x + sy * p.z;
        const double y1 = p.y;
        const double z1 = -sy * p.x + cy * p.z;
        // Rx(pitch)
        const double x2 = x1;
        const double y2 = cp * y1 - sp * z1;
        // Rz(roll), orthographic drop of z
        const double x3 = cr * x2 - sr * y2;
        const double y3 = sr * x2 + cr * y2;

        const Point q{x3 * k + center.x, y3 * k + center.y};
        out.keypoints.points[i] = q;
        if (i == 0) {
            x_min = x_max = q.x;
            y_min = y_max = q.y;
        } else {
            x_min = std::min(x_min, q.x);
            x_max = std::max(x_max, q.x);
            y_min = std::min(y_min, q.y);
            y_max = std::max(y_max, q.y);
        }
    }
    const double ext_x = x_max - x_min;
    const double ext_y = y_max - y_min;
    out.bbox = BoundingBox{x_min - 0.25 * ext_x, y_min - 0.25 * ext_y, x_max + 0.25 * ext_x,
                           y_max + 0.25 * ext_y};
    return out;
}

double degradation_sigma(const SynthConfig& cfg, double yaw_deg, double pitch_deg,
                         double bbox_area) {
    double pose_dev = 0.0;
    if (cfg.yaw_half_range > cfg.rule.max_abs_yaw)
        pose_dev = std::max(pose_dev, (std::abs(yaw_deg) - cfg.rule.max_abs_yaw) /
                                          (cfg.yaw_half_range - cfg.rule.max_abs_yaw));
    if (cfg.pitch_half_range > cfg.rule.max_abs_pitch)
        pose_dev = std::max(pose_dev, (std::abs(pitch_deg) - cfg.rule.max_abs_pitch) /
                                          (cfg.pitch_half_range - cfg.rule.max_abs_pitch));
    pose_dev = std::clamp(pose_dev, 0.0, 1.0);

    double deficit = 0.0;
    if (cfg.rule.min_bbox_area > 0.0)
        deficit = std::max(0.0, 1.0 - bbox_area / cfg.rule.min_bbox_area);

    return cfg.degradation.base_sigma + cfg.degradation.pose_sigma_gain * pose_dev +
           cfg.degradation.scale_sigma_gain * deficit;
}

Embedding degrade_embedding(const Embedding& reference, double sigma, Rng& rng) {
    Embedding probe;
    probe.values.resize(reference.values.size());
    for (std::size_t d = 0; d < probe.values.size(); ++d)
        probe.values[d] = reference.values[d] + sigma * rng.gaussian();
    const double n = probe.norm();
    if (n == 0.0) throw ZeroNormEmbeddingError("degraded embedding collapsed to zero");
    for (double& v : probe.values) v /= n;
    return probe;
}

SynthOutput generate(const SynthConfig& cfg) {
    validate_config(cfg);
    const FaceTemplate& tpl = FaceTemplate::canonical();

    SynthOutput out;
    out.dataset.name = "synthetic";
    out.dataset.samples.reserve(static_cast<std::size_t>(cfg.n_subjects * cfg.images_per_subject));

    char id_buf[32];
    for (long long s = 0; s < cfg.n_subjects; ++s) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(s)));
        std::snprintf(id_buf, sizeof(id_buf), "s%04lld", s);
        const std::string subject_id = id_buf;

        Embedding ref;
        ref.values.resize(static_cast<std::size_t>(cfg.embedding_dim));
        for (double& v : ref.values) v = rng.gaussian();
        const double ref_norm = ref.norm();
        if (ref_norm == 0.0) throw ZeroNormEmbeddingError("reference embedding collapsed to zero");
        for (double& v : ref.values) v /= ref_norm;
        out.gallery.entries[subject_id] = ref;

        for (long long i = 0; i < cfg.images_per_subject; ++i) {
            const bool adverse = rng.uniform() < kAdverseProb;
            double yaw, pitch, scale;
            if (adverse) {
                yaw = rng.uniform(-cfg.yaw_half_range, cfg.yaw_half_range);
                pitch = rng.uniform(-cfg.pitch_half_range, cfg.pitch_half_range);
                scale = rng.uniform(cfg.scale_min, cfg.scale_max);
            } else {
                yaw = rng.uniform(-kCoopYawFrac * cfg.yaw_half_range,
                                  kCoopYawFrac * cfg.yaw_half_range);
                pitch = rng.uniform(-kCoopPitchFrac * cfg.pitch_half_range,
                                    kCoopPitchFrac * cfg.pitch_half_range);
                scale = rng.uniform(cfg.scale_min + kCoopScaleFrac * (cfg.scale_max - cfg.scale_min),
                                    cfg.scale_max);
            }
            const Point center{rng.uniform(kCenterXMin, kCenterXMax),
                               rng.uniform(kCenterYMin, kCenterYMax)};

            Projected proj = project_pose(tpl, yaw, pitch, 0.0, scale, center);
            const double width = proj.bbox.width();
            const double area = bbox_area(proj.bbox);
            const bool high = std::abs(yaw) <= cfg.rule.max_abs_yaw &&
                              std::abs(pitch) <= cfg.rule.max_abs_pitch &&
                              area >= cfg.rule.min_bbox_area;

            KeyPointSet noisy = proj.keypoints;
            const double noise_scale = cfg.landmark_noise_frac * width;
            for (Point& p : noisy.points) {
                p.x = std::clamp(p.x + rng.gaussian() * noise_scale, proj.bbox.x_min,
                                 proj.bbox.x_max);
                p.y = std::clamp(p.y + rng.gaussian() * noise_scale, proj.bbox.y_min,
                                 proj.bbox.y_max);
            }

            const double sigma = degradation_sigma(cfg, yaw, pitch, area);

            FaceSample sample;
            std::snprintf(id_buf, sizeof(id_buf), "_i%03lld", i);
            sample.sample_id = subject_id + id_buf;
            sample.subject_id = subject_id;
            sample.keypoints = noisy;
            sample.bbox = proj.bbox;
            sample.label = high ? QualityLabel::High : QualityLabel::Low;
            sample.embedding = degrade_embedding(ref, sigma, rng);
            sample.ext = nlohmann::json{
                {"yaw", yaw}, {"pitch", pitch}, {"scale", scale}, {"sigma", sigma}};
            out.dataset.samples.push_back(std::move(sample));
        }
    }
    return out;
}

}  // namespace fqgate
