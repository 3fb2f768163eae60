#pragma once

#include <array>
#include <cstdint>

#include "fqgate/rng.hpp"
#include "fqgate/types.hpp"
#include "fqgate/verification.hpp"

namespace fqgate {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Canonical 3D landmark positions in face-local units, symmetric about x = 0.
struct FaceTemplate {
    std::array<Vec3, KeyPointSet::kCount> points{};

    static const FaceTemplate& canonical();
};

struct HighQualityRule {
    double max_abs_yaw = 25.0;    // degrees
    double max_abs_pitch = 15.0;  // degrees
    double min_bbox_area = 4096.0;
};

struct DegradationConfig {
    double base_sigma = 0.05;
    double pose_sigma_gain = 0.9;
    double scale_sigma_gain = 0.9;
};

struct SynthConfig {
    long long n_subjects = 600;
    long long images_per_subject = 10;
    double yaw_half_range = 75.0;    // degrees, symmetric about 0
    double pitch_half_range = 40.0;  // degrees, symmetric about 0
    double scale_min = 12.0;         // inter-eye distance, px
    double scale_max = 120.0;
    double landmark_noise_frac = 0.01;  // of bbox width
    HighQualityRule rule;
    long long embedding_dim = 512;
    DegradationConfig degradation;
    std::uint64_t seed = 0;
};

struct Projected {
    KeyPointSet keypoints;
    BoundingBox bbox;
};

// Rotates the template by R = Rz(roll) * Rx(pitch) * Ry(yaw), projects
// orthographically, scales so inter-eye distance equals scale_px at yaw 0,
// recenters, and wraps the points in a bbox padded 25% per side.
Projected project_pose(const FaceTemplate& tpl, double yaw_deg, double pitch_deg, double roll_deg,
                       double scale_px, Point center);

// Noise level for a probe embedding given the sample's true pose and box area.
double degradation_sigma(const SynthConfig& cfg, double yaw_deg, double pitch_deg,
                         double bbox_area);

// Unit-normalized reference + sigma * gaussian noise (embedding_dim draws).
Embedding degrade_embedding(const Embedding& reference, double sigma, Rng& rng);

struct SynthOutput {
    Dataset dataset;
    Gallery gallery;
};

SynthOutput generate(const SynthConfig& cfg);

}  // namespace fqgate
