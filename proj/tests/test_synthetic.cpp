#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "fqgate/errors.hpp"
#include "fqgate/geometry.hpp"
#include "fqgate/rng.hpp"
#include "fqgate/synthetic.hpp"
#include "test_util.hpp"

using namespace fqgate;

namespace {

SynthConfig small_config(std::uint64_t seed) {
    SynthConfig cfg;
    cfg.n_subjects = 25;
    cfg.images_per_subject = 6;
    cfg.embedding_dim = 16;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("frontal projection is symmetric and calibrated to the eye distance") {
    const auto& tpl = FaceTemplate::canonical();
    const Point center{500.0, 400.0};
    const auto proj = project_pose(tpl, 0.0, 0.0, 0.0, 120.0, center);
    const auto& pts = proj.keypoints.points;

    CHECK(pts[0].y == doctest::Approx(pts[1].y).epsilon(1e-15));          // eyes level
    CHECK(pts[1].x - pts[0].x == doctest::Approx(120.0).epsilon(1e-12));  // inter-eye = scale
    CHECK(pts[2].x == doctest::Approx(500.0).epsilon(1e-12));             // nose on the midline
    CHECK(center.x - pts[0].x == doctest::Approx(pts[1].x - center.x).epsilon(1e-9));
    CHECK(pts[3].y == doctest::Approx(pts[4].y).epsilon(1e-15));          // mouth corners level

    // Box is the landmark extent padded by a quarter per side.
    const double ext_x = pts[1].x - pts[0].x;  // eyes are the widest pair
    CHECK(proj.bbox.x_min == doctest::Approx(pts[0].x - 0.25 * ext_x).epsilon(1e-12));
    CHECK(proj.bbox.x_max == doctest::Approx(pts[1].x + 0.25 * ext_x).epsilon(1e-12));
    // All keypoints inside, with real margin.
    for (const auto& p : pts) {
        CHECK(p.x > proj.bbox.x_min);
        CHECK(p.x < proj.bbox.x_max);
        CHECK(p.y > proj.bbox.y_min);
        CHECK(p.y < proj.bbox.y_max);
    }
}

TEST_CASE("a profile view collapses the eye span") {
    const auto proj = project_pose(FaceTemplate::canonical(), 90.0, 0.0, 0.0, 120.0, {0, 0});
    const auto& pts = proj.keypoints.points;
    CHECK(std::abs(pts[1].x - pts[0].x) < 1e-9);
}

TEST_CASE("the projected nose drifts monotonically with yaw") {
    const auto& tpl = FaceTemplate::canonical();
    double prev = project_pose(tpl, 0.0, 0.0, 0.0, 100.0, {0, 0}).keypoints.points[2].x;
    for (int deg = 1; deg < 60; ++deg) {
        const double x = project_pose(tpl, deg, 0.0, 0.0, 100.0, {0, 0}).keypoints.points[2].x;
        CHECK(x > prev);
        prev = x;
    }
}

TEST_CASE("roll rotates the projected points") {
    const auto upright = project_pose(FaceTemplate::canonical(), 10.0, 5.0, 0.0, 100.0, {0, 0});
    const auto rolled = project_pose(FaceTemplate::canonical(), 10.0, 5.0, 15.0, 100.0, {0, 0});
    CHECK(upright.keypoints != rolled.keypoints);
    // Eyes are no longer level under roll.
    CHECK(std::abs(rolled.keypoints.points[0].y - rolled.keypoints.points[1].y) > 1.0);
}

TEST_CASE("project_pose rejects a non-positive scale") {
    CHECK_THROWS_AS(project_pose(FaceTemplate::canonical(), 0, 0, 0, 0.0, {0, 0}),
                    InvalidConfigError);
    CHECK_THROWS_AS(project_pose(FaceTemplate::canonical(), 0, 0, 0, -5.0, {0, 0}),
                    InvalidConfigError);
}

TEST_CASE("degradation sigma grows from the high-quality region outward") {
    const SynthConfig cfg;  // yaw half range 75, rule 25; pitch 40/15; area 4096

    // Inside the high-quality region only the base noise applies.
    CHECK(degradation_sigma(cfg, 10.0, 5.0, 10000.0) == cfg.degradation.base_sigma);
    // At the configured extremes the pose term saturates at its full gain.
    CHECK(degradation_sigma(cfg, 75.0, 0.0, 10000.0) ==
          doctest::Approx(0.05 + 0.9).epsilon(1e-12));
    // Halfway into the excess zone contributes half the gain.
    CHECK(degradation_sigma(cfg, 50.0, 0.0, 10000.0) ==
          doctest::Approx(0.05 + 0.9 * 0.5).epsilon(1e-12));
    // Yaw and pitch deviations do not add up; the worse one wins.
    const double yaw_only = degradation_sigma(cfg, 75.0, 0.0, 10000.0);
    CHECK(degradation_sigma(cfg, 75.0, 40.0, 10000.0) == yaw_only);
    // Area deficit scales linearly down from the minimum area.
    CHECK(degradation_sigma(cfg, 0.0, 0.0, 2048.0) ==
          doctest::Approx(0.05 + 0.9 * 0.5).epsilon(1e-12));
    CHECK(degradation_sigma(cfg, 0.0, 0.0, 0.0) == doctest::Approx(0.05 + 0.9).epsilon(1e-12));
}

TEST_CASE("noisier embeddings drift further from their reference") {
    Rng ref_rng(90);
    Embedding ref;
    ref.values.resize(64);
    for (double& v : ref.values) v = ref_rng.gaussian();
    const double n = ref.norm();
    for (double& v : ref.values) v /= n;

    double prev_mean = 2.0;
    for (double sigma : {0.05, 0.3, 0.6, 1.0}) {
        Rng rng(91);
        double sum = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const auto probe = degrade_embedding(ref, sigma, rng);
            CHECK(std::abs(probe.norm() - 1.0) <= 1e-12);
            sum += cosine_similarity(ref, probe);
        }
        const double mean = sum / 1000.0;
        CHECK(mean < prev_mean);
        prev_mean = mean;
    }
    CHECK(prev_mean < 0.8);  // sigma 1.0 on unit vectors destroys most similarity
}

TEST_CASE("generate is deterministic and honors the dataset contract") {
    const auto cfg = small_config(123);
    const auto a = generate(cfg);
    const auto b = generate(cfg);
    CHECK(a.dataset == b.dataset);
    CHECK(a.gallery == b.gallery);

    const auto c = generate(small_config(124));
    CHECK(a.dataset != c.dataset);

    REQUIRE(a.dataset.size() == 150);
    REQUIRE(a.gallery.entries.size() == 25);

    long long high_count = 0;
    for (const auto& s : a.dataset.samples) {
        CHECK_NOTHROW(validate_sample(s));
        REQUIRE(s.label.has_value());
        REQUIRE(s.embedding.has_value());
        CHECK(std::abs(s.embedding->norm() - 1.0) <= 1e-12);
        CHECK(s.embedding->dim() == 16);
        CHECK(a.gallery.entries.count(s.subject_id) == 1);

        // The stored pose must justify the stored label.
        const double yaw = s.ext.at("yaw").get<double>();
        const double pitch = s.ext.at("pitch").get<double>();
        const double area = bbox_area(s.bbox);
        const bool expect_high = std::abs(yaw) <= cfg.rule.max_abs_yaw &&
                                 std::abs(pitch) <= cfg.rule.max_abs_pitch &&
                                 area >= cfg.rule.min_bbox_area;
        CHECK(*s.label == (expect_high ? QualityLabel::High : QualityLabel::Low));
        high_count += *s.label == QualityLabel::High;

        CHECK(std::abs(yaw) <= cfg.yaw_half_range);
        CHECK(std::abs(pitch) <= cfg.pitch_half_range);
    }
    // The cooperative/adverse mixture must produce a solidly two-class corpus.
    CHECK(high_count > 150 / 4);
    CHECK(high_count < 150 * 95 / 100);

    for (const auto& [subject, ref] : a.gallery.entries) {
        CHECK(std::abs(ref.norm() - 1.0) <= 1e-12);
        CHECK(ref.dim() == 16);
    }

    // Ids are zero-padded and unique per subject/image.
    CHECK(a.dataset.samples.front().sample_id == "s0000_i000");
    CHECK(a.dataset.samples.back().sample_id == "s0024_i005");
}

TEST_CASE("a frontal fixed-scale configuration yields only high quality") {
    SynthConfig cfg = small_config(7);
    cfg.yaw_half_range = 0.0;
    cfg.pitch_half_range = 0.0;
    cfg.scale_min = cfg.scale_max = 120.0;
    const auto out = generate(cfg);
    for (const auto& s : out.dataset.samples) CHECK(*s.label == QualityLabel::High);
}

TEST_CASE("generate rejects invalid configurations") {
    auto expect_invalid = [](SynthConfig cfg) {
        CHECK_THROWS_AS(generate(cfg), InvalidConfigError);
    };
    SynthConfig cfg = small_config(1);
    cfg.n_subjects = 0;
    expect_invalid(cfg);
    cfg = small_config(1);
    cfg.images_per_subject = 0;
    expect_invalid(cfg);
    cfg = small_config(1);
    cfg.scale_min = 0.0;
    expect_invalid(cfg);
    cfg = small_config(1);
    cfg.scale_min = 100.0;
    cfg.scale_max = 50.0;
    expect_invalid(cfg);
    cfg = small_config(1);
    cfg.embedding_dim = 1;
    expect_invalid(cfg);
    cfg = small_config(1);
    cfg.landmark_noise_frac = -0.01;
    expect_invalid(cfg);
    cfg = small_config(1);
    cfg.yaw_half_range = -1.0;
    expect_invalid(cfg);
}
