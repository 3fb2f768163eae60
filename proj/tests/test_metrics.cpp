#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fqgate/classifiers.hpp"
#include "fqgate/errors.hpp"
#include "fqgate/metrics.hpp"
#include "fqgate/rng.hpp"
#include "test_util.hpp"

using namespace fqgate;

namespace {

// Two tight clusters: High near 0.75, Low near 0.25 along every feature.
Dataset cluster_dataset(std::size_t per_class, std::uint64_t seed) {
    Rng rng(seed);
    Dataset ds{"clusters", {}};
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        const bool high = i < per_class;
        FeatureVector fv;
        for (double& v : fv.values) v = (high ? 0.75 : 0.25) + rng.uniform(-0.05, 0.05);
        auto s = testutil::sample_from_features(fv, "c" + std::to_string(i),
                                                high ? QualityLabel::High : QualityLabel::Low);
        ds.samples.push_back(s);
    }
    return ds;
}

}  // namespace

TEST_CASE("report_from_confusion reproduces the reference quartet") {
    const ConfusionMatrix cm{47, 1, 2, 40};
    const auto rep = report_from_confusion(cm);
    CHECK(rep.n == 90);
    CHECK(format_percent(rep.accuracy) == "96.67");
    CHECK(format_percent(rep.precision) == "97.92");
    CHECK(format_percent(rep.recall) == "95.92");
    CHECK(format_percent(rep.f1) == "96.91");
    CHECK(rep.confusion == cm);
}

TEST_CASE("report_from_confusion on a perfect classifier") {
    const auto rep = report_from_confusion({30, 0, 0, 20});
    CHECK(rep.accuracy == 1.0);
    CHECK(rep.precision == 1.0);
    CHECK(rep.recall == 1.0);
    CHECK(rep.f1 == 1.0);
}

TEST_CASE("zero-denominator metrics stay unset instead of defaulting to zero") {
    SUBCASE("never predicts High: precision and f1 undefined, recall 0") {
        const auto rep = report_from_confusion({0, 0, 5, 10});
        CHECK_FALSE(rep.precision.has_value());
        REQUIRE(rep.recall.has_value());
        CHECK(*rep.recall == 0.0);
        CHECK_FALSE(rep.f1.has_value());
        CHECK(format_percent(rep.precision) == "n/a");
    }
    SUBCASE("no positive ground truth: recall and f1 undefined") {
        const auto rep = report_from_confusion({0, 3, 0, 12});
        CHECK_FALSE(rep.recall.has_value());
        CHECK_FALSE(rep.f1.has_value());
        REQUIRE(rep.precision.has_value());
        CHECK(*rep.precision == 0.0);
    }
    SUBCASE("precision and recall both zero: f1 undefined, not NaN") {
        const auto rep = report_from_confusion({0, 2, 3, 10});
        REQUIRE(rep.precision.has_value());
        REQUIRE(rep.recall.has_value());
        CHECK_FALSE(rep.f1.has_value());
    }
}

TEST_CASE("report_from_confusion validates counts") {
    CHECK_THROWS_AS(report_from_confusion({0, 0, 0, 0}), TooFewSamplesError);
    CHECK_THROWS_AS(report_from_confusion({-1, 0, 0, 5}), InvalidConfigError);
}

TEST_CASE("derived metrics obey their defining identities on random confusions") {
    Rng rng(31);
    for (int it = 0; it < 200; ++it) {
        const ConfusionMatrix cm{static_cast<long long>(rng.index(50)),
                                 static_cast<long long>(rng.index(50)),
                                 static_cast<long long>(rng.index(50)),
                                 static_cast<long long>(rng.index(50))};
        if (cm.total() == 0) continue;
        const auto rep = report_from_confusion(cm);
        CHECK(rep.accuracy ==
              static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total()));
        if (rep.precision && rep.recall && *rep.precision + *rep.recall > 0.0) {
            REQUIRE(rep.f1.has_value());
            CHECK(std::abs(*rep.f1 - 2.0 * *rep.precision * *rep.recall /
                                         (*rep.precision + *rep.recall)) <= 1e-15);
        }
        if (rep.precision) CHECK(*rep.precision ==
                                 static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp));
        if (rep.recall) CHECK(*rep.recall ==
                              static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn));
    }
}

TEST_CASE("format_percent rounds to two decimals") {
    CHECK(format_percent(0.0) == "0.00");
    CHECK(format_percent(1.0) == "100.00");
    CHECK(format_percent(0.12346) == "12.35");  // rounds at the third decimal
    CHECK(format_percent(0.966666666) == "96.67");
    CHECK(format_percent(std::nullopt) == "n/a");
}

TEST_CASE("evaluate scores a dataset against its labels") {
    const auto ds = cluster_dataset(20, 5);
    const auto model = train(ds, TrainConfig{ModelFamily::Knn, 0, KnnConfig{1}});

    // k=1 on its own training points is perfect.
    const auto rep = evaluate(model, ds);
    CHECK(rep.n == 40);
    CHECK(rep.accuracy == 1.0);
    CHECK(rep.confusion.tp == 20);
    CHECK(rep.confusion.tn == 20);

    SUBCASE("threshold 0 marks everything High, driving recall to 1") {
        const auto rep0 = evaluate(model, ds, 0.0);
        REQUIRE(rep0.recall.has_value());
        CHECK(*rep0.recall == 1.0);
        CHECK(rep0.confusion.fn == 0);
        CHECK(rep0.confusion.tn == 0);
    }
    SUBCASE("threshold is validated") {
        CHECK_THROWS_AS(evaluate(model, ds, -0.1), InvalidConfigError);
        CHECK_THROWS_AS(evaluate(model, ds, 1.5), InvalidConfigError);
    }
    SUBCASE("unlabeled test samples are an error, not silently skipped") {
        auto mixed = ds;
        mixed.samples[3].label.reset();
        CHECK_THROWS_AS(evaluate(model, mixed), UnlabeledSampleError);
    }
    SUBCASE("empty test set") {
        CHECK_THROWS_AS(evaluate(model, Dataset{"empty", {}}), TooFewSamplesError);
    }
}
