#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "fqgate/classifiers.hpp"
#include "fqgate/errors.hpp"
#include "fqgate/model_io.hpp"
#include "fqgate/rng.hpp"
#include "test_util.hpp"

using namespace fqgate;

namespace {

Dataset training_data(std::uint64_t seed) {
    Rng rng(seed);
    Dataset ds{"persist", {}};
    for (int i = 0; i < 60; ++i) {
        const bool high = i % 2 == 0;
        FeatureVector fv;
        for (double& v : fv.values) v = (high ? 0.7 : 0.3) + rng.uniform(-0.15, 0.15);
        ds.samples.push_back(testutil::sample_from_features(
            fv, "p" + std::to_string(i), high ? QualityLabel::High : QualityLabel::Low));
    }
    return ds;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

nlohmann::json load_doc(const std::string& path) { return nlohmann::json::parse(read_file(path)); }

void save_doc(const nlohmann::json& doc, const std::string& path) {
    write_file(path, doc.dump(2) + "\n");
}

}  // namespace

TEST_CASE("models survive a save/load round trip") {
    testutil::TempDir tmp("persist");
    const auto ds = training_data(1);
    Rng probe_rng(2);
    std::vector<FeatureVector> probes;
    for (int i = 0; i < 1000; ++i) probes.push_back(testutil::random_features(probe_rng));

    for (auto f : {ModelFamily::LogReg, ModelFamily::Knn, ModelFamily::Svc,
                   ModelFamily::RandomForest, ModelFamily::Mlp}) {
        CAPTURE(family_name(f));
        const auto model = train(ds, default_train_config(f, 11));
        const auto path = tmp.file(family_name(f) + ".json");
        save_model(model, path);
        const auto loaded = load_model(path);

        CHECK(loaded.family == model.family);
        CHECK(loaded.feature_order == model.feature_order);
        CHECK(loaded.meta == model.meta);

        // Vote-counting families must reproduce scores bit for bit; the
        // real-valued ones within one part in a billion.
        const bool exact = f == ModelFamily::Knn || f == ModelFamily::RandomForest;
        for (const auto& q : probes) {
            const double before = score_value(model, q);
            const double after = score_value(loaded, q);
            if (exact)
                CHECK(after == before);
            else
                CHECK(std::abs(after - before) <= 1e-9);
        }

        // Saving what was loaded reproduces the file byte for byte.
        const auto path2 = tmp.file(family_name(f) + "_resaved.json");
        save_model(loaded, path2);
        CHECK(read_file(path2) == read_file(path));
    }
}

TEST_CASE("load_model rejects missing and unreadable files") {
    testutil::TempDir tmp("persist-missing");
    CHECK_THROWS_AS(load_model(tmp.file("nope.json")), IoError);
}

TEST_CASE("load_model rejects future format versions") {
    testutil::TempDir tmp("persist-version");
    const auto model = train(training_data(3), default_train_config(ModelFamily::LogReg));
    const auto path = tmp.file("m.json");
    save_model(model, path);

    auto doc = load_doc(path);
    doc["format_version"] = 999;
    save_doc(doc, path);
    CHECK_THROWS_AS(load_model(path), FormatVersionMismatchError);

    doc["format_version"] = "1";  // wrong type counts as a mismatch too
    save_doc(doc, path);
    CHECK_THROWS_AS(load_model(path), FormatVersionMismatchError);

    doc.erase("format_version");  // absent version is corruption, not a version skew
    save_doc(doc, path);
    CHECK_THROWS_AS(load_model(path), CorruptModelFileError);
}

TEST_CASE("load_model rejects corrupted content") {
    testutil::TempDir tmp("persist-corrupt");
    const auto ds = training_data(4);

    SUBCASE("truncated json") {
        const auto path = tmp.file("t.json");
        save_model(train(ds, default_train_config(ModelFamily::Svc)), path);
        const auto full = read_file(path);
        write_file(path, full.substr(0, full.size() / 2));
        CHECK_THROWS_AS(load_model(path), CorruptModelFileError);
    }
    SUBCASE("unknown family") {
        const auto path = tmp.file("f.json");
        save_model(train(ds, default_train_config(ModelFamily::LogReg)), path);
        auto doc = load_doc(path);
        doc["family"] = "decision_stump";
        save_doc(doc, path);
        CHECK_THROWS_AS(load_model(path), CorruptModelFileError);
    }
    SUBCASE("wrong weight count") {
        const auto path = tmp.file("w.json");
        save_model(train(ds, default_train_config(ModelFamily::LogReg)), path);
        auto doc = load_doc(path);
        doc["parameters"]["weights"].erase(0);
        save_doc(doc, path);
        CHECK_THROWS_AS(load_model(path), CorruptModelFileError);
    }
    SUBCASE("tree child index pointing backwards") {
        const auto path = tmp.file("rf.json");
        save_model(train(ds, default_train_config(ModelFamily::RandomForest)), path);
        auto doc = load_doc(path);
        auto& tree0 = doc["parameters"]["trees"][0];
        bool patched = false;
        for (auto& node : tree0) {
            if (node[0].get<int>() >= 0) {  // internal node
                node[2] = 0;                // left child at the root's own slot
                patched = true;
                break;
            }
        }
        REQUIRE(patched);
        save_doc(doc, path);
        CHECK_THROWS_AS(load_model(path), CorruptModelFileError);
    }
    SUBCASE("leaf with out-of-range class") {
        const auto path = tmp.file("rf2.json");
        save_model(train(ds, default_train_config(ModelFamily::RandomForest)), path);
        auto doc = load_doc(path);
        for (auto& node : doc["parameters"]["trees"][0]) {
            if (node[0].get<int>() < 0) {
                node[4] = 2;
                break;
            }
        }
        save_doc(doc, path);
        CHECK_THROWS_AS(load_model(path), CorruptModelFileError);
    }
    SUBCASE("svc kernel name") {
        const auto path = tmp.file("svc.json");
        save_model(train(ds, default_train_config(ModelFamily::Svc)), path);
        auto doc = load_doc(path);
        doc["parameters"]["kernel"] = "linear";
        save_doc(doc, path);
        CHECK_THROWS_AS(load_model(path), CorruptModelFileError);
    }
    SUBCASE("svc duals aligned with support vectors") {
        const auto path = tmp.file("svc2.json");
        save_model(train(ds, default_train_config(ModelFamily::Svc)), path);
        auto doc = load_doc(path);
        doc["parameters"]["dual_coefficients"].erase(0);
        save_doc(doc, path);
        CHECK_THROWS_AS(load_model(path), CorruptModelFileError);
    }
    SUBCASE("mlp activation") {
        const auto path = tmp.file("mlp.json");
        save_model(train(ds, default_train_config(ModelFamily::Mlp)), path);
        auto doc = load_doc(path);
        doc["parameters"]["layers"][0]["activation"] = "relu";
        save_doc(doc, path);
        CHECK_THROWS_AS(load_model(path), CorruptModelFileError);
    }
    SUBCASE("knn k larger than the stored set") {
        const auto path = tmp.file("knn.json");
        save_model(train(ds, default_train_config(ModelFamily::Knn)), path);
        auto doc = load_doc(path);
        doc["parameters"]["k"] = 10000;
        save_doc(doc, path);
        CHECK_THROWS_AS(load_model(path), CorruptModelFileError);
    }
}

TEST_CASE("a loaded model with a foreign feature order refuses to score") {
    testutil::TempDir tmp("persist-order");
    const auto path = tmp.file("m.json");
    save_model(train(training_data(5), default_train_config(ModelFamily::Knn)), path);
    auto doc = load_doc(path);
    std::swap(doc["feature_order"][0], doc["feature_order"][1]);
    save_doc(doc, path);

    const auto loaded = load_model(path);  // loads fine; order is only checked at use
    FeatureVector q;
    q.values.fill(0.5);
    CHECK_THROWS_AS(score_value(loaded, q), FeatureOrderMismatchError);
}

TEST_CASE("train timestamps honor SOURCE_DATE_EPOCH") {
    const auto ds = training_data(6);
    setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
    const auto stamped = train(ds, default_train_config(ModelFamily::Knn));
    CHECK(stamped.meta.timestamp == 1700000000);
    unsetenv("SOURCE_DATE_EPOCH");
    const auto unstamped = train(ds, default_train_config(ModelFamily::Knn));
    CHECK(unstamped.meta.timestamp == 0);
}
