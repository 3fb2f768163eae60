#include "fqgate/dataset_io.hpp"

#include <cmath>
#include <fstream>
#include <unordered_set>

#include "fqgate/errors.hpp"

namespace fqgate {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string at_line(const std::string& path, std::size_t line) {
    return path + ":" + std::to_string(line) + ": ";
}

FaceSample sample_from_json(const json& j, const std::string& context) {
    FaceSample s;
    try {
        s.sample_id = j.at("sample_id").get<std::string>();
        s.subject_id = j.at("subject_id").get<std::string>();

        const json& kp = j.at("keypoints");
        if (!kp.is_array() || kp.size() != KeyPointSet::kCount)
            throw ParseError(context + "keypoints must be an array of exactly 5 [x, y] pairs");
        for (std::size_t i = 0; i < KeyPointSet::kCount; ++i) {
            if (!kp[i].is_array() || kp[i].size() != 2)
                throw ParseError(context + "keypoint " + std::to_string(i) +
                                 " must be an [x, y] pair");
            s.keypoints.points[i] = {kp[i][0].get<double>(), kp[i][1].get<double>()};
        }

        const json& box = j.at("bbox");
        if (!box.is_array() || box.size() != 4)
            throw ParseError(context + "bbox must be [x_min, y_min, x_max, y_max]");
        s.bbox = {box[0].get<double>(), box[1].get<double>(), box[2].get<double>(),
                  box[3].get<double>()};

        if (j.contains("label")) {
            const auto name = j.at("label").get<std::string>();
            if (name == "high") s.label = QualityLabel::High;
            else if (name == "low") s.label = QualityLabel::Low;
            else throw ParseError(context + "label must be \"high\" or \"low\", got \"" + name +
                                  "\"");
        }
        if (j.contains("embedding")) {
            Embedding e;
            e.values = j.at("embedding").get<std::vector<double>>();
            s.embedding = std::move(e);
        }
        if (j.contains("ext")) {
            if (!j.at("ext").is_object()) throw ParseError(context + "ext must be an object");
            s.ext = j.at("ext");
        }
    } catch (const json::exception& e) {
        throw ParseError(context + e.what());
    }

    try {
        validate_sample(s);
    } catch (const Error& e) {
        throw ParseError(context + e.what());
    }
    return s;
}

std::vector<std::string> unknown_keys(const json& j) {
    static const std::unordered_set<std::string> known = {
        "sample_id", "subject_id", "keypoints", "bbox", "label", "embedding", "ext"};
    std::vector<std::string> out;
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) out.push_back(key);
    return out;
}

ordered_json sample_to_json(const FaceSample& s) {
    ordered_json j;
    j["sample_id"] = s.sample_id;
    j["subject_id"] = s.subject_id;
    auto kp = ordered_json::array();
    for (const Point& p : s.keypoints.points) kp.push_back({p.x, p.y});
    j["keypoints"] = std::move(kp);
    j["bbox"] = {s.bbox.x_min, s.bbox.y_min, s.bbox.x_max, s.bbox.y_max};
    if (s.label) j["label"] = label_name(*s.label);
    if (s.embedding) j["embedding"] = s.embedding->values;
    if (!s.ext.is_null()) j["ext"] = s.ext;
    return j;
}

}  // namespace

LoadedDataset load_dataset_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset file '" + path + "'");

    LoadedDataset out;
    out.dataset.name = path;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string context = at_line(path, line_no);
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            throw ParseError(context + "blank line in JSONL dataset");

        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(context + e.what());
        }
        if (!j.is_object()) throw ParseError(context + "each line must be a JSON object");

        FaceSample s = sample_from_json(j, context);
        for (const std::string& key : unknown_keys(j))
            out.warnings.push_back(context + "unknown field '" + key + "' ignored");
        if (!seen_ids.insert(s.sample_id).second)
            throw ParseError(context + "duplicate sample_id '" + s.sample_id + "'");
        out.dataset.samples.push_back(std::move(s));
    }
    if (in.bad()) throw IoError("read failure on '" + path + "'");
    return out;
}

void save_dataset_jsonl(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write dataset file '" + path + "'");
    for (const FaceSample& s : ds.samples) out << sample_to_json(s).dump() << '\n';
    out.flush();
    if (!out) throw IoError("write failure on '" + path + "'");
}

Gallery load_gallery_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open gallery file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("subjects") || !j["subjects"].is_object())
        throw ParseError(path + ": gallery must be {\"subjects\": {id: [embedding]}}");

    Gallery g;
    for (const auto& [subject, values] : j["subjects"].items()) {
        Embedding e;
        try {
            e.values = values.get<std::vector<double>>();
        } catch (const json::exception& err) {
            throw ParseError(path + ": subject '" + subject + "': " + err.what());
        }
        if (e.dim() < 2)
            throw ParseError(path + ": subject '" + subject + "': embedding needs dim >= 2");
        for (double v : e.values)
            if (!std::isfinite(v))
                throw ParseError(path + ": subject '" + subject + "': non-finite embedding value");
        if (e.norm() == 0.0)
            throw ParseError(path + ": subject '" + subject + "': zero-norm embedding");
        g.entries.emplace(subject, std::move(e));
    }
    return g;
}

void save_gallery_json(const Gallery& gallery, const std::string& path) {
    ordered_json subjects = ordered_json::object();
    for (const auto& [subject, e] : gallery.entries) subjects[subject] = e.values;
    ordered_json doc;
    doc["subjects"] = std::move(subjects);

    std::ofstream out(path);
    if (!out) throw IoError("cannot write gallery file '" + path + "'");
    out << doc.dump() << '\n';
    out.flush();
    if (!out) throw IoError("write failure on '" + path + "'");
}

nlohmann::ordered_json classification_report_json(const ClassificationReport& rep) {
    ordered_json j;
    j["format_version"] = 1;
    j["accuracy"] = rep.accuracy;
    j["precision"] = rep.precision ? ordered_json(*rep.precision) : ordered_json(nullptr);
    j["recall"] = rep.recall ? ordered_json(*rep.recall) : ordered_json(nullptr);
    j["f1"] = rep.f1 ? ordered_json(*rep.f1) : ordered_json(nullptr);
    j["confusion"] = {{"tp", rep.confusion.tp},
                      {"fp", rep.confusion.fp},
                      {"fn", rep.confusion.fn},
                      {"tn", rep.confusion.tn}};
    j["n"] = rep.n;
    return j;
}

nlohmann::ordered_json verification_report_json(const VerificationReport& rep) {
    ordered_json j;
    j["condition"] = rep.condition == Condition::Baseline ? "baseline" : "gated";
    j["n_attempts"] = rep.n_attempts;
    j["n_rejected"] = rep.n_rejected;
    j["frr"] = rep.frr;
    j["mean_similarity"] =
        rep.mean_similarity ? ordered_json(*rep.mean_similarity) : ordered_json(nullptr);
    j["std_similarity"] =
        rep.std_similarity ? ordered_json(*rep.std_similarity) : ordered_json(nullptr);
    if (rep.n_filtered_out) j["n_filtered_out"] = *rep.n_filtered_out;
    return j;
}

void write_json_file(const nlohmann::ordered_json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file '" + path + "'");
    out << doc.dump(2) << '\n';
    out.flush();
    if (!out) throw IoError("write failure on '" + path + "'");
}

}  // namespace fqgate
