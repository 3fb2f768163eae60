#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "fqgate/metrics.hpp"
#include "fqgate/types.hpp"
#include "fqgate/verification.hpp"

namespace fqgate {

struct LoadedDataset {
    Dataset dataset;
    std::vector<std::string> warnings;  // unknown-field notes, one per occurrence
};

// One FaceSample per line. Malformed lines and invalid samples raise ParseError
// with file:line context; unknown top-level keys only produce warnings.
LoadedDataset load_dataset_jsonl(const std::string& path);
void save_dataset_jsonl(const Dataset& ds, const std::string& path);

// {"subjects": {subject_id: [real x D]}}
Gallery load_gallery_json(const std::string& path);
void save_gallery_json(const Gallery& gallery, const std::string& path);

nlohmann::ordered_json classification_report_json(const ClassificationReport& rep);
nlohmann::ordered_json verification_report_json(const VerificationReport& rep);

void write_json_file(const nlohmann::ordered_json& doc, const std::string& path);

}  // namespace fqgate
