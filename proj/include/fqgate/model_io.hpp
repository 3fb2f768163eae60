#pragma once

#include <string>

#include "fqgate/classifiers.hpp"

namespace fqgate {

inline constexpr int kModelFormatVersion = 1;

void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

}  // namespace fqgate
