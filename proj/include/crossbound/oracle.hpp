#pragma once

#include <json.hpp>

namespace crossbound {

// Recomputes every metric of the pipeline bundle directly from a generated
// ground truth file, by naive enumeration. Deliberately shares no code with
// the pipeline's metric modules: agreement between the two is the check.
nlohmann::json oracle_metrics(const nlohmann::json& ground_truth);

}  // namespace crossbound
