#pragma once

// Machine-readable (JSON) and aligned plain-text renderings of evaluation
// reports. Transform distances are scaled by their report_scale here and
// nowhere else.

#include <string>

#include "mhm/evaluation.hpp"

namespace mhm {

enum class ReportFormat { Text, Json, Both };

std::string to_json(const EvalReport& report);
std::string to_table(const EvalReport& report);

std::string to_json(const PixelDistanceReport& report);
std::string to_table(const PixelDistanceReport& report);

}  // namespace mhm
