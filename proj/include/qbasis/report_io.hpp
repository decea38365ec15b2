#pragma once

// JSON, CSV and plain-text renderings of verification reports.

#include <map>
#include <string>
#include <vector>

#include "qbasis/verify.hpp"

namespace qbasis {

inline constexpr const char* kVersion = "0.1.0";

/// {meta: {version, config, timestamp}, reports: [...]} with sorted keys.
/// Non-finite numbers are written as the strings "NaN", "Infinity" and
/// "-Infinity". The timestamp is omitted unless one is given.
std::string to_json(const std::vector<VerificationReport>& reports, const std::map<std::string, std::string>& config,
                    const std::string& timestamp = "");

/// One row per report; residual and tolerance in scientific notation.
std::string to_csv(const std::vector<VerificationReport>& reports);

std::string to_text(const std::vector<VerificationReport>& reports);

}  // namespace qbasis
