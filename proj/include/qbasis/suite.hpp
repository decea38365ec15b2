#pragma once

// Per-example verification suites.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qbasis/verify.hpp"

namespace qbasis {

struct SuiteConfig {
  int truncation = 40;
  /// Preset text as given on the command line, e.g. "inv_n2" or "geom:0.5".
  std::optional<std::string> sequence;
  std::optional<ProbeOperator> probe;
  std::uint64_t seed = 20240607;
  /// Overrides the tail-classification tolerance when set.
  std::optional<double> tail_tolerance;
  bool exact = true;
  int random_cases = 100;
};

/// Throws std::invalid_argument on N < 2, tolerance <= 0 or bad presets.
void validate(const SuiteConfig& config);

/// Presets: inv_n, inv_n2, pow:p, geom:r, const:c, affine:a:b and inline
/// lists ("list:1,0.5,2-1i" or a bare comma list). The label is the preset
/// text itself.
ScalarSequence parse_sequence(const std::string& spec);

/// Complex literal: "1.5", "-2i", "0.5+3i".
Complex parse_complex(const std::string& text);

/// Every check of one example, sorted by check_id.
std::vector<VerificationReport> run_suite(Example example, const SuiteConfig& config);

/// Concatenation of all three suites, sorted by check_id.
std::vector<VerificationReport> run_all(const SuiteConfig& config);

/// True iff no report has verdict Fail.
bool all_passed(const std::vector<VerificationReport>& reports);

}  // namespace qbasis
