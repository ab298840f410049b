#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace upb {

struct ClaimResult {
  std::string id;
  std::string description;
  std::string computed;
  std::string expected;
  bool pass = false;
  double runtime_ms = 0.0;
  std::string note;  // extra context (e.g. skipped optional inputs)
};

struct ReproductionReport {
  std::vector<ClaimResult> claims;
  bool all_pass = false;
};

// Runs the whole claim suite. table_path, when given, must point to the
// 11-entry size-9 table; without it the size-9 counts run on the bundled
// entry alone and say so in the claim note.
ReproductionReport run_reproduction(
    const std::optional<std::string>& table_path);

// One line per claim, plus a final ALL PASS / FAIL line.
std::string report_text(const ReproductionReport& report);

// include_timings keeps runtime_ms out of the document by default so that
// identical runs serialize byte-identically.
nlohmann::json report_to_json(const ReproductionReport& report,
                              bool include_timings = false);

}  // namespace upb
