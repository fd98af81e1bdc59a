#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace tdmc {

struct VerifySection {
  std::string name;
  int checked = 0;
  std::vector<std::string> diffs;  // one line per mismatch

  bool ok() const { return diffs.empty(); }
};

struct VerifyOutcome {
  std::vector<VerifySection> sections;

  bool passed() const;
  /// One summary line per section, followed by its diffs.
  std::string render() const;
};

/// The S3 tables compiled into the binary from data/s3_golden.json.
nlohmann::json embedded_golden();

/// Recomputes the S3 classification data and compares it with `golden`:
/// subgroup classes with their H^2, the two rank tables, admissible sets and
/// pair counts for k = 0..5, dual ranks, fiber functors.
VerifyOutcome verify_paper(const nlohmann::json& golden);

}  // namespace tdmc
