#pragma once

#include <string>
#include <vector>

namespace conespec {

/// One comparison: passes when |computed - expected| <= tolerance.
struct CheckRow {
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

/// Names accepted by run_verify besides "all".
const std::vector<std::string>& verify_suites();

/// Runs one named suite or "all". A check that throws is reported as a failed
/// row with the error text in `note`. Throws InvalidArgument for unknown names.
std::vector<CheckRow> run_verify(const std::string& suite, bool include_orthant3 = false);

/// Scaling estimates and sizes reproduced against the published numbers.
std::vector<CheckRow> paper_table();

}  // namespace conespec
