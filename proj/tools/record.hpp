#pragma once

#include <map>
#include <string>
#include <vector>

namespace rsl::cli {

struct OutputRow {
  std::string name;
  double value = 0.0;
  std::string provenance;  // exact | grid-approximate | monte-carlo
};

/// One experiment's machine-readable result: the inputs echo, the outputs
/// with per-number provenance, wall time and library version. CSV output is
/// byte-stable for identical inputs (no timing column).
struct ResultRecord {
  std::string id;
  std::string command;
  std::map<std::string, std::string> inputs;
  std::vector<OutputRow> outputs;
  double wall_seconds = 0.0;

  std::string to_bound_csv() const;  // model,n,p,d,kappa_dim,variant,value,provenance
  std::string to_json() const;
};

}  // namespace rsl::cli
