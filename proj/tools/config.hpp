#pragma once

#include <map>
#include <string>

namespace rsl::cli {

/// Flat key = value experiment configuration with one section per command.
/// Flag names mirror config keys exactly; emit() followed by parse() yields
/// an identical configuration.
struct ExperimentConfig {
  std::string command;
  std::map<std::string, std::string> values;

  std::string emit() const;
  static ExperimentConfig parse(const std::string& text);

  bool operator==(const ExperimentConfig&) const = default;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback = "") const;
  int get_int(const std::string& key, int fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
};

}  // namespace rsl::cli
