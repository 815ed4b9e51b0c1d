#include "record.hpp"

#include <json.hpp>

#include "rsl/rates.hpp"
#include "rsl/version.hpp"

namespace rsl::cli {

std::string ResultRecord::to_bound_csv() const {
  auto in = [&](const char* key) {
    const auto it = inputs.find(key);
    return it == inputs.end() ? std::string() : it->second;
  };
  std::string out = "model,n,p,d,kappa_dim,variant,value,provenance\n";
  for (const OutputRow& row : outputs) {
    out += in("model") + "," + in("n") + "," + in("p") + "," + in("d") + "," + in("kappa") + "," +
           row.name + "," + format_double(row.value) + "," + row.provenance + "\n";
  }
  return out;
}

std::string ResultRecord::to_json() const {
  nlohmann::json j;
  j["id"] = id;
  j["command"] = command;
  j["inputs"] = inputs;
  j["outputs"] = nlohmann::json::array();
  for (const OutputRow& row : outputs) {
    j["outputs"].push_back({{"name", row.name},
                            {"value", row.value},
                            {"provenance", row.provenance}});
  }
  j["wall_seconds"] = wall_seconds;
  j["version"] = rsl::kVersion;
  return j.dump(2) + "\n";
}

}  // namespace rsl::cli
