#pragma once

// Run configuration of the command line tool: JSON document plus flag
// overrides, validated strictly (unknown keys and non-positive ceilings are
// errors).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "realiz/lab.hpp"

namespace realiz::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string universe_preset = "lab";  // lab | adversarial | adversarial-compact | custom
  UniverseSpec universe = lab_universe_spec();
  std::vector<std::string> seed_names;  // ground literals for the seeded strategy
  std::string pool_preset = "lab";      // lab | adversarial
  std::vector<std::pair<std::string, std::string>> extra_terms;
  std::size_t depth = 2;
  std::size_t fuel = 10000;
  std::string pole = "termination";  // termination | stop | explicit:<path>
  std::vector<std::string> checks;   // report sections; empty selects the defaults
  std::string output;                // empty writes to standard output
  std::uint64_t seed = 1;

  nlohmann::ordered_json to_json() const;
};

/// Report sections in emission order.
const std::vector<std::string>& all_checks();
const std::vector<std::string>& default_checks();

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Explicit pole document: {"base": [process, ...], "fuel": n, "stop": [tag, ...]}.
Pole load_explicit_pole(const std::string& path, const NamedTerms& named);

TermPool build_pool(const RunConfig& c);
Pole build_pole(const RunConfig& c, const TermPool& pool);
Session build_session(const RunConfig& c);

}  // namespace realiz::cli
