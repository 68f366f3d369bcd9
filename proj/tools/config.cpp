#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "realiz/errors.hpp"

namespace realiz::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const std::vector<std::pair<std::string, SeedOp>>& op_names() {
  static const std::vector<std::pair<std::string, SeedOp>> ops = {{"pair", SeedOp::Pair},
                                                                  {"singleton", SeedOp::Singleton},
                                                                  {"union", SeedOp::Union},
                                                                  {"kuratowski", SeedOp::Kuratowski},
                                                                  {"closure", SeedOp::Closure}};
  return ops;
}

std::string op_name(SeedOp op) {
  for (const auto& [name, o] : op_names())
    if (o == op) return name;
  return "?";
}

void reject_unknown(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = std::any_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; });
    if (!known) throw ConfigError(where + ": unknown key \"" + key + "\"");
  }
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

std::size_t positive(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() <= 0)
    throw ConfigError(where + "." + key + ": must be a positive integer");
  return v.get<std::size_t>();
}

std::size_t non_negative(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ConfigError(where + "." + key + ": must be a non-negative integer");
  return v.get<std::size_t>();
}

void apply_preset(RunConfig& c, const std::string& preset) {
  if (preset == "lab") {
    c.universe = lab_universe_spec(c.seed);
    c.pool_preset = "lab";
    c.pole = "termination";
  } else if (preset == "adversarial" || preset == "adversarial-compact") {
    c.universe = lab_universe_spec(c.seed);
    c.universe.random_names = 0;
    c.pool_preset = "adversarial";
    c.pole = "stop";
  } else {
    throw ConfigError("preset: expected lab, adversarial or adversarial-compact");
  }
  c.universe_preset = preset;
}

void parse_universe(RunConfig& c, const json& u) {
  const std::string w = "universe";
  reject_unknown(u, w,
                 {"strategy", "rank", "seeds", "ops", "pure_ceiling", "gimel_names", "random_names",
                  "entry_density", "max_names"});
  UniverseSpec& s = c.universe;
  if (u.contains("strategy")) {
    auto v = get<std::string>(u, "strategy", w);
    if (v == "exhaustive")
      s.strategy = UniverseSpec::Strategy::Exhaustive;
    else if (v == "seeded")
      s.strategy = UniverseSpec::Strategy::Seeded;
    else
      throw ConfigError("universe.strategy: expected exhaustive or seeded");
  }
  if (u.contains("rank")) s.rank = positive(u, "rank", w);
  if (u.contains("pure_ceiling")) s.pure_ceiling = positive(u, "pure_ceiling", w);
  if (u.contains("max_names")) s.max_names = positive(u, "max_names", w);
  if (u.contains("gimel_names")) s.gimel_names = non_negative(u, "gimel_names", w);
  if (u.contains("random_names")) s.random_names = non_negative(u, "random_names", w);
  if (u.contains("entry_density")) {
    if (!u["entry_density"].is_number()) throw ConfigError("universe.entry_density: wrong type");
    s.entry_density = u["entry_density"].get<double>();
    if (!(s.entry_density > 0.0 && s.entry_density <= 1.0))
      throw ConfigError("universe.entry_density: must lie in (0, 1]");
  }
  if (u.contains("seeds")) {
    c.seed_names = get<std::vector<std::string>>(u, "seeds", w);
    s.seeds.clear();
    for (const auto& text : c.seed_names) {
      try {
        s.seeds.push_back(parse_ground(text));
      } catch (const ParseError& e) {
        throw ConfigError("universe.seeds: " + std::string(e.what()));
      }
    }
  }
  if (u.contains("ops")) {
    s.ops.clear();
    for (const auto& name : get<std::vector<std::string>>(u, "ops", w)) {
      auto it = std::find_if(op_names().begin(), op_names().end(),
                             [&](const auto& p) { return p.first == name; });
      if (it == op_names().end()) throw ConfigError("universe.ops: unknown operation \"" + name + "\"");
      s.ops.push_back(it->second);
    }
  }
  if (s.strategy == UniverseSpec::Strategy::Seeded && s.seeds.empty())
    throw ConfigError("universe.seeds: the seeded strategy needs at least one seed");
}

void parse_pool(RunConfig& c, const json& p) {
  reject_unknown(p, "pool", {"preset", "terms"});
  if (p.contains("preset")) {
    c.pool_preset = get<std::string>(p, "preset", "pool");
    if (c.pool_preset != "lab" && c.pool_preset != "adversarial")
      throw ConfigError("pool.preset: expected lab or adversarial");
  }
  if (p.contains("terms")) {
    if (!p["terms"].is_array()) throw ConfigError("pool.terms: expected an array");
    for (const auto& t : p["terms"]) {
      reject_unknown(t, "pool.terms[]", {"name", "term"});
      if (!t.contains("name") || !t.contains("term"))
        throw ConfigError("pool.terms[]: needs name and term");
      c.extra_terms.emplace_back(get<std::string>(t, "name", "pool.terms[]"),
                                 get<std::string>(t, "term", "pool.terms[]"));
    }
  }
}

void validate_pole(const std::string& pole) {
  if (pole == "termination" || pole == "stop") return;
  if (pole.rfind("explicit:", 0) == 0 && pole.size() > 9) return;
  throw ConfigError("pole: expected termination, stop or explicit:<path>");
}

}  // namespace

const std::vector<std::string>& all_checks() {
  static const std::vector<std::string> checks = {
      "machine", "identities", "realizers", "decisions", "ranks",
      "sbs",     "los",        "elementarity", "collapse", "mutation"};
  return checks;
}

const std::vector<std::string>& default_checks() {
  static const std::vector<std::string> checks(all_checks().begin(), all_checks().end() - 1);
  return checks;
}

RunConfig parse_config(const json& j) {
  reject_unknown(j, "config",
                 {"preset", "universe", "pool", "depth", "fuel", "pole", "checks", "output", "seed"});
  RunConfig c;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("config.seed: must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  apply_preset(c, j.contains("preset") ? get<std::string>(j, "preset", "config") : "lab");
  if (j.contains("universe")) parse_universe(c, j["universe"]);
  if (j.contains("pool")) parse_pool(c, j["pool"]);
  if (j.contains("depth")) c.depth = non_negative(j, "depth", "config");
  if (j.contains("fuel")) c.fuel = positive(j, "fuel", "config");
  if (j.contains("pole")) c.pole = get<std::string>(j, "pole", "config");
  validate_pole(c.pole);
  if (j.contains("checks")) {
    c.checks = get<std::vector<std::string>>(j, "checks", "config");
    for (const auto& name : c.checks)
      if (std::find(all_checks().begin(), all_checks().end(), name) == all_checks().end())
        throw ConfigError("checks: unknown check \"" + name + "\"");
  }
  if (j.contains("output")) c.output = get<std::string>(j, "output", "config");
  c.universe.seed = c.seed;
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return parse_config(j);
}

ordered_json RunConfig::to_json() const {
  ordered_json u;
  u["strategy"] = universe.strategy == UniverseSpec::Strategy::Exhaustive ? "exhaustive" : "seeded";
  u["rank"] = universe.rank;
  u["seeds"] = seed_names;
  ordered_json ops = ordered_json::array();
  for (SeedOp op : universe.ops) ops.push_back(op_name(op));
  u["ops"] = ops;
  u["pure_ceiling"] = universe.pure_ceiling;
  u["gimel_names"] = universe.gimel_names;
  u["random_names"] = universe.random_names;
  u["entry_density"] = universe.entry_density;
  u["max_names"] = universe.max_names;
  ordered_json terms = ordered_json::array();
  for (const auto& [name, text] : extra_terms) terms.push_back({{"name", name}, {"term", text}});
  ordered_json out;
  out["preset"] = universe_preset;
  out["universe"] = u;
  out["pool"] = {{"preset", pool_preset}, {"terms", terms}};
  out["depth"] = depth;
  out["fuel"] = fuel;
  out["pole"] = pole;
  out["checks"] = checks.empty() ? default_checks() : checks;
  out["seed"] = seed;
  return out;
}

Pole load_explicit_pole(const std::string& path, const NamedTerms& named) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pole file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("pole file " + path + ": " + e.what());
  }
  reject_unknown(j, "pole", {"base", "fuel", "stop"});
  ExplicitPole pole;
  if (j.contains("fuel")) pole.fuel = positive(j, "fuel", "pole");
  if (j.contains("base"))
    for (const auto& text : get<std::vector<std::string>>(j, "base", "pole"))
      pole.base.push_back(parse_process(text, &named));
  if (j.contains("stop"))
    for (const auto& tag : get<std::vector<std::string>>(j, "stop", "pole")) pole.stop.insert(tag);
  return pole;
}

TermPool build_pool(const RunConfig& c) {
  TermPool pool = c.pool_preset == "adversarial" ? adversarial_pool(c.depth) : lab_pool(c.depth);
  pool.fuel = c.fuel;
  NamedTerms named;
  for (const auto& [name, t] : pool.terms) named.emplace(name, t);
  for (const auto& [name, text] : c.extra_terms) {
    if (pool.find(name) != nullptr) throw ConfigError("pool.terms: duplicate name \"" + name + "\"");
    Term t = parse_term(text, &named);
    pool.terms.emplace_back(name, t);
    named.emplace(name, t);
  }
  return pool;
}

Pole build_pole(const RunConfig& c, const TermPool& pool) {
  if (c.pole == "termination") return TerminationPole{c.fuel};
  if (c.pole == "stop") return stop_pole(c.fuel);
  NamedTerms named;
  for (const auto& [name, t] : pool.terms) named.emplace(name, t);
  return load_explicit_pole(c.pole.substr(9), named);
}

Session build_session(const RunConfig& c) {
  TermPool pool = build_pool(c);
  Pole pole = build_pole(c, pool);
  auto pi = enumerate_stacks(pool);
  auto universe = build_universe(c.universe, pi);
  if (c.universe_preset == "adversarial") {
    auto names = adversarial_names(pool);
    universe.insert(universe.end(), names.begin(), names.end());
  }
  return Session(std::move(universe), std::move(pool), std::move(pole));
}

}  // namespace realiz::cli
