#include "closfab/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace closfab {

namespace {

std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r' && c != '\n'; };
  while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

int to_int(long long v, std::string_view what) {
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw InvalidConfig(std::string(what) + " out of range");
  }
  return static_cast<int>(v);
}

std::string require(const ScenarioConfig& config, std::string_view key) {
  auto value = config.get(key);
  if (!value) throw InvalidConfig("missing required key '" + std::string(key) + "'");
  return *value;
}

int require_int(const ScenarioConfig& config, std::string_view key) {
  return to_int(parse_integer(require(config, key), key), key);
}

std::vector<int> parse_int_list(std::string_view text, std::string_view what) {
  std::vector<int> out;
  if (trim(text).empty()) return out;
  for (auto part : split(text, ',')) {
    const auto dots = part.find("..");
    if (dots != std::string_view::npos) {
      const int lo = to_int(parse_integer(part.substr(0, dots), what), what);
      const int hi = to_int(parse_integer(part.substr(dots + 2), what), what);
      if (hi < lo) throw InvalidConfig(std::string(what) + ": empty range " + std::string(part));
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(to_int(parse_integer(part, what), what));
    }
  }
  return out;
}

dcn::HostPort parse_host_port(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw InvalidConfig("host port '" + std::string(text) + "' is not leaf:port");
  return {to_int(parse_integer(parts[0], "leaf"), "leaf"), to_int(parse_integer(parts[1], "port"), "port")};
}

}  // namespace

long long parse_integer(std::string_view text, std::string_view what) {
  text = trim(text);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidConfig(std::string(what) + ": '" + std::string(text) + "' is not an integer");
  }
  return value;
}

double parse_number(std::string_view text, std::string_view what) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw InvalidConfig(std::string(what) + ": '" + std::string(text) + "' is not a number");
  }
  return value;
}

const std::vector<std::string_view>& ScenarioConfig::known_keys() {
  static const std::vector<std::string_view> keys = {
      "arch", "middle", "d", "l", "m", "w", "load", "arrivals", "seed", "policy",
      "sweep.param", "sweep.values", "dcn.splitters", "dcn.rings", "dcn.multicast"};
  return keys;
}

ScenarioConfig ScenarioConfig::parse(std::string_view text) {
  ScenarioConfig config;
  int line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no);
    if (eq == std::string_view::npos) throw InvalidConfig(where + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw InvalidConfig(where + ": unknown key '" + key + "'");
    }
    if (config.has(key)) throw InvalidConfig(where + ": duplicate key '" + key + "'");
    if (value.empty()) throw InvalidConfig(where + ": empty value for '" + key + "'");
    config.entries_.emplace_back(key, value);
  }
  return config;
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot read config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

std::optional<std::string> ScenarioConfig::get(std::string_view key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  return std::nullopt;
}

void ScenarioConfig::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

sim::SimConfig to_sim_config(const ScenarioConfig& config) {
  sim::SimConfig out;
  const std::string arch = require(config, "arch");
  const auto kind = parse_fabric_kind(arch);
  if (!kind) throw InvalidConfig("arch must be spanke or clos, got '" + arch + "'");
  out.fabric.kind = *kind;
  out.fabric.degrees = require_int(config, "d");
  out.fabric.fibers_per_degree = require_int(config, "l");
  out.fabric.wavelengths = require_int(config, "w");
  if (*kind == FabricKind::Clos) {
    out.fabric.middles = require_int(config, "m");
    const std::string middle = require(config, "middle");
    const auto mk = parse_middle_kind(middle);
    if (!mk) throw InvalidConfig("unknown middle kind '" + middle + "'");
    out.fabric.middle_kind = *mk;
  } else {
    // Unused by Spanke, but kept so an arch sweep can switch to Clos.
    if (config.has("m")) out.fabric.middles = require_int(config, "m");
    if (auto middle = config.get("middle")) {
      const auto mk = parse_middle_kind(*middle);
      if (!mk) throw InvalidConfig("unknown middle kind '" + *middle + "'");
      out.fabric.middle_kind = *mk;
    }
  }
  out.load_per_fiber = parse_number(require(config, "load"), "load");
  const long long arrivals = parse_integer(require(config, "arrivals"), "arrivals");
  if (arrivals < 1) throw InvalidConfig("arrivals must be >= 1");
  out.arrivals = static_cast<std::uint64_t>(arrivals);
  const std::string seed = require(config, "seed");
  std::uint64_t seed_value = 0;
  const auto [ptr, ec] = std::from_chars(seed.data(), seed.data() + seed.size(), seed_value);
  if (ec != std::errc() || ptr != seed.data() + seed.size()) throw InvalidConfig("seed must be an unsigned 64-bit integer");
  out.seed = seed_value;
  if (auto policy = config.get("policy")) {
    const auto p = parse_policy(*policy);
    if (!p) throw InvalidConfig("policy must be first-fit or random, got '" + *policy + "'");
    out.policy = *p;
  }
  try {
    out.validate();
  } catch (const InvalidSpec& e) {
    throw InvalidConfig(e.what());
  }
  return out;
}

std::optional<SweepSpec> to_sweep_spec(const ScenarioConfig& config) {
  const auto param = config.get("sweep.param");
  const auto values = config.get("sweep.values");
  if (!param && !values) return std::nullopt;
  if (!param || !values) throw InvalidConfig("sweep.param and sweep.values must be given together");

  SweepSpec out;
  if (*param == "m") {
    out.param = sim::SweepParam::Middles;
    for (int v : parse_int_list(*values, "sweep.values")) out.values.emplace_back(v);
  } else if (*param == "load") {
    out.param = sim::SweepParam::Load;
    for (auto part : split(*values, ',')) out.values.emplace_back(parse_number(part, "sweep.values"));
  } else if (*param == "arch") {
    out.param = sim::SweepParam::Arch;
    for (auto part : split(*values, ',')) {
      const auto kind = parse_fabric_kind(part);
      if (!kind) throw InvalidConfig("unknown arch '" + std::string(part) + "' in sweep.values");
      out.values.emplace_back(*kind);
    }
  } else if (*param == "middle") {
    out.param = sim::SweepParam::MiddleKind;
    for (auto part : split(*values, ',')) {
      const auto kind = parse_middle_kind(part);
      if (!kind) throw InvalidConfig("unknown middle kind '" + std::string(part) + "' in sweep.values");
      out.values.emplace_back(*kind);
    }
  } else {
    throw InvalidConfig("sweep.param must be one of m, load, arch, middle");
  }
  if (out.values.empty()) throw InvalidConfig("sweep.values is empty");
  return out;
}

DcnScenario to_dcn_scenario(const ScenarioConfig& config) {
  DcnScenario out;
  const std::string arch = require(config, "arch");
  if (arch != "clos") throw InvalidConfig("dcn folds Clos fabrics only; arch must be clos");
  out.clos = FabricSpec::clos(require_int(config, "m"), require_int(config, "l"), require_int(config, "d"),
                              require_int(config, "w"), MiddleKind::WSS);
  try {
    out.clos.validate();
  } catch (const InvalidSpec& e) {
    throw InvalidConfig(e.what());
  }
  if (auto v = config.get("dcn.splitters")) out.splitters = parse_int_list(*v, "dcn.splitters");
  if (auto v = config.get("dcn.rings")) out.rings = parse_int_list(*v, "dcn.rings");
  if (auto v = config.get("dcn.multicast")) {
    for (auto item : split(*v, ';')) {
      if (item.empty()) continue;
      const auto arrow = item.find('>');
      if (arrow == std::string_view::npos) throw InvalidConfig("multicast '" + std::string(item) + "' lacks '>'");
      dcn::MulticastRequest request;
      request.src = parse_host_port(trim(item.substr(0, arrow)));
      for (auto dst : split(item.substr(arrow + 1), ',')) request.dsts.push_back(parse_host_port(dst));
      out.multicast.push_back(std::move(request));
    }
  }
  return out;
}

}  // namespace closfab
