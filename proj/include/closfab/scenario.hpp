#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "closfab/dcn.hpp"
#include "closfab/sim.hpp"

namespace closfab {

/// Flat key/value scenario document.
///
///     # comment
///     arch = clos
///     middle = wss
///     d = 10
///     sweep.param = m
///     sweep.values = 1..10
///
/// Parsing is strict: unknown keys, duplicate keys and malformed lines throw
/// InvalidConfig. Entries keep file order so they can be echoed verbatim.
class ScenarioConfig {
 public:
  static ScenarioConfig parse(std::string_view text);
  static ScenarioConfig load(const std::string& path);

  [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  [[nodiscard]] std::optional<std::string> get(std::string_view key) const;
  [[nodiscard]] bool has(std::string_view key) const { return get(key).has_value(); }
  void set(const std::string& key, const std::string& value);

  static const std::vector<std::string_view>& known_keys();

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

struct SweepSpec {
  sim::SweepParam param = sim::SweepParam::Middles;
  std::vector<sim::SweepValue> values;
};

/// Base simulation config. Requires arch, d, l, w, load, arrivals, seed, and
/// for Clos also m and middle. policy defaults to first-fit.
sim::SimConfig to_sim_config(const ScenarioConfig& config);

/// sweep.param/sweep.values, when present (both or neither).
std::optional<SweepSpec> to_sweep_spec(const ScenarioConfig& config);

struct DcnScenario {
  FabricSpec clos;
  std::vector<int> splitters;
  std::vector<int> rings;
  std::vector<dcn::MulticastRequest> multicast;
};

/// Requires arch = clos, d, l, m, w. Optional dcn.splitters / dcn.rings
/// (comma lists of spine indices) and dcn.multicast, a ';'-separated list
/// of `leaf:port>leaf:port,leaf:port,...`.
DcnScenario to_dcn_scenario(const ScenarioConfig& config);

// Strict scalar parsers used by the CLI; throw InvalidConfig naming `what`.
long long parse_integer(std::string_view text, std::string_view what);
double parse_number(std::string_view text, std::string_view what);

}  // namespace closfab
