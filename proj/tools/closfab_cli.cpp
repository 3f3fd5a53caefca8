// closfab: fabric complexity, Erlang-B theory, blocking simulation and
// Spine-Leaf topology front end.
//
// Exit codes: 0 success, 2 usage/config error, 3 runtime failure.
// Results go to stdout (and --out when given); diagnostics go to stderr.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "closfab/dcn.hpp"
#include "closfab/report.hpp"
#include "closfab/scenario.hpp"
#include "closfab/sim.hpp"
#include "closfab/theory.hpp"

namespace {

using namespace closfab;

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  bool timing = false;
  std::vector<std::string> params;
};

std::map<std::string, std::string> parse_params(const std::vector<std::string>& tokens,
                                                const std::vector<std::string>& allowed) {
  std::map<std::string, std::string> out;
  for (const auto& token : tokens) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw UsageError("expected key=value, got '" + token + "'");
    const std::string key = token.substr(0, eq);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw UsageError("unknown parameter '" + key + "'");
    }
    if (!out.emplace(key, token.substr(eq + 1)).second) throw UsageError("duplicate parameter '" + key + "'");
  }
  for (const auto& key : allowed)
    if (!out.contains(key)) throw UsageError("missing parameter '" + key + "'");
  return out;
}

int int_param(const std::map<std::string, std::string>& params, const std::string& key) {
  const long long v = parse_integer(params.at(key), key);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw UsageError(key + " out of range");
  }
  return static_cast<int>(v);
}

void emit(const std::string& text, const Options& opts) {
  std::cout << text;
  std::cout.flush();
  if (!opts.out_path.empty()) {
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + opts.out_path + "'");
    out << text;
    if (!out) throw std::runtime_error("write to '" + opts.out_path + "' failed");
  }
}

void cmd_complexity(const Options& opts) {
  const auto params = parse_params(opts.params, {"d", "l", "m"});
  const auto report = theory::compare_complexity(int_param(params, "d"), int_param(params, "l"), int_param(params, "m"));
  emit(opts.format == "json" ? report::complexity_json(report).dump(2) + "\n" : report::complexity_csv(report), opts);
}

void cmd_theory(const Options& opts) {
  const auto params = parse_params(opts.params, {"rho", "w"});
  const double rho = parse_number(params.at("rho"), "rho");
  const auto limit = theory::theoretical_limit(rho, int_param(params, "w"));
  emit(opts.format == "json" ? report::theory_json(limit).dump(2) + "\n" : report::theory_csv(limit), opts);
}

void cmd_simulate(const Options& opts) {
  if (opts.config_path.empty()) throw UsageError("simulate needs --config");
  const auto config = ScenarioConfig::load(opts.config_path);
  auto base = to_sim_config(config);
  if (opts.seed) base.seed = *opts.seed;
  const auto sweep = to_sweep_spec(config);

  std::vector<sim::SimStats> rows;
  if (sweep) {
    for (std::size_t i = 0; i < sweep->values.size(); ++i) sim::sweep_point(base, sweep->param, sweep->values[i], i);
    rows = sim::sweep(base, sweep->param, sweep->values);
  } else {
    rows.push_back(sim::run(base));
  }
  if (opts.format == "json") {
    auto doc = report::sim_json(rows, config, opts.timing);
    if (opts.seed) doc["header"]["seed_override"] = *opts.seed;
    emit(doc.dump(2) + "\n", opts);
  } else {
    emit(report::sim_csv(rows, opts.timing), opts);
  }
}

void cmd_dcn(const Options& opts) {
  if (opts.config_path.empty()) throw UsageError("dcn needs --config");
  const auto config = ScenarioConfig::load(opts.config_path);
  const auto scenario = to_dcn_scenario(config);

  auto spec = dcn::fold_clos(scenario.clos);
  try {
    for (int s : scenario.splitters) spec = dcn::substitute_spine(spec, s, dcn::SpineKind::Splitter);
    for (int s : scenario.rings) spec = dcn::substitute_spine(spec, s, dcn::SpineKind::DirectRing);
  } catch (const IndexOutOfRange& e) {
    throw InvalidConfig(e.what());
  }

  report::Json doc;
  report::Json echo = report::Json::object();
  for (const auto& [k, v] : config.entries()) echo[k] = v;
  doc["header"] = {{"tool", "closfab"}, {"version", CLOSFAB_VERSION}, {"config", echo}};
  doc["topology"] = report::topology_json(spec);

  dcn::SpineLeafFabric fabric(spec);
  report::Json results = report::Json::array();
  for (const auto& request : scenario.multicast) {
    report::Json r;
    report::Json dsts = report::Json::array();
    for (const auto& d : request.dsts) dsts.push_back({d.leaf, d.port});
    r["src"] = {request.src.leaf, request.src.port};
    r["dsts"] = std::move(dsts);
    try {
      if (auto conn = fabric.admit_multicast(request)) {
        r["admitted"] = true;
        r["connection"] = conn->id;
        r["wavelength"] = conn->wavelength;
        r["spine"] = conn->spine;
      } else {
        r["admitted"] = false;
      }
    } catch (const NoSplitterSpine& e) {
      throw InvalidConfig(e.what());
    } catch (const InvalidRequest& e) {
      throw InvalidConfig(e.what());
    }
    results.push_back(std::move(r));
  }
  doc["multicast"] = std::move(results);
  doc["fabric"] = report::fabric_json(fabric.fabric());
  emit(doc.dump(2) + "\n", opts);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spanke/Clos optical switch fabric analysis"};
  app.require_subcommand(1);
  Options opts;

  const auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opts.out_path, "Also write the output to this file");
  };

  auto* complexity = app.add_subcommand("complexity", "Element and fiber counts, Spanke vs Clos (d=.. l=.. m=..)");
  complexity->add_option("params", opts.params, "d=<int> l=<int> m=<int>")->required();
  add_format(complexity);

  auto* theory_cmd = app.add_subcommand("theory", "Erlang-B and port-limited blocking (rho=.. w=..)");
  theory_cmd->add_option("params", opts.params, "rho=<Erlang> w=<int>")->required();
  add_format(theory_cmd);

  auto* simulate = app.add_subcommand("simulate", "Blocking simulation from a scenario config");
  simulate->add_option("--config", opts.config_path, "Scenario config file")->required();
  simulate->add_option("--seed", opts.seed, "Override the config seed");
  simulate->add_flag("--timing", opts.timing, "Report measured wall_seconds instead of 0");
  add_format(simulate);

  auto* dcn_cmd = app.add_subcommand("dcn", "Fold a Clos spec into Spine-Leaf and evaluate multicast");
  dcn_cmd->add_option("--config", opts.config_path, "Scenario config file")->required();
  dcn_cmd->add_option("--out", opts.out_path, "Also write the output to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (complexity->parsed()) cmd_complexity(opts);
    else if (theory_cmd->parsed()) cmd_theory(opts);
    else if (simulate->parsed()) cmd_simulate(opts);
    else if (dcn_cmd->parsed()) cmd_dcn(opts);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const InvalidConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const InvalidSpec& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return kRuntimeError;
  }
  return 0;
}
