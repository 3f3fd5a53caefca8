#include "closfab/report.hpp"

#include <cstdio>
#include <sstream>

namespace closfab::report {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

const std::vector<std::string>& sim_columns() {
  static const std::vector<std::string> columns = {
      "arch", "middle", "d", "l", "m", "w", "load", "policy", "seed", "arrivals",
      "blocked", "blocking_prob", "ci_lo", "ci_hi", "rng_name", "wall_seconds"};
  return columns;
}

namespace {

std::vector<std::string> sim_fields(const sim::SimStats& s, bool with_timing) {
  const bool clos = s.fabric.is_clos();
  return {std::string(to_string(s.fabric.kind)),
          clos ? std::string(to_string(s.fabric.middle_kind)) : std::string("none"),
          std::to_string(s.fabric.degrees),
          std::to_string(s.fabric.fibers_per_degree),
          std::to_string(clos ? s.fabric.middles : 0),
          std::to_string(s.fabric.wavelengths),
          format_number(s.load_per_fiber),
          std::string(to_string(s.policy)),
          std::to_string(s.seed),
          std::to_string(s.arrivals),
          std::to_string(s.blocked),
          format_number(s.blocking),
          format_number(s.ci_lo),
          format_number(s.ci_hi),
          s.rng_name,
          format_number(with_timing ? s.wall_seconds : 0.0)};
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  return out;
}

}  // namespace

std::string sim_csv(const std::vector<sim::SimStats>& rows, bool with_timing) {
  std::string out = join(sim_columns()) + "\n";
  for (const auto& row : rows) out += join(sim_fields(row, with_timing)) + "\n";
  return out;
}

Json sim_json(const std::vector<sim::SimStats>& rows, const ScenarioConfig& config, bool with_timing) {
  Json echo = Json::object();
  for (const auto& [k, v] : config.entries()) echo[k] = v;

  Json doc;
  doc["header"] = {{"tool", "closfab"}, {"version", CLOSFAB_VERSION}, {"config", echo}};
  Json out_rows = Json::array();
  for (const auto& s : rows) {
    const bool clos = s.fabric.is_clos();
    Json r;
    r["arch"] = to_string(s.fabric.kind);
    r["middle"] = clos ? std::string(to_string(s.fabric.middle_kind)) : std::string("none");
    r["d"] = s.fabric.degrees;
    r["l"] = s.fabric.fibers_per_degree;
    r["m"] = clos ? s.fabric.middles : 0;
    r["w"] = s.fabric.wavelengths;
    r["load"] = s.load_per_fiber;
    r["policy"] = to_string(s.policy);
    r["seed"] = s.seed;
    r["arrivals"] = s.arrivals;
    r["blocked"] = s.blocked;
    r["blocking_prob"] = s.blocking;
    r["ci_lo"] = s.ci_lo;
    r["ci_hi"] = s.ci_hi;
    r["rng_name"] = s.rng_name;
    r["wall_seconds"] = with_timing ? s.wall_seconds : 0.0;
    out_rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(out_rows);
  return doc;
}

std::string complexity_csv(const theory::ComplexityReport& r) {
  return "d,l,m,spanke_elements,spanke_fibers,clos_elements,clos_fibers,element_savings,fiber_savings\n" +
         join({std::to_string(r.degrees), std::to_string(r.fibers_per_degree), std::to_string(r.middles),
               std::to_string(r.spanke_elements), std::to_string(r.spanke_fibers), std::to_string(r.clos_elements),
               std::to_string(r.clos_fibers), format_number(r.element_savings), format_number(r.fiber_savings)}) +
         "\n";
}

Json complexity_json(const theory::ComplexityReport& r) {
  return {{"d", r.degrees},
          {"l", r.fibers_per_degree},
          {"m", r.middles},
          {"spanke_elements", r.spanke_elements},
          {"spanke_fibers", r.spanke_fibers},
          {"clos_elements", r.clos_elements},
          {"clos_fibers", r.clos_fibers},
          {"element_savings", r.element_savings},
          {"fiber_savings", r.fiber_savings}};
}

std::string theory_csv(const theory::TheoreticalLimit& t) {
  return "rho,w,erlang_b,input_blocking,output_blocking,limit\n" +
         join({format_number(t.load), std::to_string(t.wavelengths), format_number(t.input_blocking),
               format_number(t.input_blocking), format_number(t.output_blocking), format_number(t.blocking)}) +
         "\n";
}

Json theory_json(const theory::TheoreticalLimit& t) {
  return {{"rho", t.load},
          {"w", t.wavelengths},
          {"erlang_b", t.input_blocking},
          {"input_blocking", t.input_blocking},
          {"output_blocking", t.output_blocking},
          {"limit", t.blocking}};
}

Json fabric_json(const Fabric& fabric) {
  const auto& spec = fabric.spec();
  Json doc;
  doc["spec"] = {{"arch", to_string(spec.kind)},
                 {"middle", spec.is_clos() ? std::string(to_string(spec.middle_kind)) : std::string("none")},
                 {"d", spec.degrees},
                 {"l", spec.fibers_per_degree},
                 {"m", spec.is_clos() ? spec.middles : 0},
                 {"w", spec.wavelengths}};
  Json elements = Json::array();
  for (const auto& e : fabric.elements()) {
    elements.push_back({{"stage", to_string(e.stage)}, {"index", e.index}, {"rows", e.rows}, {"cols", e.cols}});
  }
  doc["elements"] = std::move(elements);
  Json fibers = Json::array();
  for (const auto& f : fabric.fibers()) fibers.push_back({{"kind", to_string(f.kind)}, {"a", f.first}, {"b", f.second}});
  doc["fibers"] = std::move(fibers);
  doc["internal_fiber_count"] = count_fibers(spec);
  Json occupancy = Json::array();
  for (const auto& [id, slots] : fabric.reservations()) {
    for (const auto& slot : slots) {
      occupancy.push_back({{"connection", id},
                           {"kind", to_string(slot.fiber.kind)},
                           {"a", slot.fiber.first},
                           {"b", slot.fiber.second},
                           {"wavelength", slot.wavelength}});
    }
  }
  doc["occupancy"] = std::move(occupancy);
  return doc;
}

Json topology_json(const dcn::SpineLeafSpec& spec) {
  Json doc;
  doc["w"] = spec.wavelengths;
  Json leaves = Json::array();
  for (int i = 0; i < spec.leaves; ++i) {
    leaves.push_back({{"index", i}, {"rows", spec.leaf_size()}, {"cols", spec.leaf_size()},
                      {"host_ports", spec.host_ports}});
  }
  doc["leaves"] = std::move(leaves);
  Json spines = Json::array();
  for (std::size_t s = 0; s < spec.spines.size(); ++s) {
    Json slot = {{"index", s}, {"kind", dcn::to_string(spec.spines[s])}};
    switch (spec.spines[s]) {
      case dcn::SpineKind::Switch:
        slot["rows"] = spec.spine_ports();
        slot["cols"] = spec.spine_ports();
        break;
      case dcn::SpineKind::Splitter:
        slot["fanout"] = spec.spine_ports();
        break;
      case dcn::SpineKind::DirectRing: {
        Json adjacency = Json::array();
        for (const auto& [a, b] : dcn::direct_ring_links(spec.leaves)) adjacency.push_back({a, b});
        slot["adjacency"] = std::move(adjacency);
        break;
      }
    }
    spines.push_back(std::move(slot));
  }
  doc["spines"] = std::move(spines);
  return doc;
}

std::vector<std::vector<std::string>> read_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) {
      std::vector<std::string> fields;
      std::size_t f = 0;
      while (true) {
        const std::size_t comma = line.find(',', f);
        fields.emplace_back(line.substr(f, comma == std::string_view::npos ? std::string_view::npos : comma - f));
        if (comma == std::string_view::npos) break;
        f = comma + 1;
      }
      rows.push_back(std::move(fields));
    }
    start = end + 1;
  }
  return rows;
}

}  // namespace closfab::report
