#include "closfab/admission.hpp"

#include <string>

namespace closfab {

std::string_view to_string(Policy policy) {
  return policy == Policy::FirstFit ? "first-fit" : "random";
}

std::optional<Policy> parse_policy(std::string_view text) {
  if (text == "first-fit") return Policy::FirstFit;
  if (text == "random") return Policy::Random;
  return std::nullopt;
}

void validate_request(const FabricSpec& spec, const ConnectionRequest& request) {
  const auto check = [&](const LinePort& port, const char* which) {
    if (port.degree < 0 || port.degree >= spec.degrees || port.fiber < 0 ||
        port.fiber >= spec.fibers_per_degree) {
      throw InvalidRequest(std::string(which) + " (" + std::to_string(port.degree) + "," +
                           std::to_string(port.fiber) + ") out of range");
    }
  };
  check(request.src, "src");
  check(request.dst, "dst");
  if (request.src.degree == request.dst.degree) {
    throw InvalidRequest("src and dst share directional degree " + std::to_string(request.src.degree));
  }
}

std::vector<Slot> resources_for(const FabricSpec& spec, const ConnectionRequest& request,
                                const Assignment& assignment) {
  std::vector<Slot> slots;
  slots.push_back({FiberRef::line_in(request.src.degree, request.src.fiber), assignment.wavelength_in});
  if (spec.is_clos()) {
    slots.push_back({FiberRef::ingress_to_middle(request.src.degree, assignment.middle), assignment.wavelength_in});
    slots.push_back({FiberRef::middle_to_egress(assignment.middle, request.dst.degree), assignment.wavelength_out});
  }
  slots.push_back({FiberRef::line_out(request.dst.degree, request.dst.fiber), assignment.wavelength_out});
  return slots;
}

namespace {

// Visits feasible assignments in ascending (w_in, m, w_out) order until the
// visitor returns false.
template <typename Visitor>
void enumerate(const Fabric& fabric, const ConnectionRequest& request, MiddleMask mask, Visitor&& visit) {
  const FabricSpec& spec = fabric.spec();
  validate_request(spec, request);
  if (!mask.empty() && static_cast<int>(mask.size()) != spec.middles) {
    throw InvalidInput("middle mask size does not match middle count");
  }
  const int wavelengths = spec.wavelengths;
  const int src_deg = request.src.degree;
  const int dst_deg = request.dst.degree;
  const std::size_t src_line = fabric.line_in_index(src_deg, request.src.fiber);
  const std::size_t dst_line = fabric.line_out_index(dst_deg, request.dst.fiber);

  if (!spec.is_clos()) {
    for (int w = 0; w < wavelengths; ++w) {
      if (fabric.slot_free(src_line, w) && fabric.slot_free(dst_line, w)) {
        if (!visit(Assignment{w, -1, w})) return;
      }
    }
    return;
  }

  const MiddleKind kind = spec.middle_kind;
  const bool continuity = kind == MiddleKind::WSS || kind == MiddleKind::AWG;
  const bool routed_out = kind == MiddleKind::AWG || kind == MiddleKind::TWC_AWG;

  for (int w_in = 0; w_in < wavelengths; ++w_in) {
    if (!fabric.slot_free(src_line, w_in)) continue;
    if (kind == MiddleKind::AWG && awg_route(src_deg, w_in, spec.degrees) != dst_deg) continue;
    for (int m = 0; m < spec.middles; ++m) {
      if (!mask.empty() && mask[static_cast<std::size_t>(m)] == 0) continue;
      if (!fabric.slot_free(fabric.uplink_index(src_deg, m), w_in)) continue;
      const std::size_t down = fabric.downlink_index(m, dst_deg);
      const int lo = continuity ? w_in : 0;
      const int hi = continuity ? w_in + 1 : wavelengths;
      for (int w_out = lo; w_out < hi; ++w_out) {
        if (routed_out && awg_route(src_deg, w_out, spec.degrees) != dst_deg) continue;
        if (!fabric.slot_free(down, w_out) || !fabric.slot_free(dst_line, w_out)) continue;
        if (!visit(Assignment{w_in, m, w_out})) return;
      }
    }
  }
}

}  // namespace

std::vector<Assignment> admissible_assignments(const Fabric& fabric, const ConnectionRequest& request,
                                               MiddleMask usable_middles) {
  std::vector<Assignment> out;
  enumerate(fabric, request, usable_middles, [&](const Assignment& a) {
    out.push_back(a);
    return true;
  });
  return out;
}

std::optional<Assignment> first_admissible(const Fabric& fabric, const ConnectionRequest& request,
                                           MiddleMask usable_middles) {
  std::optional<Assignment> found;
  enumerate(fabric, request, usable_middles, [&](const Assignment& a) {
    found = a;
    return false;
  });
  return found;
}

std::optional<Connection> admit(Fabric& fabric, const ConnectionRequest& request, Policy policy, Rng& rng,
                                MiddleMask usable_middles) {
  std::optional<Assignment> chosen;
  if (policy == Policy::FirstFit) {
    chosen = first_admissible(fabric, request, usable_middles);
  } else {
    auto options = admissible_assignments(fabric, request, usable_middles);
    if (!options.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
      chosen = options[pick(rng)];
    }
  }
  if (!chosen) return std::nullopt;

  Connection conn;
  conn.id = fabric.allocate_id();
  conn.request = request;
  conn.assignment = *chosen;
  conn.resources = resources_for(fabric.spec(), request, *chosen);
  fabric.apply({conn.id, conn.resources});
  return conn;
}

}  // namespace closfab
