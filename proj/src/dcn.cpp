#include "closfab/dcn.hpp"

#include <algorithm>
#include <string>

namespace closfab::dcn {

std::string_view to_string(SpineKind kind) {
  switch (kind) {
    case SpineKind::Switch: return "switch";
    case SpineKind::Splitter: return "splitter";
    case SpineKind::DirectRing: return "direct-ring";
  }
  return "?";
}

void SpineLeafSpec::validate() const {
  if (leaves < 2) throw InvalidSpec("need at least 2 leaves");
  if (host_ports < 1) throw InvalidSpec("need at least 1 host port per leaf");
  if (wavelengths < 1) throw InvalidSpec("need at least 1 wavelength");
  if (spines.empty()) throw InvalidSpec("need at least 1 spine slot");
}

SpineLeafSpec fold_clos(const FabricSpec& spec) {
  spec.validate();
  if (!spec.is_clos()) throw InvalidSpec("only Clos fabrics fold into Spine-Leaf");
  SpineLeafSpec out;
  out.leaves = spec.degrees;
  out.host_ports = spec.fibers_per_degree;
  out.wavelengths = spec.wavelengths;
  out.spines.assign(static_cast<std::size_t>(spec.middles), SpineKind::Switch);
  return out;
}

FabricSpec unfold(const SpineLeafSpec& spec) {
  spec.validate();
  return FabricSpec::clos(static_cast<int>(spec.spines.size()), spec.host_ports, spec.leaves, spec.wavelengths,
                          MiddleKind::WSS);
}

SpineLeafSpec substitute_spine(SpineLeafSpec spec, int index, SpineKind kind) {
  if (index < 0 || index >= static_cast<int>(spec.spines.size())) {
    throw IndexOutOfRange("spine " + std::to_string(index) + " of " + std::to_string(spec.spines.size()));
  }
  spec.spines[static_cast<std::size_t>(index)] = kind;
  return spec;
}

std::vector<std::pair<int, int>> direct_ring_links(int leaves) {
  if (leaves < 2) throw InvalidSpec("a ring needs at least 2 leaves");
  std::vector<std::pair<int, int>> links;
  links.reserve(static_cast<std::size_t>(leaves));
  for (int i = 0; i < leaves; ++i) links.emplace_back(i, (i + 1) % leaves);
  return links;
}

SpineLeafFabric::SpineLeafFabric(SpineLeafSpec spec) : spec_(std::move(spec)), fabric_(unfold(spec_)) {
  for (SpineKind kind : spec_.spines) switch_mask_.push_back(kind == SpineKind::Switch ? 1 : 0);
  splitter_owner_.assign(spec_.spines.size() * static_cast<std::size_t>(spec_.wavelengths), kNoConnection);
}

std::optional<Connection> SpineLeafFabric::admit_unicast(const ConnectionRequest& request, Policy policy, Rng& rng) {
  return admit(fabric_, request, policy, rng, switch_mask_);
}

void SpineLeafFabric::validate_multicast(const MulticastRequest& request) const {
  const auto check = [&](const HostPort& p) {
    if (p.leaf < 0 || p.leaf >= spec_.leaves || p.port < 0 || p.port >= spec_.host_ports) {
      throw InvalidRequest("host port (" + std::to_string(p.leaf) + "," + std::to_string(p.port) + ") out of range");
    }
  };
  check(request.src);
  if (request.dsts.empty()) throw InvalidRequest("multicast needs at least one destination");
  std::vector<int> seen;
  for (const auto& dst : request.dsts) {
    check(dst);
    if (dst.leaf == request.src.leaf) throw InvalidRequest("destination on the source leaf");
    if (std::find(seen.begin(), seen.end(), dst.leaf) != seen.end()) {
      throw InvalidRequest("duplicate destination leaf " + std::to_string(dst.leaf));
    }
    seen.push_back(dst.leaf);
  }
  if (std::none_of(spec_.spines.begin(), spec_.spines.end(), [](SpineKind k) { return k == SpineKind::Splitter; })) {
    throw NoSplitterSpine("multicast needs a splitter spine");
  }
}

std::vector<std::pair<int, int>> SpineLeafFabric::multicast_options(const MulticastRequest& request) const {
  validate_multicast(request);
  std::vector<std::pair<int, int>> out;
  const std::size_t src_line = fabric_.line_in_index(request.src.leaf, request.src.port);
  for (int w = 0; w < spec_.wavelengths; ++w) {
    if (!fabric_.slot_free(src_line, w)) continue;
    const bool hosts_free = std::all_of(request.dsts.begin(), request.dsts.end(), [&](const HostPort& d) {
      return fabric_.slot_free(fabric_.line_out_index(d.leaf, d.port), w);
    });
    if (!hosts_free) continue;
    for (int s = 0; s < static_cast<int>(spec_.spines.size()); ++s) {
      if (spec_.spines[static_cast<std::size_t>(s)] != SpineKind::Splitter) continue;
      if (splitter_owner(s, w)) continue;
      if (!fabric_.slot_free(fabric_.uplink_index(request.src.leaf, s), w)) continue;
      const bool downs_free = std::all_of(request.dsts.begin(), request.dsts.end(), [&](const HostPort& d) {
        return fabric_.slot_free(fabric_.downlink_index(s, d.leaf), w);
      });
      if (downs_free) out.emplace_back(w, s);
    }
  }
  return out;
}

std::optional<MulticastConnection> SpineLeafFabric::admit_multicast(const MulticastRequest& request) {
  const auto options = multicast_options(request);
  if (options.empty()) return std::nullopt;
  const auto [w, s] = options.front();

  MulticastConnection conn;
  conn.id = fabric_.allocate_id();
  conn.request = request;
  conn.wavelength = w;
  conn.spine = s;
  conn.resources.push_back({FiberRef::line_in(request.src.leaf, request.src.port), w});
  conn.resources.push_back({FiberRef::ingress_to_middle(request.src.leaf, s), w});
  for (const auto& d : request.dsts) conn.resources.push_back({FiberRef::middle_to_egress(s, d.leaf), w});
  for (const auto& d : request.dsts) conn.resources.push_back({FiberRef::line_out(d.leaf, d.port), w});
  fabric_.apply({conn.id, conn.resources});
  splitter_owner_[static_cast<std::size_t>(s * spec_.wavelengths + w)] = conn.id;
  return conn;
}

void SpineLeafFabric::release(ConnectionId id) {
  fabric_.release(id);
  std::replace(splitter_owner_.begin(), splitter_owner_.end(), id, kNoConnection);
}

std::optional<ConnectionId> SpineLeafFabric::splitter_owner(int spine, int wavelength) const {
  const ConnectionId id = splitter_owner_[static_cast<std::size_t>(spine * spec_.wavelengths + wavelength)];
  if (id == kNoConnection) return std::nullopt;
  return id;
}

}  // namespace closfab::dcn
