#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "closfab/admission.hpp"
#include "closfab/fabric.hpp"

namespace closfab::dcn {

enum class SpineKind { Switch, Splitter, DirectRing };
std::string_view to_string(SpineKind kind);

/// Folded Clos (Spine-Leaf) topology. Each leaf stacks one ingress and one
/// egress element of the unfolded fabric, so it is (L + M) x (L + M): L host
/// ports plus one port per spine slot.
struct SpineLeafSpec {
  int leaves = 2;       // D
  int host_ports = 1;   // L
  int wavelengths = 1;  // W
  std::vector<SpineKind> spines;  // M slots

  [[nodiscard]] int leaf_size() const { return host_ports + static_cast<int>(spines.size()); }
  [[nodiscard]] int spine_ports() const { return leaves; }
  void validate() const;

  bool operator==(const SpineLeafSpec&) const = default;
};

/// Folds a Clos spec: D leaves, M switch spines, same L and W. Throws
/// InvalidSpec for Spanke input.
SpineLeafSpec fold_clos(const FabricSpec& spec);

/// Unfolds back to the WSS Clos fabric v(M, L, D) with the same W.
FabricSpec unfold(const SpineLeafSpec& spec);

/// Replaces spine slot `index`. Throws IndexOutOfRange.
SpineLeafSpec substitute_spine(SpineLeafSpec spec, int index, SpineKind kind);

/// Round-robin direct connections installed by a DirectRing slot:
/// leaf i -> leaf (i + 1) mod D.
std::vector<std::pair<int, int>> direct_ring_links(int leaves);

/// Endpoint on a leaf's host side.
struct HostPort {
  int leaf = 0;
  int port = 0;

  auto operator<=>(const HostPort&) const = default;
};

struct MulticastRequest {
  HostPort src;
  std::vector<HostPort> dsts;
};

struct MulticastConnection {
  ConnectionId id = kNoConnection;
  MulticastRequest request;
  int wavelength = 0;
  int spine = 0;
  std::vector<Slot> resources;
};

/// Occupancy model for a Spine-Leaf fabric.
///
/// Host ports map onto the line fibers of the unfolded Clos fabric and leaf
/// uplinks/downlinks onto its ingress->middle / middle->egress links, so
/// unicast admission reuses the Clos admission logic restricted to Switch
/// spines. A splitter broadcasts whatever enters it, so it carries at most
/// one connection per wavelength.
class SpineLeafFabric {
 public:
  explicit SpineLeafFabric(SpineLeafSpec spec);

  [[nodiscard]] const SpineLeafSpec& spec() const { return spec_; }
  [[nodiscard]] const Fabric& fabric() const { return fabric_; }

  /// Unicast over Switch spines. Throws InvalidRequest.
  std::optional<Connection> admit_unicast(const ConnectionRequest& request, Policy policy, Rng& rng);

  /// Every (wavelength, splitter) pair that could carry `request`, ascending
  /// in wavelength then spine. Throws NoSplitterSpine / InvalidRequest.
  [[nodiscard]] std::vector<std::pair<int, int>> multicast_options(const MulticastRequest& request) const;

  /// First-fit over (wavelength, splitter). Returns nullopt when blocked,
  /// without mutating state.
  std::optional<MulticastConnection> admit_multicast(const MulticastRequest& request);

  /// Releases a unicast or multicast connection. Throws UnknownConnection.
  void release(ConnectionId id);

  /// Connection holding `wavelength` on splitter `spine`, if any.
  [[nodiscard]] std::optional<ConnectionId> splitter_owner(int spine, int wavelength) const;

 private:
  void validate_multicast(const MulticastRequest& request) const;

  SpineLeafSpec spec_;
  Fabric fabric_;
  std::vector<std::uint8_t> switch_mask_;
  std::vector<ConnectionId> splitter_owner_;  // spine * W + wavelength
};

}  // namespace closfab::dcn
