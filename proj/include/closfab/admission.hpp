#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "closfab/fabric.hpp"

namespace closfab {

using Rng = std::mt19937_64;
inline constexpr const char* kRngName = "mt19937_64";

/// Line fiber endpoint: directional degree plus fiber within it.
struct LinePort {
  int degree = 0;
  int fiber = 0;

  auto operator<=>(const LinePort&) const = default;
};

/// Request to join input line fiber `src` to output line fiber `dst`.
/// The two must sit on different directional degrees.
struct ConnectionRequest {
  LinePort src;
  LinePort dst;

  auto operator<=>(const ConnectionRequest&) const = default;
};

/// Concrete resource choice for a request. `middle` is -1 for Spanke.
/// `wavelength_in` is used on the source line fiber and (Clos) on the
/// ingress->middle link; `wavelength_out` on the middle->egress link and the
/// destination line fiber.
struct Assignment {
  int wavelength_in = 0;
  int middle = -1;
  int wavelength_out = 0;

  auto operator<=>(const Assignment&) const = default;
};

struct Connection {
  ConnectionId id = kNoConnection;
  ConnectionRequest request;
  Assignment assignment;
  std::vector<Slot> resources;
};

enum class Policy { FirstFit, Random };
std::string_view to_string(Policy policy);
std::optional<Policy> parse_policy(std::string_view text);

/// Cyclic AWG routing: input port p on wavelength w leaves on (p + w) mod ports.
constexpr int awg_route(int port_in, int wavelength, int ports) {
  const int r = (port_in + wavelength) % ports;
  return r < 0 ? r + ports : r;
}

/// Throws InvalidRequest for out-of-range indices or same-degree endpoints.
void validate_request(const FabricSpec& spec, const ConnectionRequest& request);

/// Exact slot list a connection with `assignment` occupies.
std::vector<Slot> resources_for(const FabricSpec& spec, const ConnectionRequest& request,
                                const Assignment& assignment);

/// Restricts which middle elements admission may route through. An empty
/// mask allows all of them; otherwise mask[m] != 0 marks middle m usable.
using MiddleMask = std::span<const std::uint8_t>;

/// Every feasible assignment, ascending in (wavelength_in, middle,
/// wavelength_out). Throws InvalidRequest.
std::vector<Assignment> admissible_assignments(const Fabric& fabric, const ConnectionRequest& request,
                                               MiddleMask usable_middles = {});

/// First entry of admissible_assignments without building the list.
std::optional<Assignment> first_admissible(const Fabric& fabric, const ConnectionRequest& request,
                                           MiddleMask usable_middles = {});

/// Picks an assignment by `policy`, applies it and returns the connection, or
/// returns nullopt (blocked) leaving the fabric untouched. `rng` is only drawn
/// from by the Random policy.
std::optional<Connection> admit(Fabric& fabric, const ConnectionRequest& request, Policy policy, Rng& rng,
                                MiddleMask usable_middles = {});

}  // namespace closfab
