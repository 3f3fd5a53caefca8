#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "closfab/errors.hpp"

namespace closfab {

enum class FabricKind { Spanke, Clos };

// Middle-stage element of a Clos fabric. Ignored for Spanke fabrics.
enum class MiddleKind { WSS, TWC_WSS, AWG, TWC_AWG, TWC_AWG_TWC };

std::string_view to_string(FabricKind kind);
std::string_view to_string(MiddleKind kind);
std::optional<FabricKind> parse_fabric_kind(std::string_view text);
std::optional<MiddleKind> parse_middle_kind(std::string_view text);

/// Declarative description of a switching fabric.
///
/// A Spanke fabric s(D, L) has `degrees` directional degrees with
/// `fibers_per_degree` line fibers each. A Clos fabric v(M, L, D) adds
/// `middles` middle-stage elements of kind `middle_kind`. Fields are named,
/// so positional notation order never matters.
struct FabricSpec {
  FabricKind kind = FabricKind::Spanke;
  int degrees = 2;
  int fibers_per_degree = 1;
  int middles = 0;
  int wavelengths = 1;
  MiddleKind middle_kind = MiddleKind::WSS;

  static FabricSpec spanke(int degrees, int fibers_per_degree, int wavelengths);
  static FabricSpec clos(int middles, int fibers_per_degree, int degrees,
                         int wavelengths, MiddleKind middle_kind = MiddleKind::WSS);

  /// Throws InvalidSpec unless D >= 2, L >= 1, W >= 1 and (Clos) M >= 1.
  void validate() const;

  [[nodiscard]] bool is_clos() const { return kind == FabricKind::Clos; }
  [[nodiscard]] int line_fibers() const { return degrees * fibers_per_degree; }

  bool operator==(const FabricSpec&) const = default;
};

enum class Stage { Ingress, Middle, Egress };
std::string_view to_string(Stage stage);

struct ElementDescriptor {
  Stage stage = Stage::Ingress;
  int index = 0;
  int rows = 0;  // input ports
  int cols = 0;  // output ports

  bool operator==(const ElementDescriptor&) const = default;
};

enum class FiberKind : std::uint8_t { LineIn, LineOut, IngressToMiddle, MiddleToEgress };
std::string_view to_string(FiberKind kind);

/// Address of one fiber. For line fibers `first` is the directional degree
/// and `second` the fiber within it. For IngressToMiddle it is (ingress
/// element, middle); for MiddleToEgress it is (middle, egress element).
struct FiberRef {
  FiberKind kind = FiberKind::LineIn;
  int first = 0;
  int second = 0;

  static constexpr FiberRef line_in(int degree, int fiber) { return {FiberKind::LineIn, degree, fiber}; }
  static constexpr FiberRef line_out(int degree, int fiber) { return {FiberKind::LineOut, degree, fiber}; }
  static constexpr FiberRef ingress_to_middle(int ingress, int middle) {
    return {FiberKind::IngressToMiddle, ingress, middle};
  }
  static constexpr FiberRef middle_to_egress(int middle, int egress) {
    return {FiberKind::MiddleToEgress, middle, egress};
  }

  auto operator<=>(const FiberRef&) const = default;
};

std::string to_string(const FiberRef& fiber);

/// One wavelength on one fiber.
struct Slot {
  FiberRef fiber;
  int wavelength = 0;

  auto operator<=>(const Slot&) const = default;
};

using ConnectionId = std::uint64_t;
inline constexpr ConnectionId kNoConnection = 0;

/// Resources held by one connection.
struct Reservation {
  ConnectionId id = kNoConnection;
  std::vector<Slot> slots;

  bool operator==(const Reservation&) const = default;
};

struct ElementCounts {
  long long ingress = 0;
  long long middle = 0;
  long long egress = 0;
  long long total = 0;
};

ElementCounts count_elements(const FabricSpec& spec);

/// Internal fiber count: (D^2 - D) L^2 for Spanke, 2 D M for Clos.
long long count_fibers(const FabricSpec& spec);

/// Materialized fabric with exact per-wavelength occupancy.
///
/// Line fibers exist for both architectures. Clos fabrics additionally store
/// every ingress->middle and middle->egress link. Spanke backplane fibers are
/// dedicated per (ingress fiber, egress fiber) pair, so their occupancy is
/// implied by the line fibers and they are only counted, not stored.
///
/// Mutation is single-threaded; const queries may run concurrently.
class Fabric {
 public:
  explicit Fabric(FabricSpec spec);

  [[nodiscard]] const FabricSpec& spec() const { return spec_; }
  [[nodiscard]] const std::vector<ElementDescriptor>& elements() const { return elements_; }

  /// Stored internal links (empty for Spanke).
  [[nodiscard]] std::vector<FiberRef> internal_fibers() const;
  /// All stored fibers, line fibers first.
  [[nodiscard]] std::vector<FiberRef> fibers() const;

  [[nodiscard]] bool contains(const FiberRef& fiber) const;
  /// Dense index of a stored fiber. Throws UnknownFiber.
  [[nodiscard]] std::size_t index_of(const FiberRef& fiber) const;
  [[nodiscard]] std::size_t fiber_count() const { return fiber_count_; }

  // Unchecked dense-index accessors for hot loops.
  [[nodiscard]] std::size_t line_in_index(int degree, int fiber) const {
    return static_cast<std::size_t>(degree * spec_.fibers_per_degree + fiber);
  }
  [[nodiscard]] std::size_t line_out_index(int degree, int fiber) const {
    return line_in_index(degree, fiber) + static_cast<std::size_t>(spec_.line_fibers());
  }
  [[nodiscard]] std::size_t uplink_index(int ingress, int middle) const {
    return 2 * static_cast<std::size_t>(spec_.line_fibers()) +
           static_cast<std::size_t>(ingress * spec_.middles + middle);
  }
  [[nodiscard]] std::size_t downlink_index(int middle, int egress) const {
    return 2 * static_cast<std::size_t>(spec_.line_fibers()) +
           static_cast<std::size_t>(spec_.degrees * spec_.middles) +
           static_cast<std::size_t>(middle * spec_.degrees + egress);
  }
  [[nodiscard]] bool slot_free(std::size_t fiber_index, int wavelength) const {
    return occupancy_[fiber_index * static_cast<std::size_t>(spec_.wavelengths) +
                      static_cast<std::size_t>(wavelength)] == kNoConnection;
  }

  /// Occupant of one slot. Throws UnknownFiber / InvalidInput.
  [[nodiscard]] std::optional<ConnectionId> occupant(const FiberRef& fiber, int wavelength) const;
  /// Ascending wavelengths with no occupant. Throws UnknownFiber.
  [[nodiscard]] std::vector<int> free_wavelengths(const FiberRef& fiber) const;
  [[nodiscard]] std::size_t occupied_slots() const;

  /// Marks every slot of `reservation` as held by its id. All-or-nothing:
  /// throws ResourceConflict (or UnknownFiber) without mutating state.
  void apply(const Reservation& reservation);
  /// Frees exactly the slots held by `id` and returns them. Throws
  /// UnknownConnection.
  Reservation release(ConnectionId id);

  [[nodiscard]] const std::map<ConnectionId, std::vector<Slot>>& reservations() const {
    return reservations_;
  }
  [[nodiscard]] bool has_connection(ConnectionId id) const { return reservations_.contains(id); }

  /// Fresh id, never handed out before by this fabric.
  ConnectionId allocate_id() { return next_id_++; }

  /// Verifies no double booking and that reservations and occupancy agree
  /// in both directions. Returns a description of the first violation.
  [[nodiscard]] std::optional<std::string> check_consistency() const;

  /// Equality over spec, occupancy and reservations (the id allocator is
  /// not part of the observable state).
  bool operator==(const Fabric& other) const;

 private:
  [[nodiscard]] std::size_t slot_index(const Slot& slot) const;

  FabricSpec spec_;
  std::vector<ElementDescriptor> elements_;
  std::size_t fiber_count_ = 0;
  std::vector<ConnectionId> occupancy_;
  std::map<ConnectionId, std::vector<Slot>> reservations_;
  ConnectionId next_id_ = 1;
};

/// Validates `spec` and returns an empty fabric.
Fabric build_fabric(const FabricSpec& spec);

}  // namespace closfab
