#include "closfab/fabric.hpp"

#include <algorithm>
#include <stdexcept>

namespace closfab {

std::string_view to_string(FabricKind kind) {
  return kind == FabricKind::Spanke ? "spanke" : "clos";
}

std::string_view to_string(MiddleKind kind) {
  switch (kind) {
    case MiddleKind::WSS: return "wss";
    case MiddleKind::TWC_WSS: return "twc-wss";
    case MiddleKind::AWG: return "awg";
    case MiddleKind::TWC_AWG: return "twc-awg";
    case MiddleKind::TWC_AWG_TWC: return "twc-awg-twc";
  }
  return "?";
}

std::optional<FabricKind> parse_fabric_kind(std::string_view text) {
  if (text == "spanke") return FabricKind::Spanke;
  if (text == "clos") return FabricKind::Clos;
  return std::nullopt;
}

std::optional<MiddleKind> parse_middle_kind(std::string_view text) {
  for (auto kind : {MiddleKind::WSS, MiddleKind::TWC_WSS, MiddleKind::AWG, MiddleKind::TWC_AWG,
                    MiddleKind::TWC_AWG_TWC}) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Ingress: return "ingress";
    case Stage::Middle: return "middle";
    case Stage::Egress: return "egress";
  }
  return "?";
}

std::string_view to_string(FiberKind kind) {
  switch (kind) {
    case FiberKind::LineIn: return "line-in";
    case FiberKind::LineOut: return "line-out";
    case FiberKind::IngressToMiddle: return "ingress-to-middle";
    case FiberKind::MiddleToEgress: return "middle-to-egress";
  }
  return "?";
}

std::string to_string(const FiberRef& fiber) {
  return std::string(to_string(fiber.kind)) + "(" + std::to_string(fiber.first) + "," +
         std::to_string(fiber.second) + ")";
}

FabricSpec FabricSpec::spanke(int degrees, int fibers_per_degree, int wavelengths) {
  FabricSpec spec;
  spec.kind = FabricKind::Spanke;
  spec.degrees = degrees;
  spec.fibers_per_degree = fibers_per_degree;
  spec.middles = 0;
  spec.wavelengths = wavelengths;
  return spec;
}

FabricSpec FabricSpec::clos(int middles, int fibers_per_degree, int degrees, int wavelengths,
                            MiddleKind middle_kind) {
  FabricSpec spec;
  spec.kind = FabricKind::Clos;
  spec.degrees = degrees;
  spec.fibers_per_degree = fibers_per_degree;
  spec.middles = middles;
  spec.wavelengths = wavelengths;
  spec.middle_kind = middle_kind;
  return spec;
}

void FabricSpec::validate() const {
  if (degrees < 2) throw InvalidSpec("need at least 2 directional degrees, got " + std::to_string(degrees));
  if (fibers_per_degree < 1) throw InvalidSpec("need at least 1 fiber per degree");
  if (wavelengths < 1) throw InvalidSpec("need at least 1 wavelength");
  if (kind == FabricKind::Clos && middles < 1) throw InvalidSpec("Clos fabric needs at least 1 middle element");
}

ElementCounts count_elements(const FabricSpec& spec) {
  spec.validate();
  ElementCounts counts;
  const long long d = spec.degrees;
  const long long l = spec.fibers_per_degree;
  if (spec.is_clos()) {
    counts.ingress = d;
    counts.middle = spec.middles;
    counts.egress = d;
  } else {
    counts.ingress = d * l;
    counts.egress = d * l;
  }
  counts.total = counts.ingress + counts.middle + counts.egress;
  return counts;
}

long long count_fibers(const FabricSpec& spec) {
  spec.validate();
  const long long d = spec.degrees;
  const long long l = spec.fibers_per_degree;
  if (spec.is_clos()) return 2 * d * spec.middles;
  return (d * d - d) * l * l;
}

Fabric::Fabric(FabricSpec spec) : spec_(spec) {
  spec_.validate();
  const int d = spec_.degrees;
  const int l = spec_.fibers_per_degree;
  if (spec_.is_clos()) {
    const int m = spec_.middles;
    for (int i = 0; i < d; ++i) elements_.push_back({Stage::Ingress, i, l, m});
    for (int i = 0; i < m; ++i) elements_.push_back({Stage::Middle, i, d, d});
    for (int i = 0; i < d; ++i) elements_.push_back({Stage::Egress, i, m, l});
    fiber_count_ = 2 * static_cast<std::size_t>(d * l) + 2 * static_cast<std::size_t>(d * m);
  } else {
    const int fanout = (d - 1) * l;
    for (int i = 0; i < d * l; ++i) elements_.push_back({Stage::Ingress, i, 1, fanout});
    for (int i = 0; i < d * l; ++i) elements_.push_back({Stage::Egress, i, fanout, 1});
    fiber_count_ = 2 * static_cast<std::size_t>(d * l);
  }
  occupancy_.assign(fiber_count_ * static_cast<std::size_t>(spec_.wavelengths), kNoConnection);
}

Fabric build_fabric(const FabricSpec& spec) { return Fabric(spec); }

std::vector<FiberRef> Fabric::internal_fibers() const {
  std::vector<FiberRef> out;
  if (!spec_.is_clos()) return out;
  for (int a = 0; a < spec_.degrees; ++a)
    for (int m = 0; m < spec_.middles; ++m) out.push_back(FiberRef::ingress_to_middle(a, m));
  for (int m = 0; m < spec_.middles; ++m)
    for (int b = 0; b < spec_.degrees; ++b) out.push_back(FiberRef::middle_to_egress(m, b));
  return out;
}

std::vector<FiberRef> Fabric::fibers() const {
  std::vector<FiberRef> out;
  out.reserve(fiber_count_);
  for (int dd = 0; dd < spec_.degrees; ++dd)
    for (int l = 0; l < spec_.fibers_per_degree; ++l) out.push_back(FiberRef::line_in(dd, l));
  for (int dd = 0; dd < spec_.degrees; ++dd)
    for (int l = 0; l < spec_.fibers_per_degree; ++l) out.push_back(FiberRef::line_out(dd, l));
  for (const auto& f : internal_fibers()) out.push_back(f);
  return out;
}

bool Fabric::contains(const FiberRef& fiber) const {
  const auto in_range = [](int v, int n) { return v >= 0 && v < n; };
  switch (fiber.kind) {
    case FiberKind::LineIn:
    case FiberKind::LineOut:
      return in_range(fiber.first, spec_.degrees) && in_range(fiber.second, spec_.fibers_per_degree);
    case FiberKind::IngressToMiddle:
      return spec_.is_clos() && in_range(fiber.first, spec_.degrees) && in_range(fiber.second, spec_.middles);
    case FiberKind::MiddleToEgress:
      return spec_.is_clos() && in_range(fiber.first, spec_.middles) && in_range(fiber.second, spec_.degrees);
  }
  return false;
}

std::size_t Fabric::index_of(const FiberRef& fiber) const {
  if (!contains(fiber)) throw UnknownFiber(to_string(fiber));
  switch (fiber.kind) {
    case FiberKind::LineIn: return line_in_index(fiber.first, fiber.second);
    case FiberKind::LineOut: return line_out_index(fiber.first, fiber.second);
    case FiberKind::IngressToMiddle: return uplink_index(fiber.first, fiber.second);
    case FiberKind::MiddleToEgress: return downlink_index(fiber.first, fiber.second);
  }
  throw UnknownFiber(to_string(fiber));
}

std::size_t Fabric::slot_index(const Slot& slot) const {
  const std::size_t fiber = index_of(slot.fiber);
  if (slot.wavelength < 0 || slot.wavelength >= spec_.wavelengths) {
    throw InvalidInput("wavelength " + std::to_string(slot.wavelength) + " out of range");
  }
  return fiber * static_cast<std::size_t>(spec_.wavelengths) + static_cast<std::size_t>(slot.wavelength);
}

std::optional<ConnectionId> Fabric::occupant(const FiberRef& fiber, int wavelength) const {
  const ConnectionId id = occupancy_[slot_index({fiber, wavelength})];
  if (id == kNoConnection) return std::nullopt;
  return id;
}

std::vector<int> Fabric::free_wavelengths(const FiberRef& fiber) const {
  const std::size_t index = index_of(fiber);
  std::vector<int> out;
  for (int w = 0; w < spec_.wavelengths; ++w)
    if (slot_free(index, w)) out.push_back(w);
  return out;
}

std::size_t Fabric::occupied_slots() const {
  return static_cast<std::size_t>(
      std::count_if(occupancy_.begin(), occupancy_.end(), [](ConnectionId id) { return id != kNoConnection; }));
}

void Fabric::apply(const Reservation& reservation) {
  if (reservation.id == kNoConnection) throw InvalidInput("connection id 0 is reserved");
  if (reservations_.contains(reservation.id)) {
    throw ResourceConflict("connection " + std::to_string(reservation.id) + " already applied");
  }
  std::vector<std::size_t> indices;
  indices.reserve(reservation.slots.size());
  for (const auto& slot : reservation.slots) {
    const std::size_t index = slot_index(slot);
    if (occupancy_[index] != kNoConnection || std::find(indices.begin(), indices.end(), index) != indices.end()) {
      throw ResourceConflict(to_string(slot.fiber) + " wavelength " + std::to_string(slot.wavelength) +
                             " is occupied");
    }
    indices.push_back(index);
  }
  for (std::size_t index : indices) occupancy_[index] = reservation.id;
  reservations_.emplace(reservation.id, reservation.slots);
  if (reservation.id >= next_id_) next_id_ = reservation.id + 1;
#ifdef CLOSFAB_CHECK_INVARIANTS
  if (auto problem = check_consistency()) throw std::logic_error(*problem);
#endif
}

Reservation Fabric::release(ConnectionId id) {
  auto it = reservations_.find(id);
  if (it == reservations_.end()) throw UnknownConnection("no connection " + std::to_string(id));
  Reservation out{id, std::move(it->second)};
  reservations_.erase(it);
  for (const auto& slot : out.slots) occupancy_[slot_index(slot)] = kNoConnection;
#ifdef CLOSFAB_CHECK_INVARIANTS
  if (auto problem = check_consistency()) throw std::logic_error(*problem);
#endif
  return out;
}

std::optional<std::string> Fabric::check_consistency() const {
  std::vector<ConnectionId> expected(occupancy_.size(), kNoConnection);
  for (const auto& [id, slots] : reservations_) {
    for (const auto& slot : slots) {
      const std::size_t index = slot_index(slot);
      if (expected[index] != kNoConnection) {
        return "slot " + to_string(slot.fiber) + "/" + std::to_string(slot.wavelength) + " double-booked";
      }
      expected[index] = id;
    }
  }
  if (expected != occupancy_) return std::string("occupancy table disagrees with reservations");
  return std::nullopt;
}

bool Fabric::operator==(const Fabric& other) const {
  return spec_ == other.spec_ && occupancy_ == other.occupancy_ && reservations_ == other.reservations_;
}

}  // namespace closfab
