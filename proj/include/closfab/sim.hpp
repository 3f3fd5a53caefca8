#pragma once

#include <cstdint>
#include <queue>
#include <utility>
#include <variant>
#include <vector>

#include "closfab/admission.hpp"
#include "closfab/fabric.hpp"

namespace closfab::sim {

struct SimConfig {
  FabricSpec fabric;
  double load_per_fiber = 2.0;  // Erlang offered by each input line fiber
  std::uint64_t arrivals = 1'000'000;
  std::uint64_t seed = 1;
  Policy policy = Policy::FirstFit;
  double mean_holding = 1.0;

  /// Throws InvalidConfig (or InvalidSpec for the fabric).
  void validate() const;
};

struct SimStats {
  std::uint64_t arrivals = 0;
  std::uint64_t blocked = 0;
  double blocking = 0.0;
  double std_error = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  /// Offered Erlang per input fiber actually realised by the arrival stream:
  /// sum of drawn holding times over (last arrival time * input fibers).
  double offered_load_measured = 0.0;
  FabricSpec fabric;
  double load_per_fiber = 0.0;
  std::uint64_t seed = 0;
  Policy policy = Policy::FirstFit;
  const char* rng_name = kRngName;
  double wall_seconds = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Normal-approximation 95% interval p +/- 1.96 sqrt(p(1-p)/n), clamped to
/// [0, 1]. Throws InvalidInput unless 0 <= blocked <= arrivals, arrivals >= 1.
Interval confidence_interval(std::uint64_t blocked, std::uint64_t arrivals);

enum class EventKind { Arrival, Departure };

struct Event {
  double time = 0.0;
  std::uint64_t sequence = 0;
  EventKind kind = EventKind::Arrival;
  ConnectionRequest request;  // Arrival
  double holding = 0.0;       // Arrival
  ConnectionId connection = kNoConnection;  // Departure
};

/// Min-heap on time; equal times pop in insertion order.
class EventQueue {
 public:
  void push(Event event);
  Event pop();
  [[nodiscard]] bool empty() const { return heap_.empty(); }
  [[nodiscard]] std::size_t size() const { return heap_.size(); }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.time != b.time ? a.time > b.time : a.sequence > b.sequence;
    }
  };
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_sequence_ = 0;
};

/// Loss-system simulation of `config.arrivals` Poisson arrivals with
/// exponential holding times. Every arrival counts toward blocking (no
/// warm-up discard). Deterministic for a given config.
///
/// Traffic (arrival times, endpoints, holding times) comes from one stream
/// seeded by `seed`, and holding times are drawn for blocked requests too, so
/// different fabrics run with the same seed see an identical request stream.
/// The Random policy draws from a second, independent stream.
SimStats run(const SimConfig& config);

enum class SweepParam { Middles, Load, Arch, MiddleKind };
std::string_view to_string(SweepParam param);

using SweepValue = std::variant<int, double, FabricKind, closfab::MiddleKind>;

/// Seed for the run at `index` of a sweep.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index);

/// Copy of `base` with `param` set to `value` and the seed derived from
/// (base.seed, index). Throws InvalidConfig on a type or applicability
/// mismatch.
SimConfig sweep_point(const SimConfig& base, SweepParam param, const SweepValue& value, std::size_t index);

/// One independent run per value, in input order. Runs execute concurrently
/// (OpenMP) when available.
std::vector<SimStats> sweep(const SimConfig& base, SweepParam param, const std::vector<SweepValue>& values);

/// Single-threaded reference for `sweep`; results must match it exactly
/// apart from wall time.
std::vector<SimStats> sweep_serial(const SimConfig& base, SweepParam param, const std::vector<SweepValue>& values);

/// Runs prepared configs concurrently, preserving order.
std::vector<SimStats> run_all(const std::vector<SimConfig>& configs);

}  // namespace closfab::sim
