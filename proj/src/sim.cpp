#include "closfab/sim.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <random>
#include <string>

namespace closfab::sim {

void SimConfig::validate() const {
  fabric.validate();
  if (!(load_per_fiber > 0.0) || !std::isfinite(load_per_fiber)) throw InvalidConfig("load must be > 0");
  if (arrivals < 1) throw InvalidConfig("arrivals must be >= 1");
  if (!(mean_holding > 0.0) || !std::isfinite(mean_holding)) throw InvalidConfig("mean holding time must be > 0");
}

Interval confidence_interval(std::uint64_t blocked, std::uint64_t arrivals) {
  if (arrivals < 1) throw InvalidInput("arrivals must be >= 1");
  if (blocked > arrivals) throw InvalidInput("blocked exceeds arrivals");
  const double n = static_cast<double>(arrivals);
  const double p = static_cast<double>(blocked) / n;
  const double half = 1.96 * std::sqrt(p * (1.0 - p) / n);
  return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

void EventQueue::push(Event event) {
  event.sequence = next_sequence_++;
  heap_.push(std::move(event));
}

Event EventQueue::pop() {
  Event top = heap_.top();
  heap_.pop();
  return top;
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t z = base_seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SimStats run(const SimConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();

  Fabric fabric(config.fabric);
  const FabricSpec& spec = config.fabric;
  const int per_degree = spec.fibers_per_degree;
  const int inputs = spec.line_fibers();
  const int other_outputs = (spec.degrees - 1) * per_degree;

  Rng traffic(config.seed);
  Rng choice(derive_seed(config.seed, 0xC40C3ULL));
  std::exponential_distribution<double> gap(config.load_per_fiber * inputs / config.mean_holding);
  std::exponential_distribution<double> hold(1.0 / config.mean_holding);
  std::uniform_int_distribution<int> pick_src(0, inputs - 1);
  std::uniform_int_distribution<int> pick_dst(0, other_outputs - 1);

  const auto next_arrival = [&](double now) {
    Event e;
    e.kind = EventKind::Arrival;
    e.time = now + gap(traffic);
    const int src = pick_src(traffic);
    const int dst = pick_dst(traffic);
    e.request.src = {src / per_degree, src % per_degree};
    int dst_degree = dst / per_degree;
    if (dst_degree >= e.request.src.degree) ++dst_degree;
    e.request.dst = {dst_degree, dst % per_degree};
    e.holding = hold(traffic);
    return e;
  };

  SimStats stats;
  double offered_time = 0.0;
  double last_arrival = 0.0;
  std::uint64_t generated = 1;

  EventQueue queue;
  queue.push(next_arrival(0.0));
  while (!queue.empty()) {
    Event event = queue.pop();
    if (event.kind == EventKind::Departure) {
      fabric.release(event.connection);
      continue;
    }
    ++stats.arrivals;
    offered_time += event.holding;
    last_arrival = event.time;
    if (generated < config.arrivals) {
      queue.push(next_arrival(event.time));
      ++generated;
    }
    if (auto conn = admit(fabric, event.request, config.policy, choice)) {
      Event departure;
      departure.kind = EventKind::Departure;
      departure.time = event.time + event.holding;
      departure.connection = conn->id;
      queue.push(departure);
    } else {
      ++stats.blocked;
    }
    if (stats.arrivals == config.arrivals) break;
  }

  const double n = static_cast<double>(stats.arrivals);
  stats.blocking = static_cast<double>(stats.blocked) / n;
  stats.std_error = std::sqrt(stats.blocking * (1.0 - stats.blocking) / n);
  const Interval ci = confidence_interval(stats.blocked, stats.arrivals);
  stats.ci_lo = ci.lo;
  stats.ci_hi = ci.hi;
  stats.offered_load_measured = last_arrival > 0.0 ? offered_time / (last_arrival * inputs) : 0.0;
  stats.fabric = spec;
  stats.load_per_fiber = config.load_per_fiber;
  stats.seed = config.seed;
  stats.policy = config.policy;
  stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return stats;
}

std::string_view to_string(SweepParam param) {
  switch (param) {
    case SweepParam::Middles: return "m";
    case SweepParam::Load: return "load";
    case SweepParam::Arch: return "arch";
    case SweepParam::MiddleKind: return "middle";
  }
  return "?";
}

SimConfig sweep_point(const SimConfig& base, SweepParam param, const SweepValue& value, std::size_t index) {
  SimConfig config = base;
  config.seed = derive_seed(base.seed, index);
  const auto mismatch = [&] {
    return InvalidConfig("sweep value type does not match parameter '" + std::string(to_string(param)) + "'");
  };
  switch (param) {
    case SweepParam::Middles:
      if (!std::holds_alternative<int>(value)) throw mismatch();
      if (!base.fabric.is_clos()) throw InvalidConfig("sweeping m needs a Clos fabric");
      config.fabric.middles = std::get<int>(value);
      break;
    case SweepParam::Load:
      if (const auto* v = std::get_if<double>(&value)) {
        config.load_per_fiber = *v;
      } else if (const auto* i = std::get_if<int>(&value)) {
        config.load_per_fiber = *i;
      } else {
        throw mismatch();
      }
      break;
    case SweepParam::Arch:
      if (!std::holds_alternative<FabricKind>(value)) throw mismatch();
      config.fabric.kind = std::get<FabricKind>(value);
      break;
    case SweepParam::MiddleKind:
      if (!std::holds_alternative<closfab::MiddleKind>(value)) throw mismatch();
      if (!base.fabric.is_clos()) throw InvalidConfig("sweeping middle kind needs a Clos fabric");
      config.fabric.middle_kind = std::get<closfab::MiddleKind>(value);
      break;
  }
  config.validate();
  return config;
}

namespace {

std::vector<SimConfig> expand(const SimConfig& base, SweepParam param, const std::vector<SweepValue>& values) {
  if (values.empty()) throw InvalidConfig("sweep needs at least one value");
  std::vector<SimConfig> configs;
  configs.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) configs.push_back(sweep_point(base, param, values[i], i));
  return configs;
}

}  // namespace

std::vector<SimStats> run_all(const std::vector<SimConfig>& configs) {
  for (const auto& c : configs) c.validate();
  std::vector<SimStats> results(configs.size());
  std::vector<std::exception_ptr> failures(configs.size());
  const auto count = static_cast<std::ptrdiff_t>(configs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      results[static_cast<std::size_t>(i)] = run(configs[static_cast<std::size_t>(i)]);
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  return results;
}

std::vector<SimStats> sweep(const SimConfig& base, SweepParam param, const std::vector<SweepValue>& values) {
  return run_all(expand(base, param, values));
}

std::vector<SimStats> sweep_serial(const SimConfig& base, SweepParam param, const std::vector<SweepValue>& values) {
  std::vector<SimStats> results;
  for (const auto& config : expand(base, param, values)) results.push_back(run(config));
  return results;
}

}  // namespace closfab::sim
