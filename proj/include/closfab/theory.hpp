#pragma once

#include "closfab/fabric.hpp"

namespace closfab::theory {

/// Erlang-B loss probability for offered load `load` (Erlang) on `servers`
/// servers. Uses the recurrence B_k = a B_{k-1} / (k + a B_{k-1}), B_0 = 1,
/// which never forms factorials. Throws InvalidInput for negative or
/// non-finite load, or negative servers.
double erlang_b(double load, int servers);

/// Port-limited blocking bound: a request is lost only when its input or
/// output fiber has no free wavelength. The output fiber sees the load the
/// input stage lets through.
struct TheoreticalLimit {
  double load = 0.0;
  int wavelengths = 0;
  double input_blocking = 0.0;   // E_B(load, w)
  double output_blocking = 0.0;  // E_B(load * (1 - input_blocking), w)
  double blocking = 0.0;         // 1 - (1 - input)(1 - output)
};

/// Throws InvalidInput for negative load or wavelengths < 1.
TheoreticalLimit theoretical_limit(double load, int wavelengths);

struct SnbThreshold {
  int fibers_per_degree = 0;
  int bound = 0;      // strict bound: M > bound guarantees spatial SNB
  int operating = 0;  // smallest M above the bound, 2L
};

/// Spatially strictly non-blocking middle count for WSS Clos fabrics.
SnbThreshold snb_spatial_threshold(int fibers_per_degree);

/// Middle count at which a Clos fabric is rearrangeably non-blocking (M = L).
int rearrangeable_threshold(int fibers_per_degree);

/// Internal wavelengths a continuity-constrained Clos fabric needs to stay
/// strictly non-blocking with `port_wavelengths` per line port.
int wavelength_doubling_requirement(int port_wavelengths);

struct ComplexityReport {
  int degrees = 0;
  int fibers_per_degree = 0;
  int middles = 0;
  long long spanke_elements = 0;
  long long spanke_fibers = 0;
  long long clos_elements = 0;
  long long clos_fibers = 0;
  double element_savings = 0.0;  // 1 - clos/spanke
  double fiber_savings = 0.0;
};

/// Spanke s(D, L) against Clos v(M, L, D). Throws InvalidSpec.
ComplexityReport compare_complexity(int degrees, int fibers_per_degree, int middles);

}  // namespace closfab::theory
