#include "closfab/theory.hpp"

#include <cmath>
#include <string>

namespace closfab::theory {

double erlang_b(double load, int servers) {
  if (!std::isfinite(load) || load < 0.0) throw InvalidInput("offered load must be finite and >= 0");
  if (servers < 0) throw InvalidInput("server count must be >= 0");
  double b = 1.0;
  for (int k = 1; k <= servers; ++k) b = load * b / (k + load * b);
  return b;
}

TheoreticalLimit theoretical_limit(double load, int wavelengths) {
  if (wavelengths < 1) throw InvalidInput("need at least 1 wavelength");
  TheoreticalLimit out;
  out.load = load;
  out.wavelengths = wavelengths;
  out.input_blocking = erlang_b(load, wavelengths);
  out.output_blocking = erlang_b(load * (1.0 - out.input_blocking), wavelengths);
  out.blocking = 1.0 - (1.0 - out.input_blocking) * (1.0 - out.output_blocking);
  return out;
}

SnbThreshold snb_spatial_threshold(int fibers_per_degree) {
  if (fibers_per_degree < 1) throw InvalidInput("need at least 1 fiber per degree");
  return {fibers_per_degree, 2 * fibers_per_degree - 1, 2 * fibers_per_degree};
}

int rearrangeable_threshold(int fibers_per_degree) {
  if (fibers_per_degree < 1) throw InvalidInput("need at least 1 fiber per degree");
  return fibers_per_degree;
}

int wavelength_doubling_requirement(int port_wavelengths) {
  if (port_wavelengths < 1) throw InvalidInput("need at least 1 wavelength per port");
  return 2 * port_wavelengths;
}

ComplexityReport compare_complexity(int degrees, int fibers_per_degree, int middles) {
  const auto spanke = FabricSpec::spanke(degrees, fibers_per_degree, 1);
  const auto clos = FabricSpec::clos(middles, fibers_per_degree, degrees, 1);
  ComplexityReport r;
  r.degrees = degrees;
  r.fibers_per_degree = fibers_per_degree;
  r.middles = middles;
  r.spanke_elements = count_elements(spanke).total;
  r.spanke_fibers = count_fibers(spanke);
  r.clos_elements = count_elements(clos).total;
  r.clos_fibers = count_fibers(clos);
  r.element_savings = 1.0 - static_cast<double>(r.clos_elements) / static_cast<double>(r.spanke_elements);
  r.fiber_savings = 1.0 - static_cast<double>(r.clos_fibers) / static_cast<double>(r.spanke_fibers);
  return r;
}

}  // namespace closfab::theory
