#pragma once

// Self-checking suites run by `yamabe_lab verify <suite>`.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "yamabe/grid.hpp"

namespace yamabe::verify {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;

  bool passed() const;
};

/// algebra, constants, covariance, lattice, trichotomy.
std::vector<std::string> suite_names();

/// Runs the named suite. Independent cases run on up to `jobs` threads and
/// are reported in a fixed order. Throws std::out_of_range for an unknown name.
Report run_suite(const std::string& name, int jobs = 1);

/// Timings are left out by default so that repeated runs serialise identically.
nlohmann::json to_json(const Report& r, bool with_timings = false);

/// 1 + sum of three low Fourier modes with seeded amplitudes, bounded below by 0.4.
confgrid::Field random_conformal_factor(std::size_t n, std::uint64_t seed);

/// Largest |A phi - Box_g phi| over the grid, where A is the direct-stencil
/// operator and Box_g the covariance one, for u = 1 + 0.2 cos(2 pi x1) and
/// phi = cos(2 pi x2).
double covariance_residual(std::size_t n);

}  // namespace yamabe::verify
