#pragma once

// Lowest eigenpair of the perturbed Yamabe Laplacian
//
//   Diamond_g = 6 Delta_g + s_g - f_g,
//
// where f is a function of conformal weight -2. A perturbation is stored by
// its values f_delta in the flat frame; on g = u^2 delta it acts as
// f_g = u^-2 f_delta.
//
// Every assembly is written as Diamond_g = M^-1 K with K symmetric and
// M = diag(u^4), so Diamond_g is self-adjoint in L^2(g) with nodal measure
// u^4 h^4.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "yamabe/grid.hpp"

namespace yamabe::spectrum {

using confgrid::ConformalGrid;
using confgrid::Field;
using confgrid::WeightedField;

enum class Assembly {
  /// Diamond_g phi = u^-3 Diamond_delta(u phi): the covariance law is the definition.
  covariance,
  /// Flux-form Laplace-Beltrami plus log-form scalar curvature; agrees with
  /// the covariance assembly to O(h^2).
  direct_stencil,
};

enum class Sign { negative = -1, zero = 0, positive = 1 };

std::string to_string(Sign s);

struct SolverConfig {
  double tol = 1e-10;           // residual target for lowest_eigenpair
  int max_iterations = 200;     // outer inverse-power iterations
  int max_cg_iterations = 20000;
  double shift_margin = 1.0;    // shift sits this far below the potential bound
  double zero_band_factor = 10.0;
  std::optional<double> zero_band;  // absolute band; overrides the h^2 rule
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;

  /// Reads the known keys; unknown keys or bad types throw std::invalid_argument
  /// naming the offending field.
  static SolverConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

class PerturbedOperator {
 public:
  PerturbedOperator(ConformalGrid grid, Field kinetic_coeff, Field potential, Assembly route,
                    std::vector<double> f_delta);

  const ConformalGrid& grid() const { return grid_; }
  Assembly route() const { return route_; }
  std::span<const double> perturbation() const { return f_delta_; }

  /// Diamond_g psi.
  Field apply(std::span<const double> psi) const;
  /// K psi, the symmetric form of the operator.
  void apply_stiffness(std::span<const double> psi, std::span<double> out) const;
  /// Diagonal of M (u^4, without the h^4 factor).
  std::span<const double> mass() const { return mass_; }
  /// L^2(g) inner product.
  double inner(std::span<const double> a, std::span<const double> b) const;

  /// min_i potential_i / mass_i; a lower bound for the spectrum because the
  /// kinetic part is positive semi-definite.
  double spectrum_lower_bound() const;
  /// Gershgorin bound on the spectrum (induced infinity norm of M^-1 K).
  double spectrum_upper_bound() const;

 private:
  ConformalGrid grid_;
  Field kinetic_coeff_;  // covariance: u; direct: u^2 face weights
  Field potential_;      // diagonal part of K
  Field mass_;
  Assembly route_;
  Field f_delta_;
};

/// Builds Diamond_g = Box_g - u^-2 f. Throws std::invalid_argument unless f
/// has weight -2 and matches the grid.
PerturbedOperator assemble(const ConformalGrid& grid, const WeightedField& f,
                           Assembly route = Assembly::covariance);

struct SpectralResult {
  double lambda = 0.0;
  Field eigenfunction;  // positive, unit L^2(g) norm
  double residual = 0.0;  // ||Diamond psi - lambda psi|| / ||psi|| in L^2(g)
  int iterations = 0;
  double shift = 0.0;
};

/// Shifted inverse-power iteration with conjugate-gradient inner solves.
/// Throws ConvergenceError when max_iterations is exhausted and
/// PositivityError if the ground state has a non-positive node.
SpectralResult lowest_eigenpair(const PerturbedOperator& op, const SolverConfig& config = {});

/// Zero band for grid spacing h: config.zero_band if set, else
/// zero_band_factor * h^2 * (1 + |lambda|).
double zero_band(double lambda, double h, const SolverConfig& config);
Sign classify(double lambda, double h, const SolverConfig& config);

/// s_g - f_g = Diamond_g(1).
Field modified_scalar_curvature(const ConformalGrid& grid, const WeightedField& f,
                                Assembly route = Assembly::covariance);

struct NormalizedMetric {
  ConformalGrid grid;             // u_new = u * psi
  Sign sign = Sign::zero;
  SpectralResult spectral;
  Field modified_scalar_curvature;  // lambda / psi^2
};

/// Rescales g by the square of its ground state, after which the modified
/// scalar curvature lambda psi^-2 has the constant sign of lambda.
NormalizedMetric conformal_normalize(const ConformalGrid& grid, const WeightedField& f,
                                     const SolverConfig& config = {}, Assembly route = Assembly::covariance);

Sign trichotomy_sign(const ConformalGrid& grid, const WeightedField& f, const SolverConfig& config = {},
                     Assembly route = Assembly::covariance);

/// Normalised total scalar curvature of trial^2 g,
///   <Box_g w, w>_g / (integral of w^4 dmu_g)^(1/2).
/// Throws std::invalid_argument unless trial > 0.
double yamabe_quotient(const ConformalGrid& grid, std::span<const double> trial);

struct DescentResult {
  double estimate = 0.0;       // minimum quotient reached
  std::vector<double> trace;   // quotient after each accepted step, non-increasing
  Field minimizer;             // trial function achieving the estimate
};

/// Gradient descent on yamabe_quotient with the quartic normalisation fixed
/// after every step. step <= 0 picks 1 / spectrum bound. Steps that lose
/// positivity or raise the quotient are halved; positivity lost at every
/// step size throws std::runtime_error.
DescentResult yamabe_constant_estimate(const ConformalGrid& grid, int iterations, double step = 0.0,
                                       std::optional<Field> initial = std::nullopt);

nlohmann::json to_json(const SpectralResult& r, std::size_t n, Sign sign);

}  // namespace yamabe::spectrum
