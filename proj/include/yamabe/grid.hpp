#pragma once

// Conformally flat geometry g = u^2 * delta on the unit 4-torus, discretised on
// a periodic N^4 lattice with spacing h = 1/N.
//
// Delta always denotes the positive (geometer's) Laplacian d*d. The Yamabe
// operator of g is Box_g = 6 Delta_g + s_g; on the background it reduces to
// 6 Delta_delta since the flat torus has s = 0.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "yamabe/kernels.hpp"

namespace yamabe::confgrid {

using Field = std::vector<double>;
using Point = std::array<double, 4>;
using ScalarFunction = std::function<double(const Point&)>;

class ConformalGrid {
 public:
  /// Throws std::invalid_argument if n == 0, the size is not n^4 or some u <= 0.
  ConformalGrid(std::size_t n, Field u);

  static ConformalGrid flat(std::size_t n);
  static ConformalGrid from_function(std::size_t n, const ScalarFunction& u);

  std::size_t n() const { return lattice_.n; }
  std::size_t size() const { return lattice_.size(); }
  double spacing() const { return lattice_.spacing(); }
  const kernels::Lattice4& lattice() const { return lattice_; }
  std::span<const double> conformal_factor() const { return u_; }

  Point coordinate(std::size_t idx) const;
  Field sample(const ScalarFunction& fn) const;

  /// Nodal measure u^4 h^4 of g.
  Field volume_weights() const;

  /// Grid for (u v)^2 delta. Throws std::invalid_argument unless v > 0.
  ConformalGrid rescaled(std::span<const double> v) const;

 private:
  kernels::Lattice4 lattice_;
  Field u_;
};

/// Real field with a conformal weight w: under g -> v^2 g its values become v^w * values.
struct WeightedField {
  Field values;
  int weight = 0;
};

/// 6 Delta_delta phi with second-order central differences.
Field yamabe_operator_flat(const ConformalGrid& grid, std::span<const double> phi);

/// s_g = u^-3 * 6 Delta_delta u. Tagged with weight 0 (a plain function on g).
WeightedField scalar_curvature_of_conformal_metric(const ConformalGrid& grid);

/// Scalar curvature evaluated from the metric in log form,
/// s = 6 u^-2 (Delta w - |grad w|^2) with w = ln u and centred gradients.
/// Shares no stencil algebra with scalar_curvature_of_conformal_metric; the
/// two agree to O(h^2).
Field scalar_curvature_log_form(const ConformalGrid& grid);

/// Multiplies values by v^w pointwise; the weight tag is unchanged.
/// Throws std::invalid_argument unless v > 0 and sizes match.
WeightedField apply_conformal_rescale(const WeightedField& field, std::span<const double> v);

/// Box_g phi = u^-3 Box_delta(u phi), the conformal covariance law taken as
/// the definition of the curved operator.
Field yamabe_operator(const ConformalGrid& grid, std::span<const double> phi);

/// Delta_g phi = (Box_g phi - s_g phi) / 6 with Box_g from yamabe_operator.
Field laplace_beltrami(const ConformalGrid& grid, std::span<const double> phi);

/// Delta_g phi = -u^-4 div(u^2 grad phi) in flux form, independent of the
/// covariance law.
Field laplace_beltrami_flux(const ConformalGrid& grid, std::span<const double> phi);

}  // namespace yamabe::confgrid
