#include "yamabe/forms.hpp"

#include <cmath>
#include <stdexcept>

namespace yamabe::forms {

namespace {

void require_grid(const TwoFormField& omega, const confgrid::ConformalGrid& grid) {
  for (const auto& comp : omega.components)
    if (comp.size() != grid.size()) throw std::invalid_argument("forms: 2-form field does not match the grid");
}

}  // namespace

TwoForm operator+(const TwoForm& a, const TwoForm& b) {
  TwoForm r;
  for (std::size_t i = 0; i < 6; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

TwoForm operator-(const TwoForm& a, const TwoForm& b) {
  TwoForm r;
  for (std::size_t i = 0; i < 6; ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}

TwoForm operator*(double s, const TwoForm& a) {
  TwoForm r;
  for (std::size_t i = 0; i < 6; ++i) r.c[i] = s * a.c[i];
  return r;
}

TwoForm hodge_star(const TwoForm& w) {
  // *dx12 = dx34, *dx13 = -dx24, *dx14 = dx23 and the star is an involution.
  TwoForm r;
  r[e12] = w[e34];
  r[e34] = w[e12];
  r[e13] = -w[e24];
  r[e24] = -w[e13];
  r[e14] = w[e23];
  r[e23] = w[e14];
  return r;
}

TwoForm selfdual_part(const TwoForm& w) { return 0.5 * (w + hodge_star(w)); }

TwoForm antiselfdual_part(const TwoForm& w) { return 0.5 * (w - hodge_star(w)); }

double norm_sq(const TwoForm& w) {
  double acc = 0.0;
  for (double v : w.c) acc += v * v;
  return acc;
}

double wedge(const TwoForm& a, const TwoForm& b) {
  return a[e12] * b[e34] + a[e34] * b[e12] - a[e13] * b[e24] - a[e24] * b[e13] + a[e14] * b[e23] +
         a[e23] * b[e14];
}

TwoFormField TwoFormField::constant(const confgrid::ConformalGrid& grid, const TwoForm& w) {
  TwoFormField f;
  for (std::size_t k = 0; k < 6; ++k) f.components[k].assign(grid.size(), w[k]);
  return f;
}

TwoForm TwoFormField::at(std::size_t node) const {
  TwoForm w;
  for (std::size_t k = 0; k < 6; ++k) w[k] = components[k][node];
  return w;
}

TwoFormField hodge_star_2form(const TwoFormField& omega, const confgrid::ConformalGrid& grid) {
  require_grid(omega, grid);
  TwoFormField r;
  r.components[e12] = omega.components[e34];
  r.components[e34] = omega.components[e12];
  r.components[e14] = omega.components[e23];
  r.components[e23] = omega.components[e14];
  r.components[e13] = omega.components[e24];
  r.components[e24] = omega.components[e13];
  for (double& v : r.components[e13]) v = -v;
  for (double& v : r.components[e24]) v = -v;
  return r;
}

TwoFormField selfdual_projection(const TwoFormField& omega) {
  TwoFormField r = omega;
  const std::size_t n = omega.size();
  for (std::size_t i = 0; i < n; ++i) {
    const TwoForm p = selfdual_part(omega.at(i));
    for (std::size_t k = 0; k < 6; ++k) r.components[k][i] = p[k];
  }
  return r;
}

confgrid::WeightedField pointwise_norm_2form(const TwoFormField& omega, const confgrid::ConformalGrid& grid) {
  require_grid(omega, grid);
  const auto u = grid.conformal_factor();
  confgrid::WeightedField out{confgrid::Field(grid.size()), -2};
  for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] = std::sqrt(norm_sq(omega.at(i))) / (u[i] * u[i]);
  return out;
}

double l2_norm_2form(const TwoFormField& omega, const confgrid::ConformalGrid& grid) {
  const confgrid::WeightedField f = pointwise_norm_2form(omega, grid);
  const confgrid::Field mu = grid.volume_weights();
  return std::sqrt(kernels::omp::weighted_dot(mu, f.values, f.values));
}

HarmonicSplit harmonic_split(const TwoForm& zeta) {
  HarmonicSplit s;
  s.plus = selfdual_part(zeta);
  s.minus = antiselfdual_part(zeta);
  s.plus_square = wedge(s.plus, s.plus);
  s.minus_square = wedge(s.minus, s.minus);
  s.cross = wedge(s.plus, s.minus);
  return s;
}

TwoFormField harmonic_representative_torus(const confgrid::ConformalGrid& grid, const TwoForm& coeffs) {
  return TwoFormField::constant(grid, coeffs);
}

}  // namespace yamabe::forms
