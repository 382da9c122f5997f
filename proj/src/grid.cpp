#include "yamabe/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace yamabe::confgrid {

namespace {

void require_positive(std::span<const double> v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!(v[i] > 0.0))
      throw std::invalid_argument(std::string(what) + " must be positive (node " + std::to_string(i) +
                                  " has " + std::to_string(v[i]) + ")");
}

void require_size(const ConformalGrid& grid, std::size_t got) {
  if (got != grid.size()) throw std::invalid_argument("confgrid: field size does not match the grid");
}

template <typename Fn>
void for_nodes(std::size_t size, Fn&& fn) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(size); ++i) fn(static_cast<std::size_t>(i));
}

}  // namespace

ConformalGrid::ConformalGrid(std::size_t n, Field u) : lattice_{n}, u_(std::move(u)) {
  if (n == 0) throw std::invalid_argument("confgrid: grid needs at least one node per axis");
  if (u_.size() != lattice_.size())
    throw std::invalid_argument("confgrid: conformal factor has " + std::to_string(u_.size()) +
                                " values, expected " + std::to_string(lattice_.size()));
  require_positive(u_, "confgrid: conformal factor");
}

ConformalGrid ConformalGrid::flat(std::size_t n) {
  return ConformalGrid(n, Field(n * n * n * n, 1.0));
}

ConformalGrid ConformalGrid::from_function(std::size_t n, const ScalarFunction& u) {
  ConformalGrid probe = flat(n);
  return ConformalGrid(n, probe.sample(u));
}

Point ConformalGrid::coordinate(std::size_t idx) const {
  const auto c = lattice_.coords(idx);
  const double h = spacing();
  return {static_cast<double>(c[0]) * h, static_cast<double>(c[1]) * h, static_cast<double>(c[2]) * h,
          static_cast<double>(c[3]) * h};
}

Field ConformalGrid::sample(const ScalarFunction& fn) const {
  Field out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(coordinate(i));
  return out;
}

Field ConformalGrid::volume_weights() const {
  const double h = spacing();
  const double h4 = h * h * h * h;
  Field w(size());
  for_nodes(size(), [&](std::size_t i) {
    const double u2 = u_[i] * u_[i];
    w[i] = u2 * u2 * h4;
  });
  return w;
}

ConformalGrid ConformalGrid::rescaled(std::span<const double> v) const {
  require_size(*this, v.size());
  require_positive(v, "confgrid: rescaling factor");
  Field u(size());
  for_nodes(size(), [&](std::size_t i) { u[i] = u_[i] * v[i]; });
  return ConformalGrid(n(), std::move(u));
}

Field yamabe_operator_flat(const ConformalGrid& grid, std::span<const double> phi) {
  require_size(grid, phi.size());
  Field out(grid.size());
  kernels::omp::laplacian(grid.lattice(), phi, out, 6.0);
  return out;
}

WeightedField scalar_curvature_of_conformal_metric(const ConformalGrid& grid) {
  const auto u = grid.conformal_factor();
  Field s = yamabe_operator_flat(grid, u);
  for_nodes(grid.size(), [&](std::size_t i) { s[i] /= u[i] * u[i] * u[i]; });
  return {std::move(s), 0};
}

Field scalar_curvature_log_form(const ConformalGrid& grid) {
  const auto u = grid.conformal_factor();
  Field w(grid.size());
  for_nodes(grid.size(), [&](std::size_t i) { w[i] = std::log(u[i]); });
  Field lap(grid.size()), grad_sq(grid.size());
  kernels::omp::laplacian(grid.lattice(), w, lap, 1.0);
  kernels::omp::centred_gradient_sq(grid.lattice(), w, grad_sq);
  Field s(grid.size());
  for_nodes(grid.size(), [&](std::size_t i) { s[i] = 6.0 * (lap[i] - grad_sq[i]) / (u[i] * u[i]); });
  return s;
}

WeightedField apply_conformal_rescale(const WeightedField& field, std::span<const double> v) {
  if (v.size() != field.values.size())
    throw std::invalid_argument("confgrid: rescaling factor size does not match the field");
  require_positive(v, "confgrid: rescaling factor");
  WeightedField out{Field(field.values.size()), field.weight};
  for_nodes(v.size(), [&](std::size_t i) { out.values[i] = field.values[i] * std::pow(v[i], field.weight); });
  return out;
}

Field yamabe_operator(const ConformalGrid& grid, std::span<const double> phi) {
  require_size(grid, phi.size());
  const auto u = grid.conformal_factor();
  Field uphi(grid.size());
  for_nodes(grid.size(), [&](std::size_t i) { uphi[i] = u[i] * phi[i]; });
  Field out = yamabe_operator_flat(grid, uphi);
  for_nodes(grid.size(), [&](std::size_t i) { out[i] /= u[i] * u[i] * u[i]; });
  return out;
}

Field laplace_beltrami(const ConformalGrid& grid, std::span<const double> phi) {
  Field box = yamabe_operator(grid, phi);
  const WeightedField s = scalar_curvature_of_conformal_metric(grid);
  for_nodes(grid.size(), [&](std::size_t i) { box[i] = (box[i] - s.values[i] * phi[i]) / 6.0; });
  return box;
}

Field laplace_beltrami_flux(const ConformalGrid& grid, std::span<const double> phi) {
  require_size(grid, phi.size());
  const auto u = grid.conformal_factor();
  Field u2(grid.size());
  for_nodes(grid.size(), [&](std::size_t i) { u2[i] = u[i] * u[i]; });
  Field out(grid.size());
  kernels::omp::flux_laplacian(grid.lattice(), u2, phi, out, 1.0);
  for_nodes(grid.size(), [&](std::size_t i) { out[i] /= u2[i] * u2[i]; });
  return out;
}

}  // namespace yamabe::confgrid
