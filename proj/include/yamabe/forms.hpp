#pragma once

// Two-forms on the 4-torus in the coordinate basis
//   dx12, dx13, dx14, dx23, dx24, dx34   (dxij = dx^i ^ dx^j),
// with orientation dx^1 ^ dx^2 ^ dx^3 ^ dx^4 > 0. Reversing the orientation
// swaps the self-dual and anti-self-dual parts.
//
// On middle-degree forms in dimension 4 the Hodge star of g = u^2 delta equals
// the flat star, so every star below is the flat one.

#include <array>
#include <cstddef>

#include "yamabe/grid.hpp"

namespace yamabe::forms {

enum Component : std::size_t { e12 = 0, e13, e14, e23, e24, e34 };

/// Constant-coefficient 2-form at a point.
struct TwoForm {
  std::array<double, 6> c{};

  double operator[](std::size_t i) const { return c[i]; }
  double& operator[](std::size_t i) { return c[i]; }

  friend TwoForm operator+(const TwoForm& a, const TwoForm& b);
  friend TwoForm operator-(const TwoForm& a, const TwoForm& b);
  friend TwoForm operator*(double s, const TwoForm& a);
};

TwoForm hodge_star(const TwoForm& w);
TwoForm selfdual_part(const TwoForm& w);
TwoForm antiselfdual_part(const TwoForm& w);

/// |w|^2 for the flat metric (sum of squared coefficients).
double norm_sq(const TwoForm& w);

/// Coefficient of dx^1^dx^2^dx^3^dx^4 in a ^ b. On the unit torus this is the
/// cup pairing of the constant (hence harmonic) forms.
double wedge(const TwoForm& a, const TwoForm& b);

/// Six nodal component fields, ordered as Component.
struct TwoFormField {
  std::array<confgrid::Field, 6> components;

  static TwoFormField constant(const confgrid::ConformalGrid& grid, const TwoForm& w);
  std::size_t size() const { return components[0].size(); }
  TwoForm at(std::size_t node) const;
};

TwoFormField hodge_star_2form(const TwoFormField& omega, const confgrid::ConformalGrid& grid);

/// (omega + *omega) / 2.
TwoFormField selfdual_projection(const TwoFormField& omega);

/// |omega|_g = u^-2 |omega|_delta at each node, tagged with weight -2.
confgrid::WeightedField pointwise_norm_2form(const TwoFormField& omega, const confgrid::ConformalGrid& grid);

/// (sum_nodes |omega|_g^2 u^4 h^4)^(1/2). Conformally invariant: u^-4 from the
/// pointwise norm cancels u^4 from the measure.
double l2_norm_2form(const TwoFormField& omega, const confgrid::ConformalGrid& grid);

/// Decomposition of a harmonic class on the flat torus into its self-dual and
/// anti-self-dual parts together with the cup squares of each part.
struct HarmonicSplit {
  TwoForm plus;
  TwoForm minus;
  double plus_square = 0.0;   // (zeta+)^2 = integral of zeta+ ^ zeta+
  double minus_square = 0.0;  // (zeta-)^2, non-positive
  double cross = 0.0;         // integral of zeta+ ^ zeta-, zero
};

HarmonicSplit harmonic_split(const TwoForm& zeta);

/// Harmonic forms on the flat torus are the constant-coefficient ones.
TwoFormField harmonic_representative_torus(const confgrid::ConformalGrid& grid, const TwoForm& coeffs);

}  // namespace yamabe::forms
