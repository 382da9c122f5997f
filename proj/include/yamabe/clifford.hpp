#pragma once

// Pointwise spin^c algebra on the rank-2 bundle V+.
//
// Self-dual 2-forms are written in the basis
//   w1 = dx12 + dx34,  w2 = dx13 - dx24,  w3 = dx14 + dx23,
// each of norm sqrt(2). V+ is modelled as C^2 with Clifford action
//   rho(a1 w1 + a2 w2 + a3 w3) = -2i (a1 s1 + a2 s2 + a3 s3)
// where s_k are the Pauli matrices. Only the eigenvalue magnitude
// sqrt(2)|w| is convention independent; the phase is a choice.

#include <array>
#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "yamabe/forms.hpp"

namespace yamabe::clifford {

using Complex = std::complex<double>;

struct SelfDualPoint {
  std::array<double, 3> a{};

  /// 2 (a1^2 + a2^2 + a3^2).
  double norm_sq() const;
  double norm() const;

  /// Self-dual part of an arbitrary 2-form, in the w1, w2, w3 basis.
  static SelfDualPoint from_two_form(const forms::TwoForm& w);
  forms::TwoForm to_two_form() const;
};

/// <w, w'> = 2 (a . a').
double inner(const SelfDualPoint& w, const SelfDualPoint& v);

/// 2x2 complex matrix, row-major.
struct SpinorEndomorphism {
  std::array<Complex, 4> m{};

  Complex operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }
  Complex& operator()(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }

  static SpinorEndomorphism identity();
  Complex trace() const;
  SpinorEndomorphism adjoint() const;
  double frobenius_norm() const;

  friend SpinorEndomorphism operator+(const SpinorEndomorphism& a, const SpinorEndomorphism& b);
  friend SpinorEndomorphism operator-(const SpinorEndomorphism& a, const SpinorEndomorphism& b);
  friend SpinorEndomorphism operator*(const SpinorEndomorphism& a, const SpinorEndomorphism& b);
  friend SpinorEndomorphism operator*(Complex s, const SpinorEndomorphism& a);
};

SpinorEndomorphism clifford_action(const SelfDualPoint& w);

/// Both roots of the characteristic polynomial, ordered by imaginary then real part.
std::array<Complex, 2> eigenvalues(const SpinorEndomorphism& e);

/// Frobenius norm of rho(w) rho(w') + rho(w') rho(w) + 4 <w, w'> Id.
double anticommutator_check(const SelfDualPoint& w, const SelfDualPoint& v);

struct Margin {
  std::vector<double> pointwise;  // s - 4 pi sqrt(2) |phi+|
  double minimum = 0.0;
};

/// Pointwise Weitzenbock margin. A strictly positive minimum rules out a
/// harmonic spinor for the spin^c structure with curvature -2 pi i phi.
/// Throws std::invalid_argument on a size mismatch or empty input.
Margin weitzenboeck_margin(std::span<const double> s, std::span<const double> phi_plus_norm);

}  // namespace yamabe::clifford
