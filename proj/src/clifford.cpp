#include "yamabe/clifford.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace yamabe::clifford {

double SelfDualPoint::norm_sq() const { return 2.0 * (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

double SelfDualPoint::norm() const { return std::sqrt(norm_sq()); }

SelfDualPoint SelfDualPoint::from_two_form(const forms::TwoForm& w) {
  return {{0.5 * (w[forms::e12] + w[forms::e34]), 0.5 * (w[forms::e13] - w[forms::e24]),
           0.5 * (w[forms::e14] + w[forms::e23])}};
}

forms::TwoForm SelfDualPoint::to_two_form() const {
  forms::TwoForm w;
  w[forms::e12] = a[0];
  w[forms::e34] = a[0];
  w[forms::e13] = a[1];
  w[forms::e24] = -a[1];
  w[forms::e14] = a[2];
  w[forms::e23] = a[2];
  return w;
}

double inner(const SelfDualPoint& w, const SelfDualPoint& v) {
  return 2.0 * (w.a[0] * v.a[0] + w.a[1] * v.a[1] + w.a[2] * v.a[2]);
}

SpinorEndomorphism SpinorEndomorphism::identity() {
  SpinorEndomorphism e;
  e(0, 0) = 1.0;
  e(1, 1) = 1.0;
  return e;
}

Complex SpinorEndomorphism::trace() const { return m[0] + m[3]; }

SpinorEndomorphism SpinorEndomorphism::adjoint() const {
  SpinorEndomorphism r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

double SpinorEndomorphism::frobenius_norm() const {
  double acc = 0.0;
  for (const auto& z : m) acc += std::norm(z);
  return std::sqrt(acc);
}

SpinorEndomorphism operator+(const SpinorEndomorphism& a, const SpinorEndomorphism& b) {
  SpinorEndomorphism r;
  for (std::size_t i = 0; i < 4; ++i) r.m[i] = a.m[i] + b.m[i];
  return r;
}

SpinorEndomorphism operator-(const SpinorEndomorphism& a, const SpinorEndomorphism& b) {
  SpinorEndomorphism r;
  for (std::size_t i = 0; i < 4; ++i) r.m[i] = a.m[i] - b.m[i];
  return r;
}

SpinorEndomorphism operator*(const SpinorEndomorphism& a, const SpinorEndomorphism& b) {
  SpinorEndomorphism r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
  return r;
}

SpinorEndomorphism operator*(Complex s, const SpinorEndomorphism& a) {
  SpinorEndomorphism r;
  for (std::size_t i = 0; i < 4; ++i) r.m[i] = s * a.m[i];
  return r;
}

SpinorEndomorphism clifford_action(const SelfDualPoint& w) {
  const Complex i{0.0, 1.0};
  const double a1 = w.a[0], a2 = w.a[1], a3 = w.a[2];
  // a1 s1 + a2 s2 + a3 s3 = [[a3, a1 - i a2], [a1 + i a2, -a3]]
  SpinorEndomorphism h;
  h(0, 0) = a3;
  h(0, 1) = Complex(a1, -a2);
  h(1, 0) = Complex(a1, a2);
  h(1, 1) = -a3;
  return (-2.0 * i) * h;
}

std::array<Complex, 2> eigenvalues(const SpinorEndomorphism& e) {
  const Complex tr = e.trace();
  const Complex det = e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  std::array<Complex, 2> ev{(tr - disc) / 2.0, (tr + disc) / 2.0};
  std::sort(ev.begin(), ev.end(), [](const Complex& x, const Complex& y) {
    return x.imag() != y.imag() ? x.imag() < y.imag() : x.real() < y.real();
  });
  return ev;
}

double anticommutator_check(const SelfDualPoint& w, const SelfDualPoint& v) {
  const SpinorEndomorphism rw = clifford_action(w), rv = clifford_action(v);
  const SpinorEndomorphism sum = rw * rv + rv * rw + Complex(4.0 * inner(w, v)) * SpinorEndomorphism::identity();
  return sum.frobenius_norm();
}

Margin weitzenboeck_margin(std::span<const double> s, std::span<const double> phi_plus_norm) {
  if (s.size() != phi_plus_norm.size()) throw std::invalid_argument("clifford: field shapes differ");
  if (s.empty()) throw std::invalid_argument("clifford: empty fields");
  const double c = 4.0 * std::numbers::pi * std::numbers::sqrt2;
  Margin out;
  out.pointwise.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out.pointwise[i] = s[i] - c * phi_plus_norm[i];
  out.minimum = *std::min_element(out.pointwise.begin(), out.pointwise.end());
  return out;
}

}  // namespace yamabe::clifford
