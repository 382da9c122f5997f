#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "yamabe/clifford.hpp"

using namespace yamabe::clifford;
namespace forms = yamabe::forms;

namespace {

SelfDualPoint random_point(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {{g(rng), g(rng), g(rng)}};
}

Eigen::Matrix2cd to_eigen(const SpinorEndomorphism& e) {
  Eigen::Matrix2cd m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = e(r, c);
  return m;
}

}  // namespace

TEST_CASE("basis forms are self-dual with norm sqrt 2") {
  for (int k = 0; k < 3; ++k) {
    SelfDualPoint p;
    p.a[static_cast<std::size_t>(k)] = 1.0;
    const forms::TwoForm w = p.to_two_form();
    const forms::TwoForm s = forms::hodge_star(w);
    for (std::size_t c = 0; c < 6; ++c) CHECK(s[c] == w[c]);
    CHECK(forms::norm_sq(w) == doctest::Approx(2.0));
    CHECK(p.norm_sq() == doctest::Approx(2.0));
  }
}

TEST_CASE("coordinates round-trip through two-forms and drop the anti-self-dual part") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const SelfDualPoint p = random_point(rng);
    forms::TwoForm w = p.to_two_form();
    forms::TwoForm asd;
    asd[forms::e12] = 0.7;
    asd[forms::e34] = -0.7;
    const SelfDualPoint q = SelfDualPoint::from_two_form(w + asd);
    for (std::size_t k = 0; k < 3; ++k) CHECK(q.a[k] == doctest::Approx(p.a[k]));
    CHECK(p.norm_sq() == doctest::Approx(forms::norm_sq(w)));
  }
}

TEST_CASE("eigenvalues against a general complex eigensolver") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 300; ++t) {
    const SelfDualPoint p = random_point(rng);
    const SpinorEndomorphism rho = clifford_action(p);
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(to_eigen(rho));
    std::array<Complex, 2> ref{es.eigenvalues()(0), es.eigenvalues()(1)};
    std::sort(ref.begin(), ref.end(), [](const Complex& a, const Complex& b) { return a.imag() < b.imag(); });
    const auto ev = eigenvalues(rho);
    const double mag = std::sqrt(2.0) * p.norm();
    for (int k = 0; k < 2; ++k) {
      CHECK(std::abs(ev[static_cast<std::size_t>(k)] - ref[static_cast<std::size_t>(k)]) <= 1e-12 * mag);
      CHECK(std::abs(ev[static_cast<std::size_t>(k)].real()) <= 1e-12 * mag);
    }
    CHECK(ev[1].imag() == doctest::Approx(mag).epsilon(1e-12));
  }
}

TEST_CASE("clifford action is skew-adjoint, traceless and squares to -2|w|^2") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const SelfDualPoint p = random_point(rng);
    const SpinorEndomorphism rho = clifford_action(p);
    CHECK((rho.adjoint() + rho).frobenius_norm() <= 1e-14 * (1.0 + p.norm()));
    CHECK(std::abs(rho.trace()) <= 1e-14 * (1.0 + p.norm()));
    const auto sq = rho * rho + Complex(2.0 * p.norm_sq()) * SpinorEndomorphism::identity();
    CHECK(sq.frobenius_norm() <= 1e-12 * (1.0 + p.norm_sq()));
  }
}

TEST_CASE("anticommutator identity") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 300; ++t) {
    const SelfDualPoint w = random_point(rng), v = random_point(rng);
    CHECK(anticommutator_check(w, v) <= 1e-12);
  }
}

TEST_CASE("weitzenboeck margin") {
  const std::vector<double> s{10.0, 20.0, 5.0};
  const std::vector<double> phi{0.0, 1.0, 0.1};
  const Margin m = weitzenboeck_margin(s, phi);
  const double c = 4.0 * std::numbers::pi * std::sqrt(2.0);
  CHECK(m.pointwise[1] == doctest::Approx(20.0 - c));
  CHECK(m.minimum == doctest::Approx(std::min({10.0, 20.0 - c, 5.0 - 0.1 * c})));
  CHECK_THROWS_AS(weitzenboeck_margin(s, std::vector<double>{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(weitzenboeck_margin(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);
}
