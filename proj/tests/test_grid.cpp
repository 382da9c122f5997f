#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "yamabe/grid.hpp"

using namespace yamabe::confgrid;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double u_bump(const Point& x) { return 1.0 + 0.2 * std::cos(kTwoPi * x[0]); }

// s = u^-3 6 Delta u for u = 1 + 0.2 cos(2 pi x1), continuum value.
double s_exact(const Point& x) {
  const double u = u_bump(x);
  return 6.0 * kTwoPi * kTwoPi * 0.2 * std::cos(kTwoPi * x[0]) / (u * u * u);
}

template <typename Fn>
double max_error(const ConformalGrid& g, const Field& got, Fn&& exact) {
  double err = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) err = std::max(err, std::abs(got[i] - exact(g.coordinate(i))));
  return err;
}

}  // namespace

TEST_CASE("grid construction validates the conformal factor") {
  CHECK_THROWS_AS(ConformalGrid(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(ConformalGrid(2, Field(15, 1.0)), std::invalid_argument);
  Field u(16, 1.0);
  u[3] = 0.0;
  CHECK_THROWS_AS(ConformalGrid(2, u), std::invalid_argument);
  const auto g = ConformalGrid::flat(4);
  CHECK(g.size() == 256);
  CHECK(g.spacing() == 0.25);
  const Point p = g.coordinate(g.lattice().index(1, 2, 3, 0));
  CHECK(p[0] == 0.25);
  CHECK(p[1] == 0.5);
  CHECK(p[2] == 0.75);
  CHECK(p[3] == 0.0);
}

TEST_CASE("volume weights sum to the g-volume") {
  const auto flat = ConformalGrid::flat(6);
  double vol = 0.0;
  for (double w : flat.volume_weights()) vol += w;
  CHECK(vol == doctest::Approx(1.0).epsilon(1e-12));
  const auto g = ConformalGrid::from_function(8, [](const Point&) { return 2.0; });
  vol = 0.0;
  for (double w : g.volume_weights()) vol += w;
  CHECK(vol == doctest::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("constant rescaling of the flat torus has zero curvature") {
  const auto g = ConformalGrid::from_function(6, [](const Point&) { return 1.7; });
  for (double s : scalar_curvature_of_conformal_metric(g).values) CHECK(s == doctest::Approx(0.0));
  for (double s : scalar_curvature_log_form(g)) CHECK(std::abs(s) < 1e-12);
}

TEST_CASE("scalar curvature converges at second order along both routes") {
  double prev_a = 0.0, prev_b = 0.0;
  for (std::size_t n : {8u, 16u, 32u}) {
    const auto g = ConformalGrid::from_function(n, u_bump);
    const WeightedField s = scalar_curvature_of_conformal_metric(g);
    CHECK(s.weight == 0);
    const double ea = max_error(g, s.values, s_exact);
    const double eb = max_error(g, scalar_curvature_log_form(g), s_exact);
    if (prev_a > 0.0) {
      CHECK(prev_a / ea == doctest::Approx(4.0).epsilon(0.1));
      CHECK(prev_b / eb == doctest::Approx(4.0).epsilon(0.15));
    }
    prev_a = ea;
    prev_b = eb;
  }
}

TEST_CASE("covariance law holds exactly on the grid") {
  const auto g = ConformalGrid::from_function(6, u_bump);
  const Field phi = g.sample([](const Point& x) { return std::sin(kTwoPi * x[1]) + 0.3; });
  const Field box = yamabe_operator(g, phi);
  const auto u = g.conformal_factor();
  Field uphi(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) uphi[i] = u[i] * phi[i];
  const Field flat = yamabe_operator_flat(g, uphi);
  for (std::size_t i = 0; i < phi.size(); ++i) CHECK(box[i] == doctest::Approx(flat[i] / (u[i] * u[i] * u[i])));
}

TEST_CASE("both Laplace-Beltrami discretisations converge to each other") {
  double prev = 0.0;
  for (std::size_t n : {8u, 16u, 32u}) {
    const auto g = ConformalGrid::from_function(n, u_bump);
    const Field phi = g.sample([](const Point& x) { return std::cos(kTwoPi * x[0]) * std::cos(kTwoPi * x[3]); });
    const Field a = laplace_beltrami(g, phi), b = laplace_beltrami_flux(g, phi);
    double err = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
    if (prev > 0.0) CHECK(prev / err > 3.0);
    prev = err;
  }
}

TEST_CASE("laplace-beltrami annihilates constants") {
  const auto g = ConformalGrid::from_function(6, u_bump);
  const Field ones(g.size(), 1.0);
  for (double v : laplace_beltrami(g, ones)) CHECK(std::abs(v) < 1e-9);
  for (double v : laplace_beltrami_flux(g, ones)) CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("weighted rescaling composes multiplicatively") {
  const auto g = ConformalGrid::flat(4);
  const Field v = g.sample([](const Point& x) { return 1.5 + std::sin(kTwoPi * x[2]); });
  const Field w = g.sample([](const Point& x) { return 1.2 + 0.5 * std::cos(kTwoPi * x[0]); });
  const WeightedField f{g.sample([](const Point& x) { return x[1] - 0.3; }), -2};
  const WeightedField once = apply_conformal_rescale(apply_conformal_rescale(f, v), w);
  Field vw(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) vw[i] = v[i] * w[i];
  const WeightedField both = apply_conformal_rescale(f, vw);
  CHECK(once.weight == -2);
  for (std::size_t i = 0; i < vw.size(); ++i) CHECK(once.values[i] == doctest::Approx(both.values[i]));
  Field bad = v;
  bad[0] = -1.0;
  CHECK_THROWS_AS(apply_conformal_rescale(f, bad), std::invalid_argument);
}

TEST_CASE("rescaled grid multiplies conformal factors") {
  const auto g = ConformalGrid::from_function(4, u_bump);
  const Field v(g.size(), 2.0);
  const auto r = g.rescaled(v);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(r.conformal_factor()[i] == 2.0 * g.conformal_factor()[i]);
  CHECK_THROWS_AS(g.rescaled(Field(g.size(), 0.0)), std::invalid_argument);
}
