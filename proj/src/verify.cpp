#include "yamabe/verify.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

#include "yamabe/catalog.hpp"
#include "yamabe/clifford.hpp"
#include "yamabe/forms.hpp"
#include "yamabe/lattice.hpp"
#include "yamabe/spectrum.hpp"

namespace yamabe::verify {

namespace {

using Outcome = std::pair<bool, std::string>;
using Case = std::pair<std::string, std::function<Outcome()>>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Check run_case(const Case& c) {
  const auto start = std::chrono::steady_clock::now();
  Check out;
  out.name = c.first;
  try {
    auto [ok, detail] = c.second();
    out.passed = ok;
    out.detail = std::move(detail);
  } catch (const std::exception& e) {
    out.passed = false;
    out.detail = std::string("exception: ") + e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// ---------------------------------------------------------------- constants

std::vector<Case> constants_cases() {
  std::vector<Case> cases;
  cases.emplace_back("cp2-fubini-study", [] {
    const ClosedForm y = catalog::fubini_study_quotient();
    const double expected = 12.0 * std::numbers::sqrt2 * std::numbers::pi;
    const bool ok = y == ClosedForm::pi_sqrt(12, 2) && rel(y.value(), expected) <= 1e-12;
    return Outcome{ok, y.symbolic() + " = " + fmt(y.value())};
  });
  cases.emplace_back("s4-aubin", [] {
    const ClosedForm y = catalog::sphere4_value();
    const double expected = 8.0 * std::sqrt(6.0) * std::numbers::pi;
    const bool ok = y == ClosedForm::pi_sqrt(8, 6) && rel(y.value(), expected) <= 1e-12 &&
                    rel(catalog::aubin_sphere_value(4), expected) <= 1e-12;
    return Outcome{ok, y.symbolic() + " = " + fmt(y.value())};
  });
  cases.emplace_back("cp2-sum-table", [] {
    const ClosedForm lo = ClosedForm::pi_sqrt(12, 2);
    const ClosedForm s4 = catalog::sphere4_value();
    for (int k = 1; k <= 3; ++k) {
      const ClosedForm hi = ClosedForm::pi_sqrt(4, 2 * k + 16);
      for (int m = 0; m <= 5; ++m) {
        const catalog::Interval b = catalog::cp2_sum_bounds(k, m);
        if (!(b.lo == lo) || !(b.hi == hi) || compare(b.hi, s4) >= 0)
          return Outcome{false, "k=" + std::to_string(k) + " m=" + std::to_string(m) + ": [" +
                                    b.lo.symbolic() + ", " + b.hi.symbolic() + "]"};
      }
    }
    return Outcome{true, "18 rows, m-independent, every upper endpoint below 8*sqrt(6)*pi"};
  });
  cases.emplace_back("k1-exact", [] {
    const catalog::Interval b = catalog::cp2_sum_bounds(1, 3);
    return Outcome{b.exact() && b.lo == ClosedForm::pi_sqrt(12, 2), "[" + b.lo.symbolic() + ", " + b.hi.symbolic() + "]"};
  });
  cases.emplace_back("hopf-pair-distinct", [] {
    const auto [hopf, blowup] = catalog::hopf_comparison();
    const bool ok = hopf == ClosedForm::pi_sqrt(8, 6) && blowup == ClosedForm::pi_sqrt(12, 2) &&
                    compare(blowup, hopf) < 0;
    return Outcome{ok, hopf.symbolic() + " > " + blowup.symbolic()};
  });
  cases.emplace_back("sphere-volume-recursion", [] {
    // V_n = 2 pi / (n - 1) V_{n-2}, V_1 = 2 pi, V_2 = 4 pi.
    std::vector<double> v{0.0, kTwoPi, 2.0 * kTwoPi};
    for (int n = 3; n <= 8; ++n) v.push_back(kTwoPi / (n - 1) * v[static_cast<std::size_t>(n - 2)]);
    double worst = 0.0;
    for (int n = 3; n <= 8; ++n)
      worst = std::max(worst, rel(catalog::aubin_sphere_value(n),
                                  n * (n - 1) * std::pow(v[static_cast<std::size_t>(n)], 2.0 / n)));
    return Outcome{worst <= 1e-12, "max relative deviation " + fmt(worst)};
  });
  return cases;
}

// ---------------------------------------------------------------- lattice

// Smallest sum of squares of odd integers in [-bound, bound]^k above k.
lattice::Integer brute_min_square(int k, int bound) {
  lattice::Integer best = -1;
  std::vector<int> c(static_cast<std::size_t>(k), -bound);
  while (true) {
    lattice::Integer sq = 0;
    bool odd = true;
    for (int x : c) {
      odd = odd && (x % 2 != 0);
      sq += x * x;
    }
    if (odd && sq > k && (best < 0 || sq < best)) best = sq;
    std::size_t i = c.size();
    while (i > 0 && c[i - 1] == bound) c[--i] = -bound;
    if (i == 0) break;
    ++c[i - 1];
  }
  return best;
}

std::vector<Case> lattice_cases() {
  std::vector<Case> cases;
  for (int k = 1; k <= 3; ++k) {
    cases.emplace_back("min-square-rank-" + std::to_string(k), [k] {
      const auto w = lattice::min_characteristic_square(lattice::IntersectionForm::identity(static_cast<std::size_t>(k)));
      const lattice::Integer brute = brute_min_square(k, 5);
      const bool ok = w.square == 8 + k && brute == w.square &&
                      lattice::dirac_index(w.eta, lattice::IntersectionForm::identity(static_cast<std::size_t>(k))) == 1;
      return Outcome{ok, "eta^2 = " + std::to_string(w.square) + ", brute force " + std::to_string(brute)};
    });
  }
  cases.emplace_back("congruence-rank-le-6", [] {
    std::size_t forms = 0, vectors = 0;
    for (std::size_t r = 1; r <= 6; ++r) {
      for (std::size_t neg = 0; neg <= r; ++neg) {
        std::vector<lattice::Integer> d(r, 1);
        std::fill(d.begin() + static_cast<std::ptrdiff_t>(r - neg), d.end(), -1);
        const auto q = lattice::IntersectionForm::diagonal(d);
        const lattice::Integer tau = static_cast<lattice::Integer>(r - neg) - static_cast<lattice::Integer>(neg);
        bool ok = true;
        std::size_t count = 0;
        lattice::for_each_characteristic(q, 3, [&](const lattice::CohomologyVector& eta) {
          ++count;
          lattice::Integer sq = 0;
          for (std::size_t i = 0; i < r; ++i) sq += d[i] * eta[i] * eta[i];
          if (((sq - tau) % 8 + 8) % 8 != 0) ok = false;
        });
        // Odd coordinates in [-3, 3]: four choices each.
        std::size_t expected = 1;
        for (std::size_t i = 0; i < r; ++i) expected *= 4;
        if (!ok || count != expected)
          return Outcome{false, "rank " + std::to_string(r) + ", b- = " + std::to_string(neg)};
        ++forms;
        vectors += count;
      }
    }
    // Even unimodular: the hyperbolic plane has characteristic vectors 2Z^2.
    const lattice::IntersectionForm h({{0, 1}, {1, 0}});
    bool ok = true;
    lattice::for_each_characteristic(h, 3, [&](const lattice::CohomologyVector& eta) {
      ok = ok && eta[0] % 2 == 0 && eta[1] % 2 == 0 && lattice::self_pairing(eta, h) % 8 == 0;
      ++vectors;
    });
    return Outcome{ok, std::to_string(forms + 1) + " forms, " + std::to_string(vectors) + " characteristic vectors"};
  });
  cases.emplace_back("signature-basis-invariant", [] {
    const auto q = lattice::IntersectionForm::diagonal({1, 1, -1});
    const auto p = lattice::change_basis(q, {{1, 2, 0}, {0, 1, 3}, {0, 0, 1}});
    const lattice::Inertia a = lattice::inertia(q), b = lattice::inertia(p);
    const bool ok = a.b_plus == b.b_plus && a.b_minus == b.b_minus && lattice::signature(p) == 1;
    return Outcome{ok, "signature " + std::to_string(lattice::signature(p))};
  });
  return cases;
}

// ---------------------------------------------------------------- covariance

std::vector<Case> covariance_cases() {
  std::vector<Case> cases;
  cases.emplace_back("residual-order-2", [] {
    const double r8 = covariance_residual(8), r16 = covariance_residual(16), r32 = covariance_residual(32);
    const double a = r8 / r16, b = r16 / r32;
    const bool ok = a >= 3.5 && a <= 4.5 && b >= 3.5 && b <= 4.5;
    return Outcome{ok, "residuals " + fmt(r8) + ", " + fmt(r16) + ", " + fmt(r32) + "; ratios " + fmt(a) + ", " + fmt(b)};
  });
  cases.emplace_back("flat-laplacian-symbol", [] {
    // 6 Delta cos(2 pi x1) on the grid equals 6 (2/h^2)(1 - cos(2 pi h)) cos(2 pi x1).
    const auto grid = confgrid::ConformalGrid::flat(8);
    const auto phi = grid.sample([](const confgrid::Point& x) { return std::cos(kTwoPi * x[0]); });
    const auto out = confgrid::yamabe_operator_flat(grid, phi);
    const double h = grid.spacing();
    const double symbol = 6.0 * 2.0 / (h * h) * (1.0 - std::cos(kTwoPi * h));
    double worst = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) worst = std::max(worst, std::abs(out[i] - symbol * phi[i]));
    return Outcome{worst <= 1e-9 * symbol, "max deviation " + fmt(worst)};
  });
  cases.emplace_back("curvature-routes-agree", [] {
    const auto grid = confgrid::ConformalGrid::from_function(
        16, [](const confgrid::Point& x) { return 1.0 + 0.2 * std::cos(kTwoPi * x[0]); });
    const auto s = confgrid::scalar_curvature_of_conformal_metric(grid).values;
    const auto t = confgrid::scalar_curvature_log_form(grid);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      worst = std::max(worst, std::abs(s[i] - t[i]));
      scale = std::max(scale, std::abs(s[i]));
    }
    return Outcome{worst <= 0.05 * scale, "max deviation " + fmt(worst) + " against |s| " + fmt(scale)};
  });
  return cases;
}

// ---------------------------------------------------------------- trichotomy

std::vector<Case> trichotomy_cases() {
  std::vector<Case> cases;
  for (double c : {0.5, 1.0, 2.0}) {
    cases.emplace_back("constant-shift-" + fmt(c), [c] {
      const auto grid = confgrid::ConformalGrid::flat(8);
      const auto op = spectrum::assemble(grid, {confgrid::Field(grid.size(), c), -2});
      const auto r = spectrum::lowest_eigenpair(op);
      const auto [lo, hi] = std::minmax_element(r.eigenfunction.begin(), r.eigenfunction.end());
      const bool ok = std::abs(r.lambda + c) <= 1e-10 && (*hi - *lo) <= 1e-8 * *hi;
      return Outcome{ok, "lambda = " + fmt(r.lambda)};
    });
  }
  for (int fv : {-1, 0, 1}) {
    cases.emplace_back("sign-invariance-f" + std::to_string(fv), [fv] {
      const std::size_t n = 8;
      const spectrum::Sign expected =
          fv < 0 ? spectrum::Sign::positive : (fv == 0 ? spectrum::Sign::zero : spectrum::Sign::negative);
      std::string signs;
      bool ok = true;
      for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const confgrid::ConformalGrid grid(n, random_conformal_factor(n, seed));
        const auto s = spectrum::trichotomy_sign(grid, {confgrid::Field(grid.size(), static_cast<double>(fv)), -2});
        signs += spectrum::to_string(s);
        ok = ok && s == expected;
      }
      return Outcome{ok, "signs " + signs};
    });
  }
  return cases;
}

// ---------------------------------------------------------------- algebra

std::vector<Case> algebra_cases() {
  std::vector<Case> cases;
  cases.emplace_back("clifford-eigenvalues", [] {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const clifford::SelfDualPoint w{{g(rng), g(rng), g(rng)}};
      const auto ev = clifford::eigenvalues(clifford::clifford_action(w));
      const double mag = std::sqrt(2.0) * w.norm();
      worst = std::max({worst, std::abs(ev[0] - clifford::Complex(0.0, -mag)) / mag,
                        std::abs(ev[1] - clifford::Complex(0.0, mag)) / mag});
    }
    return Outcome{worst <= 1e-12, "max relative deviation " + fmt(worst)};
  });
  cases.emplace_back("clifford-anticommutator", [] {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const clifford::SelfDualPoint w{{g(rng), g(rng), g(rng)}}, v{{g(rng), g(rng), g(rng)}};
      worst = std::max(worst, clifford::anticommutator_check(w, v));
    }
    return Outcome{worst <= 1e-12, "max Frobenius residual " + fmt(worst)};
  });
  cases.emplace_back("hodge-involution", [] {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g;
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      forms::TwoForm w;
      for (auto& c : w.c) c = g(rng);
      const forms::TwoForm back = forms::hodge_star(forms::hodge_star(w));
      const forms::TwoForm p = forms::selfdual_part(w);
      const forms::TwoForm m = forms::antiselfdual_part(w);
      worst = std::max({worst, forms::norm_sq(back - w), forms::norm_sq(forms::hodge_star(p) - p),
                        forms::norm_sq(forms::hodge_star(m) + m), std::abs(forms::wedge(p, m))});
    }
    return Outcome{worst <= 1e-24, "max squared defect " + fmt(worst)};
  });
  cases.emplace_back("l2-norm-conformal-invariance", [] {
    const std::size_t n = 8;
    forms::TwoForm w;
    w[forms::e12] = 1.0;
    w[forms::e34] = 1.0;
    w[forms::e13] = 0.5;
    w[forms::e24] = -0.5;
    const auto flat = confgrid::ConformalGrid::flat(n);
    const double ref = forms::l2_norm_2form(forms::TwoFormField::constant(flat, w), flat);
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const confgrid::ConformalGrid grid(n, random_conformal_factor(n, seed));
      worst = std::max(worst, rel(forms::l2_norm_2form(forms::TwoFormField::constant(grid, w), grid), ref));
    }
    return Outcome{worst <= 1e-12, "max relative deviation " + fmt(worst)};
  });
  return cases;
}

std::vector<Case> cases_for(const std::string& name) {
  if (name == "algebra") return algebra_cases();
  if (name == "constants") return constants_cases();
  if (name == "covariance") return covariance_cases();
  if (name == "lattice") return lattice_cases();
  if (name == "trichotomy") return trichotomy_cases();
  std::string known;
  for (const auto& s : suite_names()) known += (known.empty() ? "" : ", ") + s;
  throw std::out_of_range("verify: unknown suite '" + name + "' (known: " + known + ")");
}

}  // namespace

bool Report::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::vector<std::string> suite_names() { return {"algebra", "constants", "covariance", "lattice", "trichotomy"}; }

Report run_suite(const std::string& name, int jobs) {
  const std::vector<Case> cases = cases_for(name);
  Report report{name, std::vector<Check>(cases.size())};
  const int threads = std::max(1, std::min(jobs, static_cast<int>(cases.size())));
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long long i = 0; i < static_cast<long long>(cases.size()); ++i)
    report.checks[static_cast<std::size_t>(i)] = run_case(cases[static_cast<std::size_t>(i)]);
  return report;
}

nlohmann::json to_json(const Report& r, bool with_timings) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json j{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
    if (with_timings) j["seconds"] = c.seconds;
    checks.push_back(std::move(j));
  }
  return {{"suite", r.suite}, {"passed", r.passed()}, {"checks", std::move(checks)}};
}

confgrid::Field random_conformal_factor(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-0.2, 0.2), phase(0.0, kTwoPi);
  std::uniform_int_distribution<int> axis(0, 3);
  struct Mode {
    double a, p;
    int axis;
  };
  std::array<Mode, 3> modes{};
  for (auto& m : modes) m = {amp(rng), phase(rng), axis(rng)};
  return confgrid::ConformalGrid::flat(n).sample([&](const confgrid::Point& x) {
    double u = 1.0;
    for (const auto& m : modes) u += m.a * std::cos(kTwoPi * x[static_cast<std::size_t>(m.axis)] + m.p);
    return u;
  });
}

double covariance_residual(std::size_t n) {
  const auto grid = confgrid::ConformalGrid::from_function(
      n, [](const confgrid::Point& x) { return 1.0 + 0.2 * std::cos(kTwoPi * x[0]); });
  const auto phi = grid.sample([](const confgrid::Point& x) { return std::cos(kTwoPi * x[1]); });
  const confgrid::WeightedField zero{confgrid::Field(grid.size(), 0.0), -2};
  const auto direct = spectrum::assemble(grid, zero, spectrum::Assembly::direct_stencil).apply(phi);
  const auto covariant = confgrid::yamabe_operator(grid, phi);
  double worst = 0.0;
  for (std::size_t i = 0; i < direct.size(); ++i) worst = std::max(worst, std::abs(direct[i] - covariant[i]));
  return worst;
}

}  // namespace yamabe::verify
