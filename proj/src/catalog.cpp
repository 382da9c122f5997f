#include "yamabe/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "yamabe/lattice.hpp"

namespace yamabe::catalog {

namespace {

// Volume of the round unit n-sphere as (num/den) pi^p.
struct SphereVolume {
  long long num, den;
  int pi_power;
};

SphereVolume sphere_volume(int n) {
  switch (n) {
    case 3: return {2, 1, 2};
    case 4: return {8, 3, 2};
    case 5: return {1, 1, 3};
    case 6: return {16, 15, 3};
    case 7: return {1, 3, 4};
    case 8: return {32, 105, 4};
    default: throw std::invalid_argument("catalog: sphere volumes are tabulated for n in 3..8 only");
  }
}

void check_close(double a, double b, const char* what) {
  if (std::abs(a - b) > 1e-12 * std::max(std::abs(a), std::abs(b)))
    throw std::logic_error(std::string("catalog: routes disagree for ") + what);
}

const ClosedForm& min_of(const std::vector<ClosedForm>& v) {
  return *std::min_element(v.begin(), v.end(), [](const ClosedForm& a, const ClosedForm& b) {
    return compare(a, b) < 0;
  });
}

}  // namespace

double aubin_sphere_value(int n) {
  const SphereVolume v = sphere_volume(n);
  const double volume = static_cast<double>(v.num) / static_cast<double>(v.den) * std::pow(std::numbers::pi, v.pi_power);
  return n * (n - 1) * std::pow(volume, 2.0 / n);
}

ClosedForm sphere4_value() {
  // 4 * 3 * sqrt(V_4) with V_4 = 8 pi^2 / 3, i.e. 12 pi sqrt(24) / 3.
  const ClosedForm value = ClosedForm(12, 3, 1, 24);
  check_close(value.value(), aubin_sphere_value(4), "Y(S^4)");
  return value;
}

ClosedForm fubini_study_quotient() {
  // s = 24, Vol = pi^2/2, sqrt(Vol) = pi sqrt(2) / 2.
  return ClosedForm(24, 1, 0, 1) * ClosedForm(1, 2, 1, 2);
}

ClosedForm eta_bound(long long eta_sq) {
  if (eta_sq <= 0) throw std::invalid_argument("catalog: eta^2 must be positive");
  return ClosedForm(4, 1, 1, 2 * eta_sq);
}

Interval cp2_sum_bounds(int k, int m) {
  if (k < 1 || k > 3) throw std::invalid_argument("catalog: k must be in 1..3");
  if (m < 0) throw std::invalid_argument("catalog: m must be non-negative");

  // Lower endpoint: every summand has non-negative Yamabe invariant, CP^2 at
  // least the Fubini-Study quotient and S^1 x S^3 equal to Y(S^4).
  std::vector<ClosedForm> summands(static_cast<std::size_t>(k), fubini_study_quotient());
  summands.insert(summands.end(), static_cast<std::size_t>(m), sphere4_value());
  std::vector<double> values;
  for (const auto& s : summands) values.push_back(s.value());
  const ClosedForm lo = min_of(summands);
  check_close(lo.value(), lattice::kobayashi_lower_bound(values), "connected-sum lower bound");

  // Upper endpoint: minimal characteristic square on the rank-k definite form.
  const auto witness = lattice::min_characteristic_square(lattice::IntersectionForm::identity(static_cast<std::size_t>(k)));
  ClosedForm hi = eta_bound(witness.square);
  check_close(hi.value(), lattice::upper_bound_from_eta_sq(witness.square), "characteristic upper bound");
  if (compare(hi, ClosedForm(4, 1, 1, 2LL * k + 16)) != 0)
    throw std::logic_error("catalog: characteristic bound differs from 4 pi sqrt(2k + 16)");
  if (compare(sphere4_value(), hi) < 0) hi = sphere4_value();
  return {lo, hi};
}

std::pair<ClosedForm, ClosedForm> hopf_comparison() {
  const ClosedForm hopf = sphere4_value();
  const ClosedForm blowup = cp2_sum_bounds(1, 1).lo;
  if (compare(hopf, blowup) == 0) throw std::logic_error("catalog: Hopf surface and its blow-up coincide");
  return {hopf, blowup};
}

std::vector<std::string> names() {
  return {"cp2", "hopf", "hopf-blowup", "hopf-blowup-pair", "s1xs3", "s4"};
}

std::vector<CatalogEntry> lookup(const std::string& name) {
  const ClosedForm s4 = sphere4_value();
  if (name == "s4") return {{"S4", {s4, s4}, "Aubin: Y(S^n) = n(n-1) V_n^(2/n)"}};
  if (name == "s1xs3") return {{"S1xS3", {s4, s4}, "Kobayashi, Schoen: Y(S^1 x X) = Y(S^4) for spherical space forms X"}};
  if (name == "hopf") return {{"Hopf surface", {s4, s4}, "diffeomorphic to S^1 x S^3; Y(S^1 x S^3) = Y(S^4)"}};
  if (name == "cp2") {
    const Interval b = cp2_sum_bounds(1, 0);
    return {{"CP2", b, "Fubini-Study quotient (lower); characteristic class eta^2 = 9 (upper)"}};
  }
  if (name == "hopf-blowup") {
    const Interval b = cp2_sum_bounds(1, 1);
    return {{"Hopf surface blow-up", b, "diffeomorphic to CP2 # (S1xS3); connected-sum and characteristic bounds"}};
  }
  if (name == "hopf-blowup-pair") {
    const auto [hopf, blowup] = hopf_comparison();
    return {{"Hopf surface", {hopf, hopf}, "Y(S^1 x S^3) = Y(S^4)"},
            {"Hopf surface blow-up", {blowup, blowup}, "Y(CP2 # (S1xS3)) = Y(CP2)"}};
  }
  std::string known;
  for (const auto& n : names()) known += (known.empty() ? "" : ", ") + n;
  throw std::out_of_range("catalog: unknown manifold '" + name + "' (known: " + known + ")");
}

nlohmann::json to_json(const CatalogEntry& e) {
  return {{"name", e.name},
          {"lower", e.value.lo.value()},
          {"upper", e.value.hi.value()},
          {"lower_symbolic", e.value.lo.symbolic()},
          {"upper_symbolic", e.value.hi.symbolic()},
          {"exact", e.value.exact()},
          {"provenance", e.provenance}};
}

}  // namespace yamabe::catalog
