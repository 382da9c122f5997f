#pragma once

// Closed-form Yamabe constants and the bound intervals assembled from them.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "yamabe/closed_form.hpp"

namespace yamabe::catalog {

struct Interval {
  ClosedForm lo;
  ClosedForm hi;

  bool exact() const { return compare(lo, hi) == 0; }
};

struct CatalogEntry {
  std::string name;
  Interval value;
  std::string provenance;
};

/// n(n-1) V_n^(2/n) for the round unit n-sphere, n in 3..8.
/// Throws std::invalid_argument otherwise.
double aubin_sphere_value(int n);

/// Y(S^4) = 8 sqrt(6) pi.
ClosedForm sphere4_value();

/// Normalised total scalar curvature of the Fubini-Study metric:
/// s sqrt(Vol) with s = 24 and Vol = pi^2 / 2.
ClosedForm fubini_study_quotient();

/// 4 pi sqrt(2 eta^2) as an exact value.
ClosedForm eta_bound(long long eta_sq);

/// Bounds for k CP^2 # m (S^1 x S^3), k in 1..3. The lower endpoint comes from
/// the connected-sum inequality over the summands, the upper endpoint from the
/// minimal characteristic square of the rank-k diagonal form; both are checked
/// against their closed forms (std::logic_error on disagreement).
Interval cp2_sum_bounds(int k, int m);

/// (Y(S^1 x S^3), Y(CP^2 # (S^1 x S^3))): the Hopf surface and its blow-up.
/// Throws std::logic_error if the two coincide.
std::pair<ClosedForm, ClosedForm> hopf_comparison();

/// Named records accepted by lookup().
std::vector<std::string> names();

/// Rows for a named record; "hopf-blowup-pair" yields two. Throws
/// std::out_of_range listing the known names when `name` is unknown.
std::vector<CatalogEntry> lookup(const std::string& name);

nlohmann::json to_json(const CatalogEntry& e);

}  // namespace yamabe::catalog
