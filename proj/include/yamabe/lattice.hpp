#pragma once

// Exact arithmetic on intersection forms of closed oriented 4-manifolds.
//
// Only the free part of H^2(M, Z) is modelled. Every pairing is evaluated in
// checked 64-bit integers; an overflow raises std::overflow_error instead of
// wrapping.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace yamabe::lattice {

using Integer = std::int64_t;

/// Symmetric unimodular integer matrix representing the cup product on free H^2.
class IntersectionForm {
 public:
  /// Throws std::invalid_argument unless `rows` is square, non-empty,
  /// symmetric and has determinant +1 or -1.
  explicit IntersectionForm(const std::vector<std::vector<Integer>>& rows);

  static IntersectionForm diagonal(const std::vector<Integer>& entries);
  static IntersectionForm identity(std::size_t rank);

  std::size_t rank() const { return rank_; }
  Integer operator()(std::size_t i, std::size_t j) const { return entries_[i * rank_ + j]; }
  bool is_diagonal() const;
  bool is_positive_definite_diagonal() const;
  std::vector<std::vector<Integer>> rows() const;

  friend bool operator==(const IntersectionForm&, const IntersectionForm&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<Integer> entries_;
};

/// Free-part coordinates of a class in H^2(M, Z).
struct CohomologyVector {
  std::vector<Integer> coords;

  CohomologyVector() = default;
  explicit CohomologyVector(std::vector<Integer> c) : coords(std::move(c)) {}
  CohomologyVector(std::initializer_list<Integer> c) : coords(c) {}

  std::size_t size() const { return coords.size(); }
  Integer operator[](std::size_t i) const { return coords[i]; }

  friend bool operator==(const CohomologyVector&, const CohomologyVector&) = default;
  friend auto operator<=>(const CohomologyVector&, const CohomologyVector&) = default;
};

struct Inertia {
  std::size_t b_plus = 0;
  std::size_t b_minus = 0;
  std::size_t nullity = 0;
};

/// Topological summary used by the bound tables. `form` holds the definite
/// part of the intersection form when it is known.
struct ManifoldDescriptor {
  std::string name;
  Integer b_plus = 0;
  Integer b_minus = 0;
  std::optional<IntersectionForm> form;
  Integer handles_m = 0;  // number of S^1 x S^3 summands
  Integer cp2_k = 0;      // number of CP^2 summands

  /// Throws std::invalid_argument when the Betti numbers disagree with `form`.
  void validate() const;
};

/// Descriptor of k CP^2 # m (S^1 x S^3): b+ = k, b- = 0, form = identity(k).
ManifoldDescriptor connected_sum_descriptor(Integer k, Integer m);

/// Determinant by fraction-free (Bareiss) elimination; throws on overflow.
Integer determinant(const std::vector<std::vector<Integer>>& rows);

/// Counts of positive, negative and zero diagonal entries after exact
/// congruence diagonalisation over the rationals.
Inertia inertia(const IntersectionForm& q);

/// b+ - b-.
Integer signature(const IntersectionForm& q);

/// True iff (Q eta)_i == Q_ii (mod 2) for every i, i.e. eta . x == x . x (mod 2)
/// for all x. Throws std::invalid_argument on a length mismatch.
bool is_characteristic(const CohomologyVector& eta, const IntersectionForm& q);

/// eta^T Q eta, exactly.
Integer self_pairing(const CohomologyVector& eta, const IntersectionForm& q);

/// Index (eta^2 - tau) / 8 of the spin^c Dirac operator whose determinant line
/// has first Chern class eta. Requires eta characteristic (std::invalid_argument
/// otherwise); a non-integral quotient is an internal invariant violation and
/// throws std::logic_error.
Integer dirac_index(const CohomologyVector& eta, const IntersectionForm& q);

struct CharacteristicWitness {
  Integer square = 0;
  CohomologyVector eta;
};

/// Calls `visit` for every characteristic vector with |eta_i| <= bound, in
/// lexicographic order. Works for any unimodular form.
void for_each_characteristic(const IntersectionForm& q, Integer bound,
                             const std::function<void(const CohomologyVector&)>& visit);

/// Exhaustive search over |eta_i| <= bound for the smallest characteristic
/// square strictly above b2 = rank. Ties resolve to the lexicographically
/// smallest witness regardless of thread count.
///
/// Requires a positive-definite diagonal form and bound >= 3
/// (std::invalid_argument); throws std::domain_error if the box holds no
/// admissible vector.
CharacteristicWitness min_characteristic_square(const IntersectionForm& q, Integer bound = 5);

/// 4 pi sqrt(2 eta^2): the Yamabe-invariant ceiling obtained from a
/// characteristic class with positive Dirac index on a definite form.
double upper_bound_from_eta_sq(Integer eta_sq);

/// Connected-sum lower bound: Y(M1 # ... # Mn) >= min_j Y(Mj) when every
/// Y(Mj) >= 0. Throws std::invalid_argument on an empty list or a negative entry.
double kobayashi_lower_bound(std::span<const double> ys);

/// Returns U^T Q U. Throws unless U is square of matching size with det +-1.
IntersectionForm change_basis(const IntersectionForm& q,
                              const std::vector<std::vector<Integer>>& u);

}  // namespace yamabe::lattice
