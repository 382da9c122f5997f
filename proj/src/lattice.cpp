#include "yamabe/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <omp.h>

namespace yamabe::lattice {

namespace {

Integer checked_add(Integer a, Integer b) {
  Integer r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("lattice: integer overflow in addition");
  return r;
}

Integer checked_mul(Integer a, Integer b) {
  Integer r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("lattice: integer overflow in multiplication");
  return r;
}

Integer mod2(Integer x) { return ((x % 2) + 2) % 2; }

using Wide = __int128;

Wide wide_abs(Wide x) { return x < 0 ? -x : x; }

Wide wide_gcd(Wide a, Wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Exact rational with 128-bit storage. Magnitudes are capped well below the
// 128-bit range so every product of two normalised values stays representable.
class Fraction {
 public:
  Fraction() = default;
  Fraction(Wide n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Fraction(Wide n, Wide d) : num_(n), den_(d) { normalise(); }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  friend Fraction operator+(const Fraction& a, const Fraction& b) {
    return Fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Fraction operator-(const Fraction& a, const Fraction& b) {
    return Fraction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Fraction operator*(const Fraction& a, const Fraction& b) {
    return Fraction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Fraction operator/(const Fraction& a, const Fraction& b) {
    if (b.num_ == 0) throw std::logic_error("lattice: division by zero pivot");
    return Fraction(a.num_ * b.den_, a.den_ * b.num_);
  }

 private:
  static constexpr Wide kLimit = Wide(1) << 60;

  void normalise() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    Wide g = wide_gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (wide_abs(num_) > kLimit || den_ > kLimit)
      throw std::overflow_error("lattice: rational overflow during diagonalisation");
  }

  Wide num_ = 0;
  Wide den_ = 1;
};

void require_length(const CohomologyVector& eta, const IntersectionForm& q) {
  if (eta.size() != q.rank())
    throw std::invalid_argument("lattice: vector length " + std::to_string(eta.size()) +
                                " does not match form rank " + std::to_string(q.rank()));
}

bool lex_less(const CharacteristicWitness& a, const CharacteristicWitness& b) {
  if (a.square != b.square) return a.square < b.square;
  return a.eta < b.eta;
}

}  // namespace

Integer determinant(const std::vector<std::vector<Integer>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) return 1;
  std::vector<std::vector<Wide>> a(n, std::vector<Wide>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw std::invalid_argument("lattice: matrix is not square");
    for (std::size_t j = 0; j < n; ++j) a[i][j] = rows[i][j];
  }
  Wide sign = 1;
  Wide prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Wide v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        a[i][j] = v / prev;  // exact by Sylvester's identity
        if (wide_abs(a[i][j]) > (Wide(1) << 62))
          throw std::overflow_error("lattice: determinant overflow");
      }
    }
    prev = a[k][k];
  }
  Wide det = sign * a[n - 1][n - 1];
  if (det > INT64_MAX || det < INT64_MIN) throw std::overflow_error("lattice: determinant overflow");
  return static_cast<Integer>(det);
}

IntersectionForm::IntersectionForm(const std::vector<std::vector<Integer>>& rows) : rank_(rows.size()) {
  if (rank_ == 0) throw std::invalid_argument("lattice: intersection form must have positive rank");
  entries_.reserve(rank_ * rank_);
  for (const auto& row : rows) {
    if (row.size() != rank_) throw std::invalid_argument("lattice: intersection form must be square");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = i + 1; j < rank_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) throw std::invalid_argument("lattice: intersection form must be symmetric");
  const Integer det = determinant(rows);
  if (det != 1 && det != -1)
    throw std::invalid_argument("lattice: intersection form must be unimodular (det = " + std::to_string(det) + ")");
}

IntersectionForm IntersectionForm::diagonal(const std::vector<Integer>& entries) {
  std::vector<std::vector<Integer>> rows(entries.size(), std::vector<Integer>(entries.size(), 0));
  for (std::size_t i = 0; i < entries.size(); ++i) rows[i][i] = entries[i];
  return IntersectionForm(rows);
}

IntersectionForm IntersectionForm::identity(std::size_t rank) {
  return diagonal(std::vector<Integer>(rank, 1));
}

bool IntersectionForm::is_diagonal() const {
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

bool IntersectionForm::is_positive_definite_diagonal() const {
  if (!is_diagonal()) return false;
  for (std::size_t i = 0; i < rank_; ++i)
    if ((*this)(i, i) <= 0) return false;
  return true;
}

std::vector<std::vector<Integer>> IntersectionForm::rows() const {
  std::vector<std::vector<Integer>> out(rank_);
  for (std::size_t i = 0; i < rank_; ++i)
    out[i].assign(entries_.begin() + static_cast<std::ptrdiff_t>(i * rank_),
                  entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * rank_));
  return out;
}

void ManifoldDescriptor::validate() const {
  if (b_plus < 0 || b_minus < 0 || handles_m < 0 || cp2_k < 0)
    throw std::invalid_argument("lattice: descriptor counts must be non-negative");
  if (form) {
    if (static_cast<std::size_t>(b_plus + b_minus) != form->rank())
      throw std::invalid_argument("lattice: b+ + b- must equal the rank of the intersection form");
    const Inertia in = inertia(*form);
    if (static_cast<Integer>(in.b_plus) != b_plus || static_cast<Integer>(in.b_minus) != b_minus)
      throw std::invalid_argument("lattice: Betti numbers disagree with the inertia of the form");
  }
}

ManifoldDescriptor connected_sum_descriptor(Integer k, Integer m) {
  if (k < 0 || m < 0) throw std::invalid_argument("lattice: k and m must be non-negative");
  ManifoldDescriptor d;
  d.name = std::to_string(k) + "CP2 # " + std::to_string(m) + "(S1xS3)";
  d.b_plus = k;
  d.b_minus = 0;
  if (k > 0) d.form = IntersectionForm::identity(static_cast<std::size_t>(k));
  d.handles_m = m;
  d.cp2_k = k;
  d.validate();
  return d;
}

Inertia inertia(const IntersectionForm& q) {
  const std::size_t n = q.rank();
  std::vector<std::vector<Fraction>> a(n, std::vector<Fraction>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Fraction(q(i, j));

  auto swap_basis = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    for (auto& row : a) std::swap(row[i], row[j]);
  };
  // basis_i += basis_j, applied as a congruence.
  auto add_basis = [&](std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < n; ++c) a[i][c] = a[i][c] + a[j][c];
    for (std::size_t r = 0; r < n; ++r) a[r][i] = a[r][i] + a[r][j];
  };

  Inertia out;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a[p][p].is_zero()) ++p;
      if (p < n) {
        swap_basis(k, p);
      } else {
        std::size_t j = k + 1;
        while (j < n && a[k][j].is_zero()) ++j;
        if (j < n) add_basis(k, j);  // new pivot is 2 a[k][j]
      }
    }
    const Fraction pivot = a[k][k];
    if (pivot.is_zero()) {
      ++out.nullity;
      continue;
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a[j][k].is_zero()) continue;
      const Fraction factor = a[j][k] / pivot;
      for (std::size_t c = k; c < n; ++c) a[j][c] = a[j][c] - factor * a[k][c];
      for (std::size_t r = k; r < n; ++r) a[r][j] = a[r][j] - factor * a[r][k];
    }
    (pivot.sign() > 0 ? out.b_plus : out.b_minus) += 1;
  }
  return out;
}

Integer signature(const IntersectionForm& q) {
  const Inertia in = inertia(q);
  return static_cast<Integer>(in.b_plus) - static_cast<Integer>(in.b_minus);
}

bool is_characteristic(const CohomologyVector& eta, const IntersectionForm& q) {
  require_length(eta, q);
  const std::size_t n = q.rank();
  for (std::size_t i = 0; i < n; ++i) {
    Integer row = 0;
    for (std::size_t j = 0; j < n; ++j) row = checked_add(row, checked_mul(q(i, j), eta[j]));
    if (mod2(row) != mod2(q(i, i))) return false;
  }
  return true;
}

Integer self_pairing(const CohomologyVector& eta, const IntersectionForm& q) {
  require_length(eta, q);
  const std::size_t n = q.rank();
  Integer total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Integer row = 0;
    for (std::size_t j = 0; j < n; ++j) row = checked_add(row, checked_mul(q(i, j), eta[j]));
    total = checked_add(total, checked_mul(eta[i], row));
  }
  return total;
}

Integer dirac_index(const CohomologyVector& eta, const IntersectionForm& q) {
  if (!is_characteristic(eta, q))
    throw std::invalid_argument("lattice: Dirac index requires a characteristic class");
  const Integer numerator = checked_add(self_pairing(eta, q), -signature(q));
  if (numerator % 8 != 0)
    throw std::logic_error("lattice: eta^2 - tau is not divisible by 8 for a characteristic class");
  return numerator / 8;
}

void for_each_characteristic(const IntersectionForm& q, Integer bound,
                             const std::function<void(const CohomologyVector&)>& visit) {
  if (bound < 0) throw std::invalid_argument("lattice: box bound must be non-negative");
  const std::size_t n = q.rank();
  CohomologyVector eta(std::vector<Integer>(n, -bound));
  while (true) {
    if (is_characteristic(eta, q)) visit(eta);
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (eta.coords[pos] < bound) {
        ++eta.coords[pos];
        break;
      }
      eta.coords[pos] = -bound;
      if (pos == 0) return;
    }
  }
}

CharacteristicWitness min_characteristic_square(const IntersectionForm& q, Integer bound) {
  if (!q.is_positive_definite_diagonal())
    throw std::invalid_argument("lattice: characteristic search needs a positive-definite diagonal form");
  if (bound < 3) throw std::invalid_argument("lattice: characteristic search needs bound >= 3");

  const std::size_t n = q.rank();
  const Integer b2 = static_cast<Integer>(n);
  const Integer slices = 2 * bound + 1;
  std::vector<std::optional<CharacteristicWitness>> best(static_cast<std::size_t>(slices));

  // One slice per value of the leading coordinate; slices are merged in order
  // so the result does not depend on the schedule.
#pragma omp parallel for schedule(dynamic)
  for (Integer s = 0; s < slices; ++s) {
    std::optional<CharacteristicWitness> local;
    CohomologyVector eta(std::vector<Integer>(n, -bound));
    eta.coords[0] = s - bound;
    while (true) {
      // Diagonal form: characteristic iff eta_i == d_i (mod 2) wherever d_i is odd.
      bool characteristic = true;
      Integer square = 0;
      for (std::size_t i = 0; i < n && characteristic; ++i) {
        const Integer d = q(i, i);
        if (mod2(d) == 1 && mod2(eta[i]) == 0) characteristic = false;
        square = checked_add(square, checked_mul(d, checked_mul(eta[i], eta[i])));
      }
      if (characteristic && square > b2) {
        CharacteristicWitness w{square, eta};
        if (!local || lex_less(w, *local)) local = std::move(w);
      }
      std::size_t pos = n;
      bool done = true;
      while (pos > 1) {
        --pos;
        if (eta.coords[pos] < bound) {
          ++eta.coords[pos];
          done = false;
          break;
        }
        eta.coords[pos] = -bound;
      }
      if (done) break;
    }
    best[static_cast<std::size_t>(s)] = std::move(local);
  }

  std::optional<CharacteristicWitness> result;
  for (auto& candidate : best)
    if (candidate && (!result || lex_less(*candidate, *result))) result = std::move(candidate);
  if (!result) throw std::domain_error("lattice: no characteristic vector with eta^2 > b2 in the search box");
  return *result;
}

double upper_bound_from_eta_sq(Integer eta_sq) {
  if (eta_sq <= 0) throw std::invalid_argument("lattice: eta^2 must be positive");
  return 4.0 * std::numbers::pi * std::sqrt(2.0 * static_cast<double>(eta_sq));
}

double kobayashi_lower_bound(std::span<const double> ys) {
  if (ys.empty()) throw std::invalid_argument("lattice: connected-sum bound needs at least one summand");
  for (double y : ys)
    if (!(y >= 0.0)) throw std::invalid_argument("lattice: connected-sum bound requires every Y(M_j) >= 0");
  return *std::min_element(ys.begin(), ys.end());
}

IntersectionForm change_basis(const IntersectionForm& q, const std::vector<std::vector<Integer>>& u) {
  const std::size_t n = q.rank();
  if (u.size() != n) throw std::invalid_argument("lattice: basis change has the wrong size");
  const Integer det = determinant(u);
  if (det != 1 && det != -1) throw std::invalid_argument("lattice: basis change must be unimodular");
  std::vector<std::vector<Integer>> out(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Integer acc = 0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          acc = checked_add(acc, checked_mul(checked_mul(u[a][i], q(a, b)), u[b][j]));
      out[i][j] = acc;
    }
  return IntersectionForm(out);
}

}  // namespace yamabe::lattice
