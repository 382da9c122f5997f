#pragma once

#include <cstdint>
#include <string>

namespace yamabe {

/// An exact real of the form (num/den) * pi^pi_power * sqrt(radicand), with
/// the radicand kept square-free and the fraction reduced. Floating point only
/// appears in value().
class ClosedForm {
 public:
  ClosedForm() = default;
  ClosedForm(std::int64_t num, std::int64_t den, int pi_power, std::int64_t radicand);

  /// c * pi * sqrt(r), the shape of every Yamabe constant in the catalogue.
  static ClosedForm pi_sqrt(std::int64_t c, std::int64_t r) { return ClosedForm(c, 1, 1, r); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  int pi_power() const { return pi_power_; }
  std::int64_t radicand() const { return radicand_; }

  double value() const;
  std::string symbolic() const;

  friend ClosedForm operator*(const ClosedForm& a, const ClosedForm& b);
  friend bool operator==(const ClosedForm&, const ClosedForm&) = default;

 private:
  void normalise();

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  int pi_power_ = 0;
  std::int64_t radicand_ = 1;
};

/// Exact three-way comparison. Values with equal pi powers are compared by
/// integer arithmetic on squares; mixed pi powers fall back to value().
int compare(const ClosedForm& a, const ClosedForm& b);

}  // namespace yamabe
