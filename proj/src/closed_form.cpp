#include "yamabe/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace yamabe {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("closed form: overflow");
  return r;
}

}  // namespace

ClosedForm::ClosedForm(std::int64_t num, std::int64_t den, int pi_power, std::int64_t radicand)
    : num_(num), den_(den), pi_power_(pi_power), radicand_(radicand) {
  if (den_ == 0) throw std::invalid_argument("closed form: zero denominator");
  if (radicand_ <= 0) throw std::invalid_argument("closed form: radicand must be positive");
  normalise();
}

void ClosedForm::normalise() {
  // Pull square factors out of the radicand.
  for (std::int64_t f = 2; f * f <= radicand_; ++f) {
    while (radicand_ % (f * f) == 0) {
      radicand_ /= f * f;
      num_ = checked_mul(num_, f);
    }
  }
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  const std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) {
    den_ = 1;
    pi_power_ = 0;
    radicand_ = 1;
  }
}

double ClosedForm::value() const {
  return static_cast<double>(num_) / static_cast<double>(den_) * std::pow(std::numbers::pi, pi_power_) *
         std::sqrt(static_cast<double>(radicand_));
}

std::string ClosedForm::symbolic() const {
  std::string out = std::to_string(num_);
  if (den_ != 1) out += "/" + std::to_string(den_);
  if (radicand_ != 1) out += "*sqrt(" + std::to_string(radicand_) + ")";
  if (pi_power_ == 1) out += "*pi";
  else if (pi_power_ != 0) out += "*pi^" + std::to_string(pi_power_);
  return out;
}

ClosedForm operator*(const ClosedForm& a, const ClosedForm& b) {
  // sqrt(r1) sqrt(r2) = g sqrt(r1 r2 / g^2) with g = gcd(r1, r2) for square-free inputs.
  const std::int64_t g = std::gcd(a.radicand_, b.radicand_);
  const std::int64_t rad = (a.radicand_ / g) * (b.radicand_ / g);
  return ClosedForm(checked_mul(checked_mul(a.num_, b.num_), g), checked_mul(a.den_, b.den_),
                    a.pi_power_ + b.pi_power_, rad);
}

int compare(const ClosedForm& a, const ClosedForm& b) {
  const auto sgn = [](std::int64_t x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); };
  const int sa = sgn(a.num()), sb = sgn(b.num());
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  if (a.pi_power() != b.pi_power()) {
    const double va = a.value(), vb = b.value();
    return va < vb ? -1 : (va > vb ? 1 : 0);
  }
  // Same sign and pi power: compare (num/den)^2 * radicand across both sides.
  using Wide = __int128;
  const Wide lhs = Wide(a.num()) * a.num() * a.radicand() * b.den() * b.den();
  const Wide rhs = Wide(b.num()) * b.num() * b.radicand() * a.den() * a.den();
  const int mag = lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  return sa > 0 ? mag : -mag;
}

}  // namespace yamabe
