#include "yamabe/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "yamabe/errors.hpp"
#include "yamabe/kernels.hpp"

namespace yamabe::spectrum {

namespace {

namespace kn = kernels::omp;

template <typename Fn>
void for_nodes(std::size_t size, Fn&& fn) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(size); ++i) fn(static_cast<std::size_t>(i));
}

double norm(std::span<const double> v) { return std::sqrt(kn::dot(v, v)); }

double h4(const ConformalGrid& grid) {
  const double h = grid.spacing();
  return h * h * h * h;
}

// Conjugate gradients for (B - shift) z = rhs, warm-started from z.
template <typename ApplyB>
void shifted_cg(const ApplyB& apply_b, double shift, std::span<const double> rhs, std::span<double> z,
                double abs_tol, int max_iterations) {
  const std::size_t n = rhs.size();
  Field r(n), p(n), ap(n);
  apply_b(z, ap);
  for_nodes(n, [&](std::size_t i) { r[i] = rhs[i] - (ap[i] - shift * z[i]); });
  p = r;
  double rr = kn::dot(r, r);
  for (int it = 0; it < max_iterations && std::sqrt(rr) > abs_tol; ++it) {
    apply_b(p, ap);
    for_nodes(n, [&](std::size_t i) { ap[i] -= shift * p[i]; });
    const double pap = kn::dot(p, ap);
    if (!(pap > 0.0)) throw std::logic_error("spectrum: shifted operator is not positive definite");
    const double alpha = rr / pap;
    kn::axpy(alpha, p, z);
    kn::axpy(-alpha, ap, r);
    const double rr_new = kn::dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for_nodes(n, [&](std::size_t i) { p[i] = r[i] + beta * p[i]; });
  }
}

}  // namespace

std::string to_string(Sign s) {
  switch (s) {
    case Sign::negative: return "-";
    case Sign::zero: return "0";
    case Sign::positive: return "+";
  }
  return "?";
}

SolverConfig SolverConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("solver config: expected a JSON object");
  SolverConfig c;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "tol") c.tol = value.get<double>();
      else if (key == "max_iterations") c.max_iterations = value.get<int>();
      else if (key == "max_cg_iterations") c.max_cg_iterations = value.get<int>();
      else if (key == "shift_margin") c.shift_margin = value.get<double>();
      else if (key == "zero_band_factor") c.zero_band_factor = value.get<double>();
      else if (key == "zero_band") c.zero_band = value.get<double>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else throw std::invalid_argument("solver config: unknown field '" + key + "'");
    } catch (const nlohmann::json::exception&) {
      throw std::invalid_argument("solver config: field '" + key + "' has the wrong type");
    }
  }
  if (!(c.tol > 0.0)) throw std::invalid_argument("solver config: field 'tol' must be positive");
  if (c.max_iterations < 1 || c.max_cg_iterations < 1)
    throw std::invalid_argument("solver config: iteration caps must be at least 1");
  if (!(c.shift_margin > 0.0)) throw std::invalid_argument("solver config: field 'shift_margin' must be positive");
  return c;
}

nlohmann::json SolverConfig::to_json() const {
  nlohmann::json j = {{"tol", tol},
                      {"max_iterations", max_iterations},
                      {"max_cg_iterations", max_cg_iterations},
                      {"shift_margin", shift_margin},
                      {"zero_band_factor", zero_band_factor},
                      {"seed", seed}};
  if (zero_band) j["zero_band"] = *zero_band;
  return j;
}

PerturbedOperator::PerturbedOperator(ConformalGrid grid, Field kinetic_coeff, Field potential, Assembly route,
                                     std::vector<double> f_delta)
    : grid_(std::move(grid)),
      kinetic_coeff_(std::move(kinetic_coeff)),
      potential_(std::move(potential)),
      mass_(grid_.size()),
      route_(route),
      f_delta_(std::move(f_delta)) {
  const auto u = grid_.conformal_factor();
  for_nodes(grid_.size(), [&](std::size_t i) {
    const double u2 = u[i] * u[i];
    mass_[i] = u2 * u2;
  });
}

void PerturbedOperator::apply_stiffness(std::span<const double> psi, std::span<double> out) const {
  const std::size_t n = grid_.size();
  if (psi.size() != n || out.size() != n) throw std::invalid_argument("spectrum: vector size mismatch");
  if (route_ == Assembly::covariance) {
    // u * 6 Delta_delta(u psi) + potential * psi
    Field tmp(n);
    for_nodes(n, [&](std::size_t i) { tmp[i] = kinetic_coeff_[i] * psi[i]; });
    kn::laplacian(grid_.lattice(), tmp, out, 6.0);
    for_nodes(n, [&](std::size_t i) { out[i] = kinetic_coeff_[i] * out[i] + potential_[i] * psi[i]; });
  } else {
    kn::flux_laplacian(grid_.lattice(), kinetic_coeff_, psi, out, 6.0);
    for_nodes(n, [&](std::size_t i) { out[i] += potential_[i] * psi[i]; });
  }
}

Field PerturbedOperator::apply(std::span<const double> psi) const {
  Field out(grid_.size());
  apply_stiffness(psi, out);
  for_nodes(out.size(), [&](std::size_t i) { out[i] /= mass_[i]; });
  return out;
}

double PerturbedOperator::inner(std::span<const double> a, std::span<const double> b) const {
  return h4(grid_) * kn::weighted_dot(mass_, a, b);
}

double PerturbedOperator::spectrum_lower_bound() const {
  double lo = potential_[0] / mass_[0];
  for (std::size_t i = 1; i < mass_.size(); ++i) lo = std::min(lo, potential_[i] / mass_[i]);
  return lo;
}

double PerturbedOperator::spectrum_upper_bound() const {
  const auto& lat = grid_.lattice();
  const double h = grid_.spacing();
  const double c = 6.0 / (h * h);
  double hi = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    const auto x = lat.coords(i);
    double row = 0.0;
    for (std::size_t a = 0; a < 4; ++a) {
      for (int d : {1, -1}) {
        auto y = x;
        y[a] = (x[a] + (d > 0 ? 1 : lat.n - 1)) % lat.n;
        const std::size_t j = lat.index(y[0], y[1], y[2], y[3]);
        if (route_ == Assembly::covariance) {
          // diagonal u_i^2 c per neighbour plus |off-diagonal| u_i u_j c
          row += c * kinetic_coeff_[i] * (kinetic_coeff_[i] + kinetic_coeff_[j]);
        } else {
          row += 2.0 * c * 0.5 * (kinetic_coeff_[i] + kinetic_coeff_[j]);
        }
      }
    }
    row += std::abs(potential_[i]);
    hi = std::max(hi, row / mass_[i]);
  }
  return hi;
}

PerturbedOperator assemble(const ConformalGrid& grid, const WeightedField& f, Assembly route) {
  if (f.weight != -2)
    throw std::invalid_argument("spectrum: perturbation must have conformal weight -2 (got " +
                                std::to_string(f.weight) + ")");
  if (f.values.size() != grid.size()) throw std::invalid_argument("spectrum: perturbation does not match the grid");
  const auto u = grid.conformal_factor();
  const std::size_t n = grid.size();
  Field kinetic(n), potential(n);
  if (route == Assembly::covariance) {
    for_nodes(n, [&](std::size_t i) {
      kinetic[i] = u[i];
      potential[i] = -f.values[i] * u[i] * u[i];
    });
  } else {
    const Field s = confgrid::scalar_curvature_log_form(grid);
    for_nodes(n, [&](std::size_t i) {
      const double u2 = u[i] * u[i];
      kinetic[i] = u2;
      potential[i] = u2 * u2 * s[i] - u2 * f.values[i];
    });
  }
  return PerturbedOperator(grid, std::move(kinetic), std::move(potential), route, f.values);
}

SpectralResult lowest_eigenpair(const PerturbedOperator& op, const SolverConfig& config) {
  if (!(config.tol > 0.0)) throw std::invalid_argument("spectrum: tolerance must be positive");
  const std::size_t n = op.grid().size();
  const auto mass = op.mass();
  Field sqrt_m(n);
  for_nodes(n, [&](std::size_t i) { sqrt_m[i] = std::sqrt(mass[i]); });

  // B = M^-1/2 K M^-1/2 acts on y = M^1/2 psi; its Euclidean norm is the L^2(g) norm up to h^2.
  Field scratch(n);
  auto apply_b = [&](std::span<const double> y, std::span<double> out) {
    for_nodes(n, [&](std::size_t i) { scratch[i] = y[i] / sqrt_m[i]; });
    op.apply_stiffness(scratch, out);
    for_nodes(n, [&](std::size_t i) { out[i] /= sqrt_m[i]; });
  };

  const double shift = op.spectrum_lower_bound() - config.shift_margin;
  const double apply_floor = 1e-15 * op.spectrum_upper_bound();

  Field y(n);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) y[i] = sqrt_m[i] * (1.0 + 0.25 * jitter(rng));
  {
    const double s = norm(y);
    for_nodes(n, [&](std::size_t i) { y[i] /= s; });
  }

  Field by(n), z(n), r(n);
  apply_b(y, by);
  double lambda = kn::dot(y, by);
  double residual = 0.0;
  int it = 0;
  for (it = 1; it <= config.max_iterations; ++it) {
    const double gap = std::max(lambda - shift, config.shift_margin);
    for_nodes(n, [&](std::size_t i) { z[i] = y[i] / gap; });
    // The solve error enters the eigen-residual multiplied by the gap.
    shifted_cg(apply_b, shift, y, z, std::max(0.05 * config.tol / gap, apply_floor / gap), config.max_cg_iterations);
    const double s = norm(z);
    for_nodes(n, [&](std::size_t i) { y[i] = z[i] / s; });
    apply_b(y, by);
    lambda = kn::dot(y, by);
    for_nodes(n, [&](std::size_t i) { r[i] = by[i] - lambda * y[i]; });
    residual = norm(r);
    if (residual < config.tol) break;
  }
  if (it > config.max_iterations)
    throw ConvergenceError("spectrum: inverse iteration did not converge in " +
                               std::to_string(config.max_iterations) + " iterations",
                           residual);

  double mean = 0.0;
  for (double v : y) mean += v;
  const double sign = mean >= 0.0 ? 1.0 : -1.0;
  const double h = op.grid().spacing();
  SpectralResult out;
  out.eigenfunction.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.eigenfunction[i] = sign * y[i] / (sqrt_m[i] * h * h);
    if (!(out.eigenfunction[i] > 0.0))
      throw PositivityError("spectrum: ground state is not positive; refine the grid", i);
  }
  out.lambda = lambda;
  out.residual = residual;
  out.iterations = it;
  out.shift = shift;
  return out;
}

double zero_band(double lambda, double h, const SolverConfig& config) {
  if (config.zero_band) return *config.zero_band;
  return config.zero_band_factor * h * h * (1.0 + std::abs(lambda));
}

Sign classify(double lambda, double h, const SolverConfig& config) {
  if (std::abs(lambda) < zero_band(lambda, h, config)) return Sign::zero;
  return lambda > 0.0 ? Sign::positive : Sign::negative;
}

Field modified_scalar_curvature(const ConformalGrid& grid, const WeightedField& f, Assembly route) {
  const PerturbedOperator op = assemble(grid, f, route);
  const Field ones(grid.size(), 1.0);
  return op.apply(ones);
}

NormalizedMetric conformal_normalize(const ConformalGrid& grid, const WeightedField& f, const SolverConfig& config,
                                     Assembly route) {
  const PerturbedOperator op = assemble(grid, f, route);
  SpectralResult spectral = lowest_eigenpair(op, config);
  ConformalGrid rescaled = grid.rescaled(spectral.eigenfunction);
  Field sigma(grid.size());
  for (std::size_t i = 0; i < sigma.size(); ++i)
    sigma[i] = spectral.lambda / (spectral.eigenfunction[i] * spectral.eigenfunction[i]);
  const Sign sign = classify(spectral.lambda, grid.spacing(), config);
  return NormalizedMetric{std::move(rescaled), sign, std::move(spectral), std::move(sigma)};
}

Sign trichotomy_sign(const ConformalGrid& grid, const WeightedField& f, const SolverConfig& config,
                     Assembly route) {
  const SpectralResult r = lowest_eigenpair(assemble(grid, f, route), config);
  return classify(r.lambda, grid.spacing(), config);
}

namespace {

struct QuotientParts {
  double energy = 0.0;  // <Box_g w, w>_g
  double volume = 0.0;  // integral of w^4 dmu_g
};

// Covariance: <Box_g w, w>_g = h^4 <6 Delta_delta(u w), u w> and w^4 u^4 = (u w)^4.
QuotientParts quotient_parts(const ConformalGrid& grid, std::span<const double> w, Field& chi, Field& lap) {
  const auto u = grid.conformal_factor();
  const std::size_t n = grid.size();
  for_nodes(n, [&](std::size_t i) { chi[i] = u[i] * w[i]; });
  kn::laplacian(grid.lattice(), chi, lap, 6.0);
  Field chi2(n);
  for_nodes(n, [&](std::size_t i) { chi2[i] = chi[i] * chi[i]; });
  const double scale = h4(grid);
  return {scale * kn::dot(lap, chi), scale * kn::dot(chi2, chi2)};
}

void require_positive_trial(std::span<const double> w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!(w[i] > 0.0))
      throw std::invalid_argument("spectrum: trial function must be positive (node " + std::to_string(i) + ")");
}

}  // namespace

double yamabe_quotient(const ConformalGrid& grid, std::span<const double> trial) {
  if (trial.size() != grid.size()) throw std::invalid_argument("spectrum: trial function does not match the grid");
  require_positive_trial(trial);
  Field chi(grid.size()), lap(grid.size());
  const QuotientParts q = quotient_parts(grid, trial, chi, lap);
  return q.energy / std::sqrt(q.volume);
}

DescentResult yamabe_constant_estimate(const ConformalGrid& grid, int iterations, double step,
                                       std::optional<Field> initial) {
  if (iterations < 1) throw std::invalid_argument("spectrum: descent needs at least one iteration");
  const std::size_t n = grid.size();
  Field w = initial ? std::move(*initial) : Field(n, 1.0);
  if (w.size() != n) throw std::invalid_argument("spectrum: initial trial does not match the grid");
  require_positive_trial(w);

  const auto u = grid.conformal_factor();
  Field chi(n), lap(n), grad(n), candidate(n);

  auto normalise = [&](Field& v) {
    QuotientParts q = quotient_parts(grid, v, chi, lap);
    const double s = std::pow(q.volume, -0.25);
    for_nodes(n, [&](std::size_t i) { v[i] *= s; });
    q.energy *= s * s;
    q.volume = 1.0;
    return q;
  };

  QuotientParts current = normalise(w);
  double quotient = current.energy;

  const double base_step = step > 0.0 ? step : 1.0 / assemble(grid, {Field(n, 0.0), -2}).spectrum_upper_bound();
  double trial_step = base_step;

  DescentResult out;
  out.trace.reserve(static_cast<std::size_t>(iterations) + 1);
  out.trace.push_back(quotient);

  for (int it = 0; it < iterations; ++it) {
    // L^2(g) gradient of the quotient at unit volume (up to a factor 2): Box_g w - E w^3.
    quotient_parts(grid, w, chi, lap);
    for_nodes(n, [&](std::size_t i) {
      grad[i] = lap[i] / (u[i] * u[i] * u[i]) - current.energy * w[i] * w[i] * w[i];
    });

    bool accepted = false;
    bool positivity_only_failures = true;
    for (int halving = 0; halving < 40 && !accepted; ++halving) {
      bool positive = true;
      for (std::size_t i = 0; i < n; ++i) {
        candidate[i] = w[i] - trial_step * grad[i];
        if (!(candidate[i] > 0.0)) positive = false;
      }
      if (positive) {
        positivity_only_failures = false;
        const QuotientParts q = quotient_parts(grid, candidate, chi, lap);
        const double value = q.energy / std::sqrt(q.volume);
        if (value <= quotient) {
          w.swap(candidate);
          current = normalise(w);
          quotient = current.energy;
          accepted = true;
          trial_step = std::min(trial_step * 1.25, 64.0 * base_step);
          break;
        }
      }
      trial_step *= 0.5;
    }
    if (!accepted) {
      if (positivity_only_failures)
        throw std::runtime_error("spectrum: descent cannot keep the trial function positive");
      break;  // stationary to working precision
    }
    out.trace.push_back(quotient);
  }
  out.estimate = *std::min_element(out.trace.begin(), out.trace.end());
  out.minimizer = std::move(w);
  return out;
}

nlohmann::json to_json(const SpectralResult& r, std::size_t n, Sign sign) {
  return {{"lambda", r.lambda}, {"residual", r.residual}, {"N", n}, {"sign", to_string(sign)}};
}

}  // namespace yamabe::spectrum
