#include "yamabe/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace yamabe::kernels {

namespace {

using Neighbours = std::array<std::size_t, 8>;  // (plus, minus) per axis

// Per-node arithmetic shared by the serial and OpenMP drivers so both produce
// identical bits.
inline double laplacian_node(std::span<const double> in, std::size_t i, const Neighbours& nb, double coef) {
  double acc = 0.0;
  for (std::size_t a = 0; a < 4; ++a) acc += in[nb[2 * a]] + in[nb[2 * a + 1]];
  return (8.0 * in[i] - acc) * coef;
}

inline double flux_node(std::span<const double> a, std::span<const double> in, std::size_t i,
                        const Neighbours& nb, double coef) {
  double acc = 0.0;
  for (std::size_t ax = 0; ax < 4; ++ax) {
    const std::size_t p = nb[2 * ax], m = nb[2 * ax + 1];
    acc += 0.5 * (a[i] + a[p]) * (in[p] - in[i]) - 0.5 * (a[i] + a[m]) * (in[i] - in[m]);
  }
  return -acc * coef;
}

inline double gradient_sq_node(std::span<const double> in, const Neighbours& nb, double inv_2h) {
  double acc = 0.0;
  for (std::size_t ax = 0; ax < 4; ++ax) {
    const double d = (in[nb[2 * ax]] - in[nb[2 * ax + 1]]) * inv_2h;
    acc += d * d;
  }
  return acc;
}

Neighbours neighbours_by_coords(const Lattice4& lat, std::size_t idx) {
  const auto c = lat.coords(idx);
  const std::size_t n = lat.n;
  Neighbours nb{};
  for (std::size_t a = 0; a < 4; ++a) {
    auto plus = c, minus = c;
    plus[a] = (c[a] + 1) % n;
    minus[a] = (c[a] + n - 1) % n;
    nb[2 * a] = lat.index(plus[0], plus[1], plus[2], plus[3]);
    nb[2 * a + 1] = lat.index(minus[0], minus[1], minus[2], minus[3]);
  }
  return nb;
}

void require_size(const Lattice4& lat, std::size_t got) {
  if (got != lat.size()) throw std::invalid_argument("kernels: field size does not match the lattice");
}

// Drives `body(idx, neighbours)` over all nodes in parallel, building the
// neighbour table incrementally instead of from coordinates.
template <typename Body>
void parallel_nodes(const Lattice4& lat, Body&& body) {
  const std::size_t n = lat.n;
  const std::size_t s1 = n * n * n, s2 = n * n, s3 = n;
  const long long outer = static_cast<long long>(n * n);
#pragma omp parallel for schedule(static)
  for (long long k = 0; k < outer; ++k) {
    const std::size_t i1 = static_cast<std::size_t>(k) / n, i2 = static_cast<std::size_t>(k) % n;
    const std::size_t i1p = (i1 + 1) % n, i1m = (i1 + n - 1) % n;
    const std::size_t i2p = (i2 + 1) % n, i2m = (i2 + n - 1) % n;
    for (std::size_t i3 = 0; i3 < n; ++i3) {
      const std::size_t i3p = (i3 + 1) % n, i3m = (i3 + n - 1) % n;
      for (std::size_t i4 = 0; i4 < n; ++i4) {
        const std::size_t i4p = (i4 + 1) % n, i4m = (i4 + n - 1) % n;
        const std::size_t base2 = i2 * s2 + i3 * s3 + i4;
        const std::size_t base1 = i1 * s1;
        const std::size_t idx = base1 + base2;
        Neighbours nb{i1p * s1 + base2,
                      i1m * s1 + base2,
                      base1 + i2p * s2 + i3 * s3 + i4,
                      base1 + i2m * s2 + i3 * s3 + i4,
                      base1 + i2 * s2 + i3p * s3 + i4,
                      base1 + i2 * s2 + i3m * s3 + i4,
                      base1 + i2 * s2 + i3 * s3 + i4p,
                      base1 + i2 * s2 + i3 * s3 + i4m};
        body(idx, nb);
      }
    }
  }
}

constexpr std::size_t kChunk = 4096;

template <typename Term>
double chunked_sum(std::size_t size, Term&& term) {
  const std::size_t chunks = (size + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(size, lo + kChunk);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[static_cast<std::size_t>(c)] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace

namespace serial {

void laplacian(const Lattice4& lat, std::span<const double> in, std::span<double> out, double scale) {
  require_size(lat, in.size());
  require_size(lat, out.size());
  const double h = lat.spacing();
  const double coef = scale / (h * h);
  for (std::size_t i = 0; i < lat.size(); ++i) out[i] = laplacian_node(in, i, neighbours_by_coords(lat, i), coef);
}

void flux_laplacian(const Lattice4& lat, std::span<const double> a, std::span<const double> in,
                    std::span<double> out, double scale) {
  require_size(lat, a.size());
  require_size(lat, in.size());
  require_size(lat, out.size());
  const double h = lat.spacing();
  const double coef = scale / (h * h);
  for (std::size_t i = 0; i < lat.size(); ++i) out[i] = flux_node(a, in, i, neighbours_by_coords(lat, i), coef);
}

void centred_gradient_sq(const Lattice4& lat, std::span<const double> in, std::span<double> out) {
  require_size(lat, in.size());
  require_size(lat, out.size());
  const double inv_2h = 0.5 / lat.spacing();
  for (std::size_t i = 0; i < lat.size(); ++i) out[i] = gradient_sq_node(in, neighbours_by_coords(lat, i), inv_2h);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double weighted_dot(std::span<const double> w, std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += w[i] * a[i] * b[i];
  return acc;
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace serial

namespace omp {

void laplacian(const Lattice4& lat, std::span<const double> in, std::span<double> out, double scale) {
  require_size(lat, in.size());
  require_size(lat, out.size());
  const double h = lat.spacing();
  const double coef = scale / (h * h);
  parallel_nodes(lat, [&](std::size_t i, const Neighbours& nb) { out[i] = laplacian_node(in, i, nb, coef); });
}

void flux_laplacian(const Lattice4& lat, std::span<const double> a, std::span<const double> in,
                    std::span<double> out, double scale) {
  require_size(lat, a.size());
  require_size(lat, in.size());
  require_size(lat, out.size());
  const double h = lat.spacing();
  const double coef = scale / (h * h);
  parallel_nodes(lat, [&](std::size_t i, const Neighbours& nb) { out[i] = flux_node(a, in, i, nb, coef); });
}

void centred_gradient_sq(const Lattice4& lat, std::span<const double> in, std::span<double> out) {
  require_size(lat, in.size());
  require_size(lat, out.size());
  const double inv_2h = 0.5 / lat.spacing();
  parallel_nodes(lat, [&](std::size_t i, const Neighbours& nb) { out[i] = gradient_sq_node(in, nb, inv_2h); });
}

double dot(std::span<const double> a, std::span<const double> b) {
  return chunked_sum(a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

double weighted_dot(std::span<const double> w, std::span<const double> a, std::span<const double> b) {
  return chunked_sum(a.size(), [&](std::size_t i) { return w[i] * a[i] * b[i]; });
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
#pragma omp parallel for reduction(max : m) schedule(static)
  for (long long i = 0; i < static_cast<long long>(a.size()); ++i)
    m = std::max(m, std::abs(a[static_cast<std::size_t>(i)]));
  return m;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(x.size()); ++i)
    y[static_cast<std::size_t>(i)] += alpha * x[static_cast<std::size_t>(i)];
}

}  // namespace omp

}  // namespace yamabe::kernels
