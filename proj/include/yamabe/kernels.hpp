#pragma once

// Stencil and reduction kernels on the periodic N^4 lattice of the unit torus.
//
// Node (i1, i2, i3, i4) lives at index ((i1*N + i2)*N + i3)*N + i4, so x4 is
// the fastest axis. Every kernel exists twice: `serial` is the plain reference
// used by the tests, `omp` is the data-parallel version the library calls.
// Stencil kernels in both namespaces evaluate the same floating-point
// expression per node and agree bitwise. Reductions in `omp` accumulate one
// partial sum per fixed 4096-element chunk and combine the chunks in order, so
// their result is independent of the thread count.

#include <array>
#include <cstddef>
#include <span>

namespace yamabe::kernels {

struct Lattice4 {
  std::size_t n = 0;

  std::size_t size() const { return n * n * n * n; }
  double spacing() const { return 1.0 / static_cast<double>(n); }
  std::size_t index(std::size_t i1, std::size_t i2, std::size_t i3, std::size_t i4) const {
    return ((i1 * n + i2) * n + i3) * n + i4;
  }
  std::array<std::size_t, 4> coords(std::size_t idx) const {
    std::array<std::size_t, 4> c{};
    for (int a = 3; a >= 0; --a) {
      c[static_cast<std::size_t>(a)] = idx % n;
      idx /= n;
    }
    return c;
  }
};

namespace serial {

/// out = scale * Delta(in), Delta the positive Laplacian with the 9-point
/// second-difference stencil.
void laplacian(const Lattice4& lat, std::span<const double> in, std::span<double> out, double scale = 1.0);

/// out = -scale * sum_axes D(a D in) in flux form, with face coefficient
/// (a_i + a_j)/2 between neighbours. Symmetric and positive semi-definite for
/// a > 0.
void flux_laplacian(const Lattice4& lat, std::span<const double> a, std::span<const double> in,
                    std::span<double> out, double scale = 1.0);

/// Squared centred-difference gradient, sum_axes ((in_+ - in_-) / 2h)^2.
void centred_gradient_sq(const Lattice4& lat, std::span<const double> in, std::span<double> out);

double dot(std::span<const double> a, std::span<const double> b);
double weighted_dot(std::span<const double> w, std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> a);

}  // namespace serial

namespace omp {

void laplacian(const Lattice4& lat, std::span<const double> in, std::span<double> out, double scale = 1.0);
void flux_laplacian(const Lattice4& lat, std::span<const double> a, std::span<const double> in,
                    std::span<double> out, double scale = 1.0);
void centred_gradient_sq(const Lattice4& lat, std::span<const double> in, std::span<double> out);

double dot(std::span<const double> a, std::span<const double> b);
double weighted_dot(std::span<const double> w, std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> a);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

}  // namespace omp

}  // namespace yamabe::kernels
