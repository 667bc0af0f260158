#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// Periodic sampling grids.  A d-dimensional grid covers [-L, L)^d with n
// samples per axis (n a power of two); the dual frequency lattice is
// [-pi n / (2L), pi n / (2L))^d with spacing pi / L.  Quadrature weights are
// plain Riemann cells: (2L/n)^d in position, (pi/L)^d in frequency.

namespace angb {

using cdouble = std::complex<double>;

struct Grid {
  int d = 1;       // 1 for signals, 2 for operator kernels
  int n = 0;       // samples per axis, power of two >= 8
  double L = 0.0;  // half-extent of the position box

  Grid() = default;
  Grid(int d_, int n_, double L_);

  std::size_t size() const;                   // n^d
  double dx() const { return 2.0 * L / n; }   // position spacing
  double dxi() const;                         // frequency spacing pi/L
  double xi_max() const;                      // band half-width pi n / (2L)
  double x_at(int i) const { return -L + i * dx(); }
  double xi_at(int k) const { return (k - n / 2) * dxi(); }

  bool operator==(const Grid&) const = default;
};

struct Signal {
  Grid grid;
  std::vector<cdouble> values;  // row-major over axes

  Signal() = default;
  explicit Signal(const Grid& g);

  double l2_norm() const;  // sqrt(dx^d * sum |u|^2)
};

struct Window {
  Grid grid;
  std::vector<cdouble> values;
  double l2_norm = 0.0;  // discrete L2 norm after rescaling (== 1)
};

// h^d sum conj-free inner product <u, v> = dx^d * sum u_i * conj(v_i).
cdouble inner_product(const Signal& u, const Signal& v);

}  // namespace angb
