#include "angb/signals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace angb {

double smoothstep5(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double taper(double y, double flat, double end) {
  double a = std::abs(y);
  if (a <= flat) return 1.0;
  if (a >= end) return 0.0;
  return 1.0 - smoothstep5((a - flat) / (end - flat));
}

Signal make_gaussian(const Grid& grid, double width) {
  if (grid.d != 1) throw std::invalid_argument("make_gaussian: d = 1 only");
  Signal u(grid);
  const double norm = std::pow(std::numbers::pi * width * width, -0.25);
  for (int i = 0; i < grid.n; ++i) {
    double y = grid.x_at(i);
    u.values[i] = norm * std::exp(-y * y / (2.0 * width * width));
  }
  return u;
}

Signal make_hermite(const Grid& grid, int k) {
  if (grid.d != 1) throw std::invalid_argument("make_hermite: d = 1 only");
  if (k < 0 || k > 4) throw std::invalid_argument("make_hermite: order 0..4");
  Signal u(grid);
  const double norm = std::pow(std::numbers::pi, -0.25);
  for (int i = 0; i < grid.n; ++i) {
    double y = grid.x_at(i);
    double h;
    switch (k) {  // physicists' Hermite polynomials, orthonormal weights
      case 0: h = 1.0; break;
      case 1: h = std::numbers::sqrt2 * y; break;
      case 2: h = (2.0 * y * y - 1.0) / std::numbers::sqrt2; break;
      case 3: h = (2.0 * y * y * y - 3.0 * y) / std::sqrt(3.0); break;
      default: h = (4.0 * y * y * y * y - 12.0 * y * y + 3.0) / (2.0 * std::sqrt(6.0)); break;
    }
    u.values[i] = norm * h * std::exp(-y * y / 2.0);
  }
  return u;
}

Signal make_poly_chirp(const Grid& grid, double c, int m, double flat, double end) {
  if (grid.d != 1) throw std::invalid_argument("make_poly_chirp: d = 1 only");
  if (m < 2) throw std::invalid_argument("make_poly_chirp: exponent m >= 2");
  if (flat <= 0.0) flat = grid.L / 2.0;
  if (end <= 0.0) end = 0.75 * grid.L;
  if (!(flat < end && end < grid.L))
    throw std::invalid_argument("make_poly_chirp: need 0 < flat < end < L");
  // Reject instantaneous frequencies beyond the lattice band.
  double fmax = std::abs(c) * m * std::pow(end, m - 1);
  if (fmax > grid.xi_max())
    throw std::invalid_argument("make_poly_chirp: chirp exceeds the frequency band");
  Signal u(grid);
  for (int i = 0; i < grid.n; ++i) {
    double y = grid.x_at(i);
    double t = taper(y, flat, end);
    if (t == 0.0) continue;
    double phase = c * std::pow(y, m);
    u.values[i] = t * cdouble(std::cos(phase), std::sin(phase));
  }
  return u;
}

}  // namespace angb
