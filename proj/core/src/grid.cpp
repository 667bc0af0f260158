#include "angb/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace angb {

Grid::Grid(int d_, int n_, double L_) : d(d_), n(n_), L(L_) {
  if (d != 1 && d != 2) throw std::invalid_argument("Grid: d must be 1 or 2");
  if (n < 8 || (n & (n - 1)) != 0)
    throw std::invalid_argument("Grid: n must be a power of two >= 8");
  if (!(L > 0.0)) throw std::invalid_argument("Grid: L must be positive");
}

std::size_t Grid::size() const {
  std::size_t s = 1;
  for (int i = 0; i < d; ++i) s *= static_cast<std::size_t>(n);
  return s;
}

double Grid::dxi() const { return std::numbers::pi / L; }

double Grid::xi_max() const { return std::numbers::pi * n / (2.0 * L); }

Signal::Signal(const Grid& g) : grid(g), values(g.size()) {}

double Signal::l2_norm() const {
  double acc = 0.0;
  for (const auto& v : values) acc += std::norm(v);
  double cell = 1.0;
  for (int i = 0; i < grid.d; ++i) cell *= grid.dx();
  return std::sqrt(cell * acc);
}

cdouble inner_product(const Signal& u, const Signal& v) {
  if (!(u.grid == v.grid)) throw std::invalid_argument("inner_product: grid mismatch");
  cdouble acc = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) acc += u.values[i] * std::conj(v.values[i]);
  double cell = 1.0;
  for (int i = 0; i < u.grid.d; ++i) cell *= u.grid.dx();
  return cell * acc;
}

}  // namespace angb
