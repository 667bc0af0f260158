#include "angb/stft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "angb/fft.hpp"

namespace angb {

namespace {

// Largest field we are willing to materialize (complex doubles).
constexpr std::size_t kMaxFieldEntries = std::size_t(1) << 26;

double cell_volume(const Grid& g, double per_axis) {
  double v = 1.0;
  for (int i = 0; i < g.d; ++i) v *= per_axis;
  return v;
}

}  // namespace

Window gaussian_window(const Grid& grid, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_window: width must be positive");
  Window w;
  w.grid = grid;
  w.values.resize(grid.size());
  const double norm1 = std::pow(std::numbers::pi * width * width, -0.25);
  if (grid.d == 1) {
    for (int i = 0; i < grid.n; ++i) {
      double y = grid.x_at(i);
      w.values[i] = norm1 * std::exp(-y * y / (2.0 * width * width));
    }
  } else {
    for (int i = 0; i < grid.n; ++i)
      for (int j = 0; j < grid.n; ++j) {
        double y1 = grid.x_at(i), y2 = grid.x_at(j);
        w.values[std::size_t(i) * grid.n + j] =
            norm1 * norm1 * std::exp(-(y1 * y1 + y2 * y2) / (2.0 * width * width));
      }
  }
  // Rescale to exact discrete unit norm; required by the inversion formula.
  Signal tmp;
  tmp.grid = grid;
  tmp.values = w.values;
  double nrm = tmp.l2_norm();
  for (auto& v : w.values) v /= nrm;
  w.l2_norm = 1.0;
  return w;
}

void stft_slice(const Signal& u, const Window& phi, std::size_t pos_flat, cdouble* out) {
  const Grid& g = u.grid;
  if (!(g == phi.grid)) throw std::invalid_argument("stft_slice: grid mismatch");
  const int n = g.n;
  std::vector<cdouble> work(g.size());
  if (g.d == 1) {
    const int o = static_cast<int>(pos_flat) - n / 2;  // translation offset in cells
    for (int i = 0; i < n; ++i) {
      int src = (i - o) % n;
      if (src < 0) src += n;
      work[i] = u.values[i] * std::conj(phi.values[src]);
    }
  } else {
    const int o1 = static_cast<int>(pos_flat) / n - n / 2;
    const int o2 = static_cast<int>(pos_flat) % n - n / 2;
    for (int i = 0; i < n; ++i) {
      int s1 = (i - o1) % n;
      if (s1 < 0) s1 += n;
      for (int j = 0; j < n; ++j) {
        int s2 = (j - o2) % n;
        if (s2 < 0) s2 += n;
        work[std::size_t(i) * n + j] =
            u.values[std::size_t(i) * n + j] * std::conj(phi.values[std::size_t(s1) * n + s2]);
      }
    }
  }
  centered_fft(g.d, n, g.L, work.data(), out, /*inverse=*/false);
}

StftField stft(const Signal& u, const Window& phi) {
  const Grid& g = u.grid;
  std::size_t total = g.size() * g.size();
  if (total > kMaxFieldEntries)
    throw std::invalid_argument("stft: field too large to materialize; use stft_slice");
  StftField field;
  field.grid = g;
  field.values.resize(total);
  for (std::size_t p = 0; p < g.size(); ++p)
    stft_slice(u, phi, p, field.values.data() + p * g.size());
  return field;
}

Signal istft(const StftField& field, const Window& phi) {
  const Grid& g = field.grid;
  if (!(g == phi.grid)) throw std::invalid_argument("istft: grid mismatch");
  const int n = g.n;
  Signal u(g);
  std::vector<cdouble> row(g.size());
  const double dvol = cell_volume(g, g.dx());

  for (std::size_t p = 0; p < g.size(); ++p) {
    // Inverse transform over the frequency slots gives
    // (2 pi)^{-d/2} (pi/L)^d Sum_k F(x_p, xi_k) e^{+i y xi_k}; the remaining
    // synthesis factor is T_{x_p} phi(y) dx^d (the (2 pi)^{+-d/2} cancel).
    centered_fft(g.d, n, g.L, field.values.data() + p * g.size(), row.data(),
                 /*inverse=*/true);
    if (g.d == 1) {
      const int o = static_cast<int>(p) - n / 2;
      for (int i = 0; i < n; ++i) {
        int src = (i - o) % n;
        if (src < 0) src += n;
        u.values[i] += dvol * phi.values[src] * row[i];
      }
    } else {
      const int o1 = static_cast<int>(p) / n - n / 2;
      const int o2 = static_cast<int>(p) % n - n / 2;
      for (int i = 0; i < n; ++i) {
        int s1 = (i - o1) % n;
        if (s1 < 0) s1 += n;
        for (int j = 0; j < n; ++j) {
          int s2 = (j - o2) % n;
          if (s2 < 0) s2 += n;
          u.values[std::size_t(i) * n + j] +=
              dvol * phi.values[std::size_t(s1) * n + s2] * row[std::size_t(i) * n + j];
        }
      }
    }
  }
  return u;
}

std::pair<cdouble, cdouble> moyal_check(const Signal& u, const Signal& f, const Window& phi) {
  cdouble direct = inner_product(u, f);
  const Grid& g = u.grid;
  const double cell = cell_volume(g, g.dx()) * cell_volume(g, g.dxi());
  // Stream slice-by-slice; no need to hold both fields.
  std::vector<cdouble> su(g.size()), sf(g.size());
  cdouble acc = 0.0;
  for (std::size_t p = 0; p < g.size(); ++p) {
    stft_slice(u, phi, p, su.data());
    stft_slice(f, phi, p, sf.data());
    for (std::size_t k = 0; k < g.size(); ++k) acc += su[k] * std::conj(sf[k]);
  }
  return {direct, cell * acc};
}

double seminorm(const StftField& field, int order) {
  if (order < 0) throw std::invalid_argument("seminorm: order must be >= 0");
  const Grid& g = field.grid;
  const int n = g.n;
  double best = 0.0;
  for (std::size_t p = 0; p < g.size(); ++p) {
    double x2 = 0.0;
    if (g.d == 1) {
      double x = g.x_at(static_cast<int>(p));
      x2 = x * x;
    } else {
      double x1 = g.x_at(static_cast<int>(p) / n), x2b = g.x_at(static_cast<int>(p) % n);
      x2 = x1 * x1 + x2b * x2b;
    }
    for (std::size_t k = 0; k < g.size(); ++k) {
      double xi2 = 0.0;
      if (g.d == 1) {
        double xi = g.xi_at(static_cast<int>(k));
        xi2 = xi * xi;
      } else {
        double a = g.xi_at(static_cast<int>(k) / n), b = g.xi_at(static_cast<int>(k) % n);
        xi2 = a * a + b * b;
      }
      double w = std::pow(1.0 + x2 + xi2, 0.5 * order);
      double mag = std::abs(field.values[field.index(p, k)]);
      if (w * mag > best) best = w * mag;
    }
  }
  return best;
}

}  // namespace angb
