#include "angb/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "angb/fft.hpp"
#include "angb/parallel.hpp"

namespace angb {

namespace {

// d/dxi of the full polynomial (d = 1).
double symbol_deriv(const PolySymbol& p, double xi) {
  double acc = 0.0;
  for (const auto& [alpha, c] : p.coeffs) {
    int a = alpha[0];
    if (a == 0 || c == 0.0) continue;
    acc += c * a * std::pow(xi, a - 1);
  }
  return acc;
}

// Smallest symmetric band around 0 holding all but `tail` of sum |hat|^2.
double occupied_band(const std::vector<cdouble>& hat, const Grid& g, double tail) {
  double total = 0.0;
  for (const auto& v : hat) total += std::norm(v);
  if (total <= 0.0) return 0.0;
  // Shrink the band from the edges while the excluded mass stays small.
  std::vector<std::pair<double, double>> by_freq(hat.size());
  for (std::size_t k = 0; k < hat.size(); ++k)
    by_freq[k] = {std::abs(g.xi_at(static_cast<int>(k))), std::norm(hat[k])};
  std::sort(by_freq.begin(), by_freq.end());
  double kept = 0.0;
  double band = 0.0;
  for (const auto& [f, m2] : by_freq) {
    kept += m2;
    band = f;
    if (kept >= (1.0 - tail) * total) break;
  }
  return band;
}

}  // namespace

double transport_reach(const Signal& u0, const PolySymbol& p, double t) {
  const Grid& g = u0.grid;
  if (g.d != 1 || p.d != 1) throw std::invalid_argument("transport_reach: d = 1 only");
  std::vector<cdouble> hat(g.size());
  centered_fft(1, g.n, g.L, u0.values.data(), hat.data(), /*inverse=*/false);
  double band = occupied_band(hat, g, 1e-6);
  double reach = 0.0;
  for (int k = 0; k < g.n; ++k) {
    double xi = g.xi_at(k);
    if (std::abs(xi) <= band)
      reach = std::max(reach, std::abs(t) * std::abs(symbol_deriv(p, xi)));
  }
  return reach;
}

Signal evolve(const Signal& u0, const PolySymbol& p, double t, SpectralReport* report) {
  const Grid& g = u0.grid;
  if (g.d != 1 || p.d != 1) throw std::invalid_argument("evolve: d = 1 only");
  const int n = g.n;
  std::vector<cdouble> hat(n);
  centered_fft(1, n, g.L, u0.values.data(), hat.data(), /*inverse=*/false);

  if (report) {
    double total = 0.0, outer = 0.0;
    for (int k = 0; k < n; ++k) {
      double m2 = std::norm(hat[k]);
      total += m2;
      if (std::abs(g.xi_at(k)) > 0.5 * g.xi_max()) outer += m2;
    }
    report->mass_above_halfband = total > 0.0 ? outer / total : 0.0;
    double band = occupied_band(hat, g, 1e-6);
    double reach = 0.0;
    for (int k = 0; k < n; ++k) {
      double xi = g.xi_at(k);
      if (std::abs(xi) <= band)
        reach = std::max(reach, std::abs(t) * std::abs(symbol_deriv(p, xi)));
    }
    report->transport_estimate = reach;
  }

  for (int k = 0; k < n; ++k) {
    double ph = -t * eval_symbol(p, {g.xi_at(k)});
    hat[k] *= cdouble(std::cos(ph), std::sin(ph));
  }
  Signal out(g);
  centered_fft(1, n, g.L, hat.data(), out.values.data(), /*inverse=*/true);
  return out;
}

Signal evolve_adjoint_roundtrip(const Signal& u0, const PolySymbol& p, double t) {
  Signal fwd = evolve(u0, p, t);
  return evolve(fwd, p, -t);  // adjoint of the unitary multiplier
}

Signal build_kernel(const PolySymbol& p, double t, const Grid& grid1d) {
  if (grid1d.d != 1) throw std::invalid_argument("build_kernel: base grid must be 1-D");
  const int n = grid1d.n;
  if (n > 2048) throw std::invalid_argument("build_kernel: n > 2048 kernel would not fit");
  // k_t = (2 pi)^{-1/2} F^{-1} exp(-i t p) on the band.
  std::vector<cdouble> mult(n), k(n);
  for (int j = 0; j < n; ++j) {
    double ph = -t * eval_symbol(p, {grid1d.xi_at(j)});
    mult[j] = cdouble(std::cos(ph), std::sin(ph));
  }
  centered_fft(1, n, grid1d.L, mult.data(), k.data(), /*inverse=*/true);
  const double front = 1.0 / std::sqrt(2.0 * 3.14159265358979323846);
  for (auto& v : k) v *= front;

  Grid g2(2, n, grid1d.L);
  Signal K(g2);
  // Construction 1: circulant fill, K(x_i, y_j) = k[(i - j + n/2) mod n].
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int idx = (i - j + n / 2) % n;
      if (idx < 0) idx += n;
      K.values[std::size_t(i) * n + j] = k[idx];
    }
  // Construction 2: pull (1 (x) k_t) back through kappa(x, y) = (x + y/2, x - y/2);
  // the second coordinate of kappa^{-1}(x, y) is x - y wrapped into [-L, L).
  double peak = 0.0;
  for (const auto& v : k) peak = std::max(peak, std::abs(v));
  const double h = grid1d.dx();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double b = grid1d.x_at(i) - grid1d.x_at(j);
      double wrapped = b - 2.0 * grid1d.L * std::floor((b + grid1d.L) / (2.0 * grid1d.L));
      int idx = static_cast<int>(std::llround((wrapped + grid1d.L) / h)) % n;
      cdouble alt = k[idx];
      if (std::abs(alt - K.values[std::size_t(i) * n + j]) > 1e-10 * peak)
        throw std::logic_error("build_kernel: constructions disagree");
    }
  return K;
}

Signal identity_kernel(const Grid& grid1d) {
  if (grid1d.d != 1) throw std::invalid_argument("identity_kernel: base grid must be 1-D");
  Grid g2(2, grid1d.n, grid1d.L);
  Signal K(g2);
  for (int i = 0; i < grid1d.n; ++i)
    K.values[std::size_t(i) * grid1d.n + i] = 1.0 / grid1d.dx();
  return K;
}

Signal apply_kernel(const Signal& kernel, const Signal& u) {
  if (kernel.grid.d != 2 || u.grid.d != 1 || kernel.grid.n != u.grid.n ||
      kernel.grid.L != u.grid.L)
    throw std::invalid_argument("apply_kernel: incompatible grids");
  const int n = u.grid.n;
  Signal out(u.grid);
  const double h = u.grid.dx();
  for (int i = 0; i < n; ++i) {
    cdouble acc = 0.0;
    for (int j = 0; j < n; ++j) acc += kernel.values[std::size_t(i) * n + j] * u.values[j];
    out.values[i] = h * acc;
  }
  return out;
}

StftApplyResult apply_via_stft(const Signal& kernel, const Signal& u, const Window& phi,
                               const std::vector<Signal>& tests) {
  const Grid& g1 = u.grid;
  if (kernel.grid.d != 2 || g1.d != 1 || kernel.grid.n != g1.n || kernel.grid.L != g1.L)
    throw std::invalid_argument("apply_via_stft: incompatible grids");
  if (!(phi.grid == g1)) throw std::invalid_argument("apply_via_stft: window grid mismatch");
  const int n = g1.n;
  const std::size_t nn = std::size_t(n) * n;

  // Product window Phi = phi (x) phi on the doubled grid.
  Window Phi;
  Phi.grid = kernel.grid;
  Phi.values.resize(nn);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      Phi.values[std::size_t(i) * n + j] = phi.values[i] * phi.values[j];
  Phi.l2_norm = 1.0;

  Window phi_conj = phi;
  for (auto& v : phi_conj.values) v = std::conj(v);

  // Dense 1-D fields for the signal and the test family.
  StftField Vu = stft(u, phi_conj);
  std::vector<StftField> Vpsi;
  Vpsi.reserve(tests.size());
  for (const auto& psi : tests) {
    if (!(psi.grid == g1)) throw std::invalid_argument("apply_via_stft: test grid mismatch");
    Vpsi.push_back(stft(psi, phi));
  }

  const double cell2 = g1.dx() * g1.dxi();  // one (position, frequency) cell
  std::vector<std::vector<cdouble>> partial(n, std::vector<cdouble>(tests.size(), 0.0));
  std::vector<cdouble> T(nn, 0.0);  // contracted field, indexed (x_a, xi_k)

  parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t a) {
    std::vector<cdouble> slice(nn), s1(n);
    for (int b = 0; b < n; ++b) {
      stft_slice(kernel, Phi, a * n + b, slice.data());
      // s1(k) = Sum_l V_Phi K (x_a, y_b, xi_k, -eta_l) V_conj(phi) u (y_b, eta_l)
      for (int k = 0; k < n; ++k) {
        cdouble acc = 0.0;
        const cdouble* row = slice.data() + std::size_t(k) * n;
        const cdouble* vu = Vu.values.data() + std::size_t(b) * n;
        for (int l = 0; l < n; ++l) acc += row[(n - l) % n] * vu[l];
        s1[k] = acc;
      }
      for (int k = 0; k < n; ++k) T[a * n + k] += s1[k] * cell2;
      for (std::size_t pidx = 0; pidx < tests.size(); ++pidx) {
        const cdouble* vp = Vpsi[pidx].values.data() + a * n;
        cdouble acc = 0.0;
        for (int k = 0; k < n; ++k) acc += s1[k] * std::conj(vp[k]);
        partial[a][pidx] += acc;
      }
    }
  });

  StftApplyResult out;
  out.pairings.assign(tests.size(), 0.0);
  for (int a = 0; a < n; ++a)
    for (std::size_t pidx = 0; pidx < tests.size(); ++pidx)
      out.pairings[pidx] += partial[a][pidx];
  for (auto& v : out.pairings) v *= cell2 * cell2;

  StftField Tf;
  Tf.grid = g1;
  Tf.values = std::move(T);
  out.synthesis = istft(Tf, phi);
  return out;
}

}  // namespace angb
