#pragma once

#include <vector>

#include "angb/grid.hpp"
#include "angb/stft.hpp"
#include "angb/symbols.hpp"

// Constant-coefficient evolution u(t) = exp(-i t p(D)) u0 realized as a
// Fourier multiplier on the lattice band, its convolution kernel
// K_t(x, y) = k_t(x - y) with k_t = (2 pi)^{-d/2} F^{-1} exp(-i t p), and the
// phase-space quadrature that applies a kernel through STFTs:
//
//   <K u, psi> = Int V_Phi K (x, y, xi, -eta) conj(V_phi psi (x, xi))
//                    V_conj(phi) u (y, eta) dx dy dxi deta,  Phi = phi (x) phi.

namespace angb {

struct SpectralReport {
  double mass_above_halfband = 0.0;  // relative spectral mass with |xi| > band/2
  double transport_estimate = 0.0;   // max |t| |grad p(xi)| over the occupied band
};

// Multiplier evolution; the report flags aliasing risk and transport reach.
Signal evolve(const Signal& u0, const PolySymbol& p, double t,
              SpectralReport* report = nullptr);

// max |t| |p'(xi)| over the smallest symmetric band holding all but 1e-6 of
// the spectral mass; how far the flow moves the signal's bulk.
double transport_reach(const Signal& u0, const PolySymbol& p, double t);

// exp(+i t p(D)) exp(-i t p(D)) u0; equal to u0 up to roundoff.
Signal evolve_adjoint_roundtrip(const Signal& u0, const PolySymbol& p, double t);

// Kernel on the doubled grid: K(x_i, y_j) = k_t((x_i - y_j) mod 2L).  Built
// two ways (circulant fill and coordinate-map fill); throws if they disagree.
Signal build_kernel(const PolySymbol& p, double t, const Grid& grid1d);

// Identity surrogate: K_0(x_i, y_j) = delta_ij / dx.
Signal identity_kernel(const Grid& grid1d);

// Direct quadrature application (K u)(x) = Sum_y K(x, y) u(y) dy.
Signal apply_kernel(const Signal& kernel, const Signal& u);

struct StftApplyResult {
  std::vector<cdouble> pairings;  // <K u, psi_k> for each test signal
  Signal synthesis;               // istft of the contracted field ~ K u
};

// The phase-space quadrature above, evaluated over the full lattice with
// Riemann weights; one kernel STFT slice per position pair.
StftApplyResult apply_via_stft(const Signal& kernel, const Signal& u, const Window& phi,
                               const std::vector<Signal>& tests);

}  // namespace angb
