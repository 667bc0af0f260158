#pragma once

#include <utility>

#include "angb/grid.hpp"

// Short-time Fourier transform on the periodic grid with the symmetric
// normalization
//
//   V_phi u (x, xi) = (2 pi)^{-d/2} Integral u(y) conj(phi(y - x)) e^{-i y xi} dy,
//
// realized by one centered FFT per window position (translation is circular;
// for Gaussian windows the wrap-around is below double precision for L >~ 8).

namespace angb {

struct StftField {
  Grid grid;                    // grid of the analysed signal
  std::vector<cdouble> values;  // row-major: position indices, then frequency indices

  std::size_t index(std::size_t pos_flat, std::size_t freq_flat) const {
    return pos_flat * grid.size() + freq_flat;
  }
};

// L2-normalized Gaussian window phi(y) = (pi w^2)^{-d/4} exp(-|y|^2 / (2 w^2)),
// rescaled so the discrete norm is exactly 1.
Window gaussian_window(const Grid& grid, double width = 1.0);

// One row of the transform: V_phi u (x_p, .) over the whole frequency lattice.
// pos_flat indexes the position lattice row-major.
void stft_slice(const Signal& u, const Window& phi, std::size_t pos_flat, cdouble* out);

// Full transform; refuses grids whose field would not fit in memory.
StftField stft(const Signal& u, const Window& phi);

// Inversion  u = (2 pi)^{-d/2} SumSum F(x, xi) M_xi T_x phi dx dxi
// (valid when ||phi||_2 = 1).
Signal istft(const StftField& field, const Window& phi);

// Returns { <u, f>, <V_phi u, V_phi f> }; the two agree for unit-norm windows.
std::pair<cdouble, cdouble> moyal_check(const Signal& u, const Signal& f, const Window& phi);

// sup over the phase-space lattice of <z>^order |V(z)|, <z> = sqrt(1 + |z|^2).
double seminorm(const StftField& field, int order);

}  // namespace angb
