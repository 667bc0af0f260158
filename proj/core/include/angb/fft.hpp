#pragma once

#include <complex>
#include <cstddef>

// Centered continuous-Fourier surrogates backed by FFTW.  With the centered
// lattices y_j = -L + j h (h = 2L/n) and xi_k = (k - n/2) pi/L,
//
//   forward:  out_k = (2 pi)^{-d/2} h^d     sum_j in_j exp(-i <y_j, xi_k>)
//   inverse:  out_j = (2 pi)^{-d/2} (pi/L)^d sum_k in_k exp(+i <y_j, xi_k>)
//
// which compose to the identity exactly.  Thread safe; plans are cached per
// (d, n, direction) behind a mutex and executed with the new-array interface.

namespace angb {

void centered_fft(int d, int n, double L, const std::complex<double>* in,
                  std::complex<double>* out, bool inverse);

}  // namespace angb
