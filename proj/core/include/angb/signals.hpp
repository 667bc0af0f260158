#pragma once

#include "angb/grid.hpp"

// Test-signal generators.  Chirps are cut off by a C^2 quintic taper so the
// sampled signal is supported well inside the periodic box; the taper
// boundaries are explicit because the usable scan range of a chirp ends where
// its plateau does.

namespace angb {

// Quintic smoothstep: 0 for t <= 0, 1 for t >= 1, C^2 at both ends.
double smoothstep5(double t);

// 1 on [-flat, flat], 0 outside [-end, end], smooth in between.
double taper(double y, double flat, double end);

Signal make_gaussian(const Grid& grid, double width = 1.0);

// Hermite function of order k (k <= 4), L2-normalized.
Signal make_hermite(const Grid& grid, int k);

// exp(i c y^m) * taper(y; flat, end).  Defaults: flat = L/2, end = 3L/4.
Signal make_poly_chirp(const Grid& grid, double c, int m, double flat = 0.0,
                       double end = 0.0);

}  // namespace angb
