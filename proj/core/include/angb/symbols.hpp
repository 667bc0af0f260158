#pragma once

#include <map>
#include <vector>

#include "angb/geometry.hpp"

// Polynomial Fourier multipliers p(xi) = sum_{|alpha| <= m} c_alpha xi^alpha,
// their principal parts p_m, the bicharacteristic transport
// chi_t(x, xi) = (x + t grad p_m(xi), xi), and the anisotropically homogeneous
// elliptic symbols a(z) = g(|z|) lambda_s(z)^m used as non-characteristic
// witnesses.

namespace angb {

struct PolySymbol {
  int d = 1;                                   // number of frequency variables
  int order = 0;                               // m = max |alpha| with c_alpha != 0
  std::map<std::vector<int>, double> coeffs;   // multi-index -> coefficient

  PolySymbol() = default;
  PolySymbol(int d_, std::map<std::vector<int>, double> coeffs_);
};

double eval_symbol(const PolySymbol& p, const std::vector<double>& xi);

// Terms of top order m only.
PolySymbol principal_part(const PolySymbol& p);

// grad p_m(xi); exact monomial differentiation.
std::vector<double> grad_principal(const PolySymbol& p, const std::vector<double>& xi);

struct FlowMap {
  PolySymbol symbol;
  double t = 0.0;
};

// chi_t(x, xi) = (x + t grad p_m(xi), xi).
PhasePoint flow(const FlowMap& f, const PhasePoint& z);

struct EllipticSymbol {
  double s = 1.0;  // anisotropy
  double m = 1.0;  // homogeneity degree
};

// a(z) = g(|z|) * lambda_s(z)^m with g a quintic cutoff vanishing on
// [0, 1/2] and equal to 1 on [1, inf).
double elliptic_symbol_eval(const EllipticSymbol& a, const PhasePoint& z);

struct EllipticityReport {
  bool ok = false;
  double c_lower = 0.0;  // measured constants in c^-1 mu^m <= |a| <= c mu^m, |z| >= 1
  double c_upper = 0.0;
};

// Samples |z| >= 1 and compares |a| with mu_s(z)^m, mu_s = 1 + |x| + |xi|^{1/s}.
EllipticityReport ellipticity_check(const EllipticSymbol& a, int n_samples, unsigned seed);

}  // namespace angb
