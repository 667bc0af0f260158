#include "angb/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace angb {

namespace {

constexpr double kOriginFloor = 1e-300;

double sq_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double a : v) s += a * a;
  return s;
}

// f(lambda) = lambda^{-2} X + lambda^{-2s} Y - 1, strictly decreasing on (0, inf).
double balance(double lam, double X, double Y, double s) {
  return X / (lam * lam) + Y * std::pow(lam, -2.0 * s) - 1.0;
}

double balance_deriv(double lam, double X, double Y, double s) {
  return -2.0 * X / (lam * lam * lam) - 2.0 * s * Y * std::pow(lam, -2.0 * s - 1.0);
}

}  // namespace

PhasePoint::PhasePoint(std::vector<double> x_, std::vector<double> xi_)
    : x(std::move(x_)), xi(std::move(xi_)) {
  if (x.size() != xi.size())
    throw std::invalid_argument("PhasePoint: position/frequency dimension mismatch");
}

double PhasePoint::norm() const {
  return std::sqrt(sq_norm(x) + sq_norm(xi));
}

bool PhasePoint::is_origin() const { return norm() < kOriginFloor; }

AnisotropyParam::AnisotropyParam(double s_) : s(s_) {
  if (!(s_ > 0.0) || !std::isfinite(s_))
    throw std::invalid_argument("AnisotropyParam: s must be positive and finite");
}

double lambda_s_flat(const double* z, std::size_t d, double s) {
  double X = 0.0, Y = 0.0;
  for (std::size_t i = 0; i < d; ++i) X += z[i] * z[i];
  for (std::size_t i = 0; i < d; ++i) Y += z[d + i] * z[d + i];
  if (std::sqrt(X + Y) < kOriginFloor)
    throw std::domain_error("lambda_s: undefined at the origin");

  // At lambda = max(|x|, |xi|^{1/s}) the dominating term equals 1, so f >= 0
  // there; the loops below only absorb roundoff.
  double lo = std::max(std::sqrt(X), Y > 0.0 ? std::pow(Y, 0.5 / s) : 0.0);
  if (lo <= 0.0) lo = std::sqrt(X + Y);
  double hi = lo;
  while (balance(lo, X, Y, s) < 0.0) lo *= 0.5;
  while (balance(hi, X, Y, s) > 0.0) hi *= 2.0;

  // Bisection to relative 1e-13, then two Newton polish steps.
  for (int it = 0; it < 200 && (hi - lo) > 1e-13 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (balance(mid, X, Y, s) > 0.0 ? lo : hi) = mid;
  }
  double lam = 0.5 * (lo + hi);
  for (int it = 0; it < 2; ++it) {
    double f = balance(lam, X, Y, s);
    double df = balance_deriv(lam, X, Y, s);
    if (df != 0.0) {
      double next = lam - f / df;
      if (next > 0.0 && std::isfinite(next)) lam = next;
    }
  }
  return lam;
}

void project_s_flat(const double* z, std::size_t d, double s, double* out) {
  double lam = lambda_s_flat(z, d, s);
  double ps = std::pow(lam, s);
  for (std::size_t i = 0; i < d; ++i) out[i] = z[i] / lam;
  for (std::size_t i = 0; i < d; ++i) out[d + i] = z[d + i] / ps;
}

double lambda_s(const PhasePoint& z, AnisotropyParam s) {
  std::vector<double> flat(z.x);
  flat.insert(flat.end(), z.xi.begin(), z.xi.end());
  return lambda_s_flat(flat.data(), z.dim(), s.s);
}

PhasePoint project_s(const PhasePoint& z, AnisotropyParam s) {
  std::vector<double> flat(z.x);
  flat.insert(flat.end(), z.xi.begin(), z.xi.end());
  std::vector<double> out(flat.size());
  project_s_flat(flat.data(), z.dim(), s.s, out.data());
  std::size_t d = z.dim();
  return PhasePoint(std::vector<double>(out.begin(), out.begin() + d),
                    std::vector<double>(out.begin() + d, out.end()));
}

namespace {

// Squared distance from the scaling curve of z at parameter lambda to the center.
double curve_dist2(const PhasePoint& z, const PhasePoint& c, double s, double lam) {
  double ps = std::pow(lam, s);
  double acc = 0.0;
  for (std::size_t i = 0; i < z.dim(); ++i) {
    double dx = lam * z.x[i] - c.x[i];
    double dxi = ps * z.xi[i] - c.xi[i];
    acc += dx * dx + dxi * dxi;
  }
  return acc;
}

}  // namespace

bool in_cone(const PhasePoint& z, const SConeSpec& cone, AnisotropyParam s) {
  if (z.is_origin())
    throw std::domain_error("in_cone: undefined at the origin");
  if (!(cone.epsilon > 0.0))
    throw std::invalid_argument("in_cone: epsilon must be positive");
  if (cone.center.dim() != z.dim())
    throw std::invalid_argument("in_cone: dimension mismatch");

  if (cone.kind == SConeKind::ProjectionBall) {
    PhasePoint p = project_s(z, s);
    double acc = 0.0;
    for (std::size_t i = 0; i < z.dim(); ++i) {
      double dx = p.x[i] - cone.center.x[i];
      double dxi = p.xi[i] - cone.center.xi[i];
      acc += dx * dx + dxi * dxi;
    }
    return std::sqrt(acc) < cone.epsilon;
  }

  // ScaledBall: minimize the curve-to-center distance over lambda.  The curve
  // passes through pi_s(z) at lambda = 1/lambda_s(z); start the bracket there
  // and widen until the objective grows on both flanks.
  double lam0 = 1.0 / lambda_s(z, s);
  double a = lam0 / 8.0, b = lam0 * 8.0;
  double fa = curve_dist2(z, cone.center, s.s, a);
  double fb = curve_dist2(z, cone.center, s.s, b);
  double fm = curve_dist2(z, cone.center, s.s, lam0);
  for (int guard = 0; guard < 60 && fa < fm; ++guard) {
    a /= 4.0;
    fa = curve_dist2(z, cone.center, s.s, a);
  }
  for (int guard = 0; guard < 60 && fb < fm; ++guard) {
    b *= 4.0;
    fb = curve_dist2(z, cone.center, s.s, b);
  }

  // Golden-section on log-lambda to relative tolerance 1e-10.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double la = std::log(a), lb = std::log(b);
  double lc = lb - inv_phi * (lb - la);
  double ld = la + inv_phi * (lb - la);
  double fc = curve_dist2(z, cone.center, s.s, std::exp(lc));
  double fd = curve_dist2(z, cone.center, s.s, std::exp(ld));
  while (lb - la > 1e-10) {
    if (fc < fd) {
      lb = ld; ld = lc; fd = fc;
      lc = lb - inv_phi * (lb - la);
      fc = curve_dist2(z, cone.center, s.s, std::exp(lc));
    } else {
      la = lc; lc = ld; fc = fd;
      ld = la + inv_phi * (lb - la);
      fd = curve_dist2(z, cone.center, s.s, std::exp(ld));
    }
  }
  double best = std::min(std::min(fc, fd), fm);
  return std::sqrt(best) < cone.epsilon;
}

}  // namespace angb
