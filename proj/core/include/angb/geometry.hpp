#pragma once

#include <cstddef>
#include <vector>

// Anisotropic phase-space geometry.  A point z = (x, xi) is scaled along the
// curve lambda -> (lambda * x, lambda^s * xi); the normalizer lambda_s(z) is
// the unique lambda > 0 with
//
//   lambda^{-2} |x|^2 + lambda^{-2s} |xi|^2 = 1,
//
// and the projection pi_s(z) = (x / lambda, xi / lambda^s) lands on the unit
// sphere of R^{2d}.  Cones around a direction come in two flavours: a ball
// around the projected direction, or a tube around the scaling curve.

namespace angb {

struct PhasePoint {
  std::vector<double> x;   // position part
  std::vector<double> xi;  // frequency part

  PhasePoint() = default;
  PhasePoint(std::vector<double> x_, std::vector<double> xi_);

  std::size_t dim() const { return x.size(); }
  double norm() const;       // Euclidean norm of (x, xi)
  bool is_origin() const;    // |z| below the representable floor
};

struct AnisotropyParam {
  double s = 1.0;
  explicit AnisotropyParam(double s_);
};

// lambda_s(z); throws std::domain_error at the origin.
double lambda_s(const PhasePoint& z, AnisotropyParam s);

// pi_s(z); unit-norm up to roundoff.  Throws at the origin.
PhasePoint project_s(const PhasePoint& z, AnisotropyParam s);

enum class SConeKind {
  ProjectionBall,  // |pi_s(z) - z0| < eps, z0 on the unit sphere
  ScaledBall,      // exists lambda > 0 with (lambda x, lambda^s xi) in z0 + B_eps
};

struct SConeSpec {
  SConeKind kind = SConeKind::ScaledBall;
  PhasePoint center;
  double epsilon = 0.0;
};

// Membership of z (nonzero) in the cone.  The ScaledBall test minimizes
// |(lambda x, lambda^s xi) - center| over lambda by golden-section search.
bool in_cone(const PhasePoint& z, const SConeSpec& cone, AnisotropyParam s);

// Flat-layout variants used by the scan machinery: z points to 2*d doubles,
// positions first.
double lambda_s_flat(const double* z, std::size_t d, double s);
void project_s_flat(const double* z, std::size_t d, double s, double* out);

}  // namespace angb
