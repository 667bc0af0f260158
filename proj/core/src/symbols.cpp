#include "angb/symbols.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "angb/signals.hpp"

namespace angb {

namespace {

constexpr int kMaxOrder = 12;

int multi_order(const std::vector<int>& alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

}  // namespace

PolySymbol::PolySymbol(int d_, std::map<std::vector<int>, double> coeffs_)
    : d(d_), coeffs(std::move(coeffs_)) {
  if (d < 1 || d > 2) throw std::invalid_argument("PolySymbol: d must be 1 or 2");
  order = 0;
  for (const auto& [alpha, c] : coeffs) {
    if (static_cast<int>(alpha.size()) != d)
      throw std::invalid_argument("PolySymbol: multi-index arity mismatch");
    for (int a : alpha)
      if (a < 0) throw std::invalid_argument("PolySymbol: negative exponent");
    int o = multi_order(alpha);
    if (o > kMaxOrder) throw std::invalid_argument("PolySymbol: order exceeds 12");
    if (c != 0.0 && o > order) order = o;
  }
}

double eval_symbol(const PolySymbol& p, const std::vector<double>& xi) {
  if (static_cast<int>(xi.size()) != p.d)
    throw std::invalid_argument("eval_symbol: dimension mismatch");
  double acc = 0.0;
  for (const auto& [alpha, c] : p.coeffs) {
    double term = c;
    for (int i = 0; i < p.d; ++i)
      for (int k = 0; k < alpha[i]; ++k) term *= xi[i];
    acc += term;
  }
  return acc;
}

PolySymbol principal_part(const PolySymbol& p) {
  std::map<std::vector<int>, double> top;
  for (const auto& [alpha, c] : p.coeffs)
    if (c != 0.0 && multi_order(alpha) == p.order) top.emplace(alpha, c);
  return PolySymbol(p.d, std::move(top));
}

std::vector<double> grad_principal(const PolySymbol& p, const std::vector<double>& xi) {
  if (static_cast<int>(xi.size()) != p.d)
    throw std::invalid_argument("grad_principal: dimension mismatch");
  std::vector<double> g(p.d, 0.0);
  for (const auto& [alpha, c] : p.coeffs) {
    if (c == 0.0 || multi_order(alpha) != p.order) continue;
    for (int i = 0; i < p.d; ++i) {
      if (alpha[i] == 0) continue;
      double term = c * alpha[i];
      for (int j = 0; j < p.d; ++j) {
        int e = alpha[j] - (j == i ? 1 : 0);
        for (int k = 0; k < e; ++k) term *= xi[j];
      }
      g[i] += term;
    }
  }
  return g;
}

PhasePoint flow(const FlowMap& f, const PhasePoint& z) {
  if (static_cast<int>(z.dim()) != f.symbol.d)
    throw std::invalid_argument("flow: dimension mismatch");
  std::vector<double> g = grad_principal(f.symbol, z.xi);
  PhasePoint out = z;
  for (std::size_t i = 0; i < z.dim(); ++i) out.x[i] += f.t * g[i];
  return out;
}

double elliptic_symbol_eval(const EllipticSymbol& a, const PhasePoint& z) {
  if (!(a.s > 0.0)) throw std::invalid_argument("elliptic_symbol_eval: s > 0 required");
  double r = z.norm();
  if (r <= 0.5) return 0.0;  // cutoff region, including the origin
  double g = smoothstep5((r - 0.5) / 0.5);
  return g * std::pow(lambda_s(z, AnisotropyParam(a.s)), a.m);
}

EllipticityReport ellipticity_check(const EllipticSymbol& a, int n_samples, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
  std::uniform_real_distribution<double> logr(0.0, std::log(1e4));
  EllipticityReport rep;
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    double th = angle(rng);
    double r = std::exp(logr(rng));  // |z| in [1, 1e4]
    PhasePoint z({r * std::cos(th)}, {r * std::sin(th)});
    double mu = 1.0 + std::abs(z.x[0]) + std::pow(std::abs(z.xi[0]), 1.0 / a.s);
    double val = std::abs(elliptic_symbol_eval(a, z));
    double ratio = val / std::pow(mu, a.m);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  rep.c_lower = lo;
  rep.c_upper = hi;
  rep.ok = lo > 0.0 && std::isfinite(hi);
  return rep;
}

}  // namespace angb
