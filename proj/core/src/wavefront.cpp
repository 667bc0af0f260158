#include "angb/wavefront.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "angb/parallel.hpp"
#include "angb/sphere.hpp"

namespace angb {

namespace {

constexpr double kDroppedSlope = -1e6;  // sentinel for "no usable samples"
constexpr double kHausdorffInf = 1e9;

double deg2rad(double d) { return d * std::numbers::pi / 180.0; }
double rad2deg(double r) { return r * 180.0 / std::numbers::pi; }

// One bilinear corner lookup inside a fixed position slice.
struct Query {
  std::uint32_t pos = 0;   // flat position index of the slice
  std::uint32_t dir = 0;   // mesh direction
  std::uint16_t lam = 0;   // ladder slot
  float w = 0.0f;          // position-interpolation weight
  float f0 = 0.0f;         // fractional frequency coordinates (lattice units)
  float f1 = 0.0f;
};

double bilinear_mag(const cdouble* slice, int d, int n, float f0, float f1) {
  if (d == 1) {
    int k = static_cast<int>(f0);
    double t = f0 - k;
    double a = std::abs(slice[k]);
    double b = std::abs(slice[k + 1]);
    return (1.0 - t) * a + t * b;
  }
  int k0 = static_cast<int>(f0), k1 = static_cast<int>(f1);
  double t0 = f0 - k0, t1 = f1 - k1;
  double v00 = std::abs(slice[std::size_t(k0) * n + k1]);
  double v01 = std::abs(slice[std::size_t(k0) * n + k1 + 1]);
  double v10 = std::abs(slice[std::size_t(k0 + 1) * n + k1]);
  double v11 = std::abs(slice[std::size_t(k0 + 1) * n + k1 + 1]);
  return (1.0 - t0) * ((1.0 - t1) * v00 + t1 * v01) + t0 * ((1.0 - t1) * v10 + t1 * v11);
}

struct FitResult {
  double slope = kDroppedSlope;
  double r2 = 0.0;
};

// Least squares on (ln lambda, ln m) over the trailing fit window.
FitResult fit_trailing_slope(const std::vector<double>& lambdas,
                             const std::vector<double>& mags, double floor_abs,
                             double window_decades) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    if (mags[i] > floor_abs) {
      lx.push_back(std::log(lambdas[i]));
      ly.push_back(std::log(mags[i]));
    }
  if (lx.size() < 2) return {};
  const double span = window_decades * std::log(10.0);
  double cut = lx.back() - span;
  std::size_t first = 0;
  while (first < lx.size() && lx[first] < cut) ++first;
  if (lx.size() - first < 4) first = lx.size() >= 4 ? lx.size() - 4 : 0;

  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  std::size_t m = lx.size() - first;
  for (std::size_t i = first; i < lx.size(); ++i) {
    sx += lx[i]; sy += ly[i];
    sxx += lx[i] * lx[i]; sxy += lx[i] * ly[i]; syy += ly[i] * ly[i];
  }
  double vx = sxx - sx * sx / m;
  double vy = syy - sy * sy / m;
  double cxy = sxy - sx * sy / m;
  if (vx <= 0.0) return {};
  FitResult out;
  out.slope = cxy / vx;
  out.r2 = vy > 0.0 ? (cxy * cxy) / (vx * vy) : 1.0;
  return out;
}

DirectionSet estimate_impl(const Signal& u, const Window& phi, double s,
                           const ScanConfig& scan) {
  const Grid& g = u.grid;
  if (!(g == phi.grid)) throw std::invalid_argument("estimate_wf: grid mismatch");
  if (!(s > 0.0)) throw std::invalid_argument("estimate_wf: s must be positive");
  if (scan.samples_per_decade < 4)
    throw std::invalid_argument("estimate_wf: need >= 4 ladder samples per decade");
  const int d = g.d;
  const int n = g.n;

  DirectionMesh mesh = d == 1 ? s1_mesh(scan.n_dirs) : s3_mesh(scan.n_dirs);
  build_neighbors(mesh, scan.ball_cells);
  const std::size_t ndir = mesh.points.size();

  const double max_pos = scan.max_position > 0.0 ? scan.max_position : 0.75 * g.L;
  const double max_freq = scan.max_frequency > 0.0 ? scan.max_frequency : 0.75 * g.xi_max();
  if (max_pos >= g.L || max_freq >= g.xi_max())
    throw std::invalid_argument("estimate_wf: scan box must stay inside the grid");

  // Per-direction ladder caps keeping (lambda x0, lambda^s xi0) in the box.
  std::vector<double> cap(ndir);
  for (std::size_t i = 0; i < ndir; ++i) {
    double c = 1e12;
    for (int a = 0; a < d; ++a) {
      double xa = std::abs(mesh.points[i][a]);
      if (xa > 1e-14) c = std::min(c, max_pos / xa);
      double fa = std::abs(mesh.points[i][d + a]);
      if (fa > 1e-14) c = std::min(c, std::pow(max_freq / fa, 1.0 / s));
    }
    if (scan.lambda_max > 0.0) {
      if (scan.strict_ladder && c < scan.lambda_max)
        throw std::invalid_argument(
            "estimate_wf: ladder exits the grid for mesh direction " + std::to_string(i));
      c = std::min(c, scan.lambda_max);
    }
    cap[i] = c;
  }
  const double lam_min = scan.lambda_min;
  double global_cap = 0.0;
  for (double c : cap) global_cap = std::max(global_cap, c);
  if (!(global_cap > lam_min))
    throw std::invalid_argument("estimate_wf: empty ladder (lambda_min beyond the grid)");

  const double step = std::log(10.0) / scan.samples_per_decade;
  const int K =
      static_cast<int>(std::floor(std::log(global_cap / lam_min) / step)) + 1;
  std::vector<double> ladder(K);
  for (int j = 0; j < K; ++j) ladder[j] = lam_min * std::exp(j * step);
  std::vector<int> valid(ndir);
  for (std::size_t i = 0; i < ndir; ++i) {
    int v = 0;
    while (v < K && ladder[v] <= cap[i]) ++v;
    valid[i] = v;
  }

  // Enumerate bilinear corner queries.
  const double h = g.dx();
  const double dxi = g.dxi();
  std::vector<Query> queries;
  {
    std::size_t est = 0;
    for (std::size_t i = 0; i < ndir; ++i) est += valid[i];
    queries.reserve(est * (d == 1 ? 2 : 4));
  }
  for (std::size_t i = 0; i < ndir; ++i) {
    for (int j = 0; j < valid[i]; ++j) {
      const double lam = ladder[j];
      const double lam_s = std::pow(lam, s);
      double pc[2], fc[2];  // fractional lattice coordinates
      for (int a = 0; a < d; ++a) {
        pc[a] = (lam * mesh.points[i][a] + g.L) / h;
        fc[a] = lam_s * mesh.points[i][d + a] / dxi + n / 2;
      }
      int base[2];
      double frac[2];
      for (int a = 0; a < d; ++a) {
        base[a] = static_cast<int>(std::floor(pc[a]));
        frac[a] = pc[a] - base[a];
        if (base[a] < 0 || base[a] + 1 >= n)
          throw std::logic_error("estimate_wf: position ladder left the lattice");
        int fb = static_cast<int>(fc[a]);
        if (fb < 0 || fb + 1 >= n)
          throw std::logic_error("estimate_wf: frequency ladder left the lattice");
      }
      const int corners = 1 << d;
      for (int cbits = 0; cbits < corners; ++cbits) {
        double w = 1.0;
        std::uint32_t flat = 0;
        for (int a = 0; a < d; ++a) {
          int off = (cbits >> a) & 1;
          w *= off ? frac[a] : 1.0 - frac[a];
          flat = flat * n + static_cast<std::uint32_t>(base[a] + off);
        }
        if (w == 0.0 && cbits != 0) continue;
        Query q;
        q.pos = flat;
        q.dir = static_cast<std::uint32_t>(i);
        q.lam = static_cast<std::uint16_t>(j);
        q.w = static_cast<float>(w);
        q.f0 = static_cast<float>(fc[0]);
        q.f1 = static_cast<float>(d == 2 ? fc[1] : 0.0);
        queries.push_back(q);
      }
    }
  }

  // Group queries by slice, evaluate each slice once.
  std::vector<std::uint32_t> order(queries.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return queries[a].pos < queries[b].pos;
  });
  std::vector<std::size_t> group_start;
  for (std::size_t k = 0; k < order.size(); ++k)
    if (k == 0 || queries[order[k]].pos != queries[order[k - 1]].pos)
      group_start.push_back(k);
  group_start.push_back(order.size());
  const std::size_t n_groups = group_start.empty() ? 0 : group_start.size() - 1;

  std::vector<float> results(queries.size(), 0.0f);
  std::vector<double> group_max(n_groups, 0.0);
  parallel_for(0, n_groups, [&](std::size_t gi) {
    std::vector<cdouble> slice(g.size());
    const std::size_t lo = group_start[gi], hi = group_start[gi + 1];
    stft_slice(u, phi, queries[order[lo]].pos, slice.data());
    double mx = 0.0;
    for (const auto& v : slice) mx = std::max(mx, std::abs(v));
    group_max[gi] = mx;
    for (std::size_t k = lo; k < hi; ++k) {
      const Query& q = queries[order[k]];
      results[order[k]] =
          static_cast<float>(q.w * bilinear_mag(slice.data(), d, n, q.f0, q.f1));
    }
  });

  double global_mag = 0.0;
  for (double m : group_max) global_mag = std::max(global_mag, m);

  // Accumulate corner contributions, then ball-maximize across mesh neighbors.
  std::vector<double> raw(ndir * K, 0.0);
  for (std::size_t qi = 0; qi < queries.size(); ++qi)
    raw[std::size_t(queries[qi].dir) * K + queries[qi].lam] += results[qi];

  std::vector<double> ball(ndir * K, 0.0);
  parallel_for(0, ndir, [&](std::size_t i) {
    for (int j = 0; j < valid[i]; ++j) {
      double m = raw[i * K + j];
      for (int nb : mesh.neighbors[i])
        if (j < valid[nb]) m = std::max(m, raw[std::size_t(nb) * K + j]);
      ball[i * K + j] = m;
    }
  });

  DirectionSet out;
  out.s = s;
  out.threshold = scan.threshold_slope;
  out.signal_dim = d;
  out.entries.resize(ndir);
  const double floor_abs = scan.rel_floor * global_mag;
  parallel_for(0, ndir, [&](std::size_t i) {
    DecayProfile& e = out.entries[i];
    e.direction = mesh.points[i];
    std::vector<double> lams(ladder.begin(), ladder.begin() + valid[i]);
    std::vector<double> mags(ball.begin() + i * K, ball.begin() + i * K + valid[i]);
    FitResult fit = fit_trailing_slope(lams, mags, floor_abs, scan.fit_window_decades);
    e.fitted_slope = fit.slope;
    e.r2 = fit.r2;
    e.classified = fit.slope > scan.threshold_slope;
    if (e.classified || scan.keep_profiles) {
      e.lambdas = std::move(lams);
      e.magnitudes = std::move(mags);
    }
  });
  return out;
}

}  // namespace

DirectionSet estimate_wf(const Signal& u, const Window& phi, double s,
                         const ScanConfig& scan) {
  if (u.grid.d != 1) throw std::invalid_argument("estimate_wf: d = 1 signals");
  return estimate_impl(u, phi, s, scan);
}

WfRelation estimate_wf_kernel(const Signal& kernel, const Window& phi2, double s,
                              const ScanConfig& scan) {
  if (kernel.grid.d != 2)
    throw std::invalid_argument("estimate_wf_kernel: d = 2 kernels");
  return estimate_impl(kernel, phi2, s, scan);
}

std::vector<std::vector<double>> classified_directions(const DirectionSet& ds) {
  std::vector<std::vector<double>> out;
  for (const auto& e : ds.entries)
    if (e.classified) out.push_back(e.direction);
  return out;
}

double angle_deg(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  double c = dot / std::sqrt(na * nb);
  c = std::clamp(c, -1.0, 1.0);
  return rad2deg(std::acos(c));
}

double hausdorff_deg(const std::vector<std::vector<double>>& A,
                     const std::vector<std::vector<double>>& B) {
  if (A.empty() && B.empty()) return 0.0;
  if (A.empty() || B.empty()) return kHausdorffInf;
  double h = 0.0;
  auto one_sided = [&](const auto& P, const auto& Q) {
    double worst = 0.0;
    for (const auto& p : P) {
      double best = 1e300;
      for (const auto& q : Q) best = std::min(best, angle_deg(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  h = std::max(one_sided(A, B), one_sided(B, A));
  return h;
}

DirectionSet transport(const DirectionSet& ds, const PolySymbol& p, double t) {
  if (ds.signal_dim != 1)
    throw std::invalid_argument("transport: direction sets of d = 1 signals only");
  DirectionSet out;
  out.s = ds.s;
  out.threshold = ds.threshold;
  out.signal_dim = ds.signal_dim;
  FlowMap fm{p, t};
  for (const auto& e : ds.entries) {
    if (!e.classified) continue;
    PhasePoint z({e.direction[0]}, {e.direction[1]});
    PhasePoint moved = flow(fm, z);
    if (moved.is_origin()) continue;
    PhasePoint proj = project_s(moved, AnisotropyParam(ds.s));
    DecayProfile ne;
    ne.direction = {proj.x[0], proj.xi[0]};
    ne.fitted_slope = e.fitted_slope;
    ne.r2 = e.r2;
    ne.classified = true;
    out.entries.push_back(std::move(ne));
  }
  return out;
}

GraphConditionReport graph_condition(const WfRelation& rel, double axis_tol_deg) {
  if (rel.signal_dim != 2)
    throw std::invalid_argument("graph_condition: kernel relations only");
  GraphConditionReport rep;
  rep.margin_right_deg = 1e300;
  rep.margin_left_deg = 1e300;
  rep.c = 1.0;
  const double s = rel.s;
  for (std::size_t i = 0; i < rel.entries.size(); ++i) {
    const auto& e = rel.entries[i];
    if (!e.classified) continue;
    // direction layout: (x, y, xi, eta)
    double x = e.direction[0], y = e.direction[1];
    double xi = e.direction[2], eta = e.direction[3];
    double right = std::hypot(y, eta);   // distance from {(x, 0, xi, 0)}
    double left = std::hypot(x, xi);     // distance from {(0, y, 0, -eta)}
    double ang_right = rad2deg(std::asin(std::min(1.0, right)));
    double ang_left = rad2deg(std::asin(std::min(1.0, left)));
    rep.margin_right_deg = std::min(rep.margin_right_deg, ang_right);
    rep.margin_left_deg = std::min(rep.margin_left_deg, ang_left);
    if (ang_right < axis_tol_deg || ang_left < axis_tol_deg)
      rep.offenders.push_back(static_cast<int>(i));
    double num = std::abs(y) + std::pow(std::abs(eta), 1.0 / s);
    double den = std::abs(x) + std::pow(std::abs(xi), 1.0 / s);
    if (num <= 0.0 || den <= 0.0) {
      rep.c = 1e300;
    } else {
      double r = num / den;
      rep.c = std::max(rep.c, std::max(r, 1.0 / r));
    }
  }
  rep.holds = rep.offenders.empty() && rep.c < 1e300;
  return rep;
}

DirectionSet compose(const WfRelation& rel, const DirectionSet& B, double match_tol_deg) {
  if (rel.signal_dim != 2 || B.signal_dim != 1)
    throw std::invalid_argument("compose: need a kernel relation and a signal set");
  if (std::abs(rel.s - B.s) > 1e-12)
    throw std::invalid_argument("compose: anisotropy mismatch");
  const AnisotropyParam s(rel.s);
  DirectionSet out;
  out.s = rel.s;
  out.threshold = rel.threshold;
  out.signal_dim = 1;
  auto b_dirs = classified_directions(B);
  for (const auto& e : rel.entries) {
    if (!e.classified) continue;
    // The relation pairs (x, xi) with (y, -eta).
    PhasePoint probe({e.direction[1]}, {-e.direction[3]});
    if (probe.norm() < 1e-12) continue;
    PhasePoint pp = project_s(probe, s);
    std::vector<double> pv = {pp.x[0], pp.xi[0]};
    bool hit = false;
    for (const auto& b : b_dirs)
      if (angle_deg(pv, b) < match_tol_deg) {
        hit = true;
        break;
      }
    if (!hit) continue;
    PhasePoint head({e.direction[0]}, {e.direction[2]});
    if (head.norm() < 1e-12) continue;
    PhasePoint hp = project_s(head, s);
    DecayProfile ne;
    ne.direction = {hp.x[0], hp.xi[0]};
    ne.fitted_slope = e.fitted_slope;
    ne.r2 = e.r2;
    ne.classified = true;
    out.entries.push_back(std::move(ne));
  }
  return out;
}

TensorBoundReport tensor_bound_check(const DirectionSet& U, const DirectionSet& V,
                                     const DirectionSet& W, double tol_deg) {
  if (W.signal_dim != 2)
    throw std::invalid_argument("tensor_bound_check: W must live on S^3");
  TensorBoundReport rep;
  const AnisotropyParam s(W.s);
  const double zero_tol = std::sin(deg2rad(tol_deg));
  auto u_dirs = classified_directions(U);
  auto v_dirs = classified_directions(V);
  auto component_ok = [&](double x, double xi, const std::vector<std::vector<double>>& dirs) {
    if (std::hypot(x, xi) < zero_tol) return true;  // the {0} factor
    PhasePoint p({x}, {xi});
    PhasePoint pp = project_s(p, s);
    std::vector<double> pv = {pp.x[0], pp.xi[0]};
    for (const auto& d : dirs)
      if (angle_deg(pv, d) < tol_deg) return true;
    return false;
  };
  for (std::size_t i = 0; i < W.entries.size(); ++i) {
    const auto& e = W.entries[i];
    if (!e.classified) continue;
    bool ok = component_ok(e.direction[0], e.direction[2], u_dirs) &&
              component_ok(e.direction[1], e.direction[3], v_dirs);
    if (!ok) rep.offenders.push_back(static_cast<int>(i));
  }
  rep.ok = rep.offenders.empty();
  return rep;
}

}  // namespace angb
