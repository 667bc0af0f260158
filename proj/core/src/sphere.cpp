#include "angb/sphere.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace angb {

DirectionMesh s1_mesh(int n_dirs) {
  if (n_dirs < 4) throw std::invalid_argument("s1_mesh: need at least 4 directions");
  DirectionMesh m;
  m.ambient_dim = 2;
  m.points.reserve(n_dirs);
  for (int i = 0; i < n_dirs; ++i) {
    double th = 2.0 * std::numbers::pi * i / n_dirs;
    m.points.push_back({std::cos(th), std::sin(th)});
  }
  m.mean_spacing = 2.0 * std::numbers::pi / n_dirs;
  return m;
}

DirectionMesh s3_mesh(int n_dirs) {
  if (n_dirs < 16) throw std::invalid_argument("s3_mesh: need at least 16 directions");
  DirectionMesh m;
  m.ambient_dim = 4;
  m.points.reserve(n_dirs);
  // Hopf coordinates (eta, th1, th2): the round measure is uniform in
  // sin^2(eta), th1, th2.  Stratify sin^2(eta) and fill the two angles with a
  // rank-2 Kronecker sequence (plastic-number constants).
  const double a1 = 0.7548776662466927;
  const double a2 = 0.5698402909980532;
  for (int i = 0; i < n_dirs; ++i) {
    double t = (i + 0.5) / n_dirs;  // sin^2(eta)
    double ce = std::sqrt(1.0 - t), se = std::sqrt(t);
    double th1 = 2.0 * std::numbers::pi * std::fmod(a1 * (i + 1), 1.0);
    double th2 = 2.0 * std::numbers::pi * std::fmod(a2 * (i + 1), 1.0);
    m.points.push_back(
        {ce * std::cos(th1), ce * std::sin(th1), se * std::cos(th2), se * std::sin(th2)});
  }
  // Volume of S^3 is 2 pi^2; one cell per point.
  m.mean_spacing = std::cbrt(2.0 * std::numbers::pi * std::numbers::pi / n_dirs);
  return m;
}

void build_neighbors(DirectionMesh& mesh, int ball_cells) {
  const double eps = ball_cells * mesh.mean_spacing;
  mesh.ball_radius = eps;
  const std::size_t N = mesh.points.size();
  mesh.neighbors.assign(N, {});
  const double cos_eps = std::cos(eps);

  if (mesh.ambient_dim == 2) {
    // Contiguous index windows on the angular grid.
    for (std::size_t i = 0; i < N; ++i)
      for (int off = -ball_cells; off <= ball_cells; ++off) {
        if (off == 0) continue;
        int j = (static_cast<int>(i) + off) % static_cast<int>(N);
        if (j < 0) j += static_cast<int>(N);
        mesh.neighbors[i].push_back(j);
      }
    return;
  }

  // Spatial hash over R^4 cells of side eps.
  auto key_of = [](const long long c[4]) {
    long long key = 0;
    for (int a = 0; a < 4; ++a) key = key * 73856093 + c[a];
    return key;
  };
  std::unordered_map<long long, std::vector<int>> buckets;
  std::vector<std::array<long long, 4>> coords(N);
  for (std::size_t i = 0; i < N; ++i) {
    for (int a = 0; a < 4; ++a)
      coords[i][a] = static_cast<long long>(std::floor((mesh.points[i][a] + 2.0) / eps));
    buckets[key_of(coords[i].data())].push_back(static_cast<int>(i));
  }
  for (std::size_t i = 0; i < N; ++i) {
    for (long long d0 = -1; d0 <= 1; ++d0)
      for (long long d1 = -1; d1 <= 1; ++d1)
        for (long long d2 = -1; d2 <= 1; ++d2)
          for (long long d3 = -1; d3 <= 1; ++d3) {
            long long c[4] = {coords[i][0] + d0, coords[i][1] + d1, coords[i][2] + d2,
                              coords[i][3] + d3};
            auto it = buckets.find(key_of(c));
            if (it == buckets.end()) continue;
            for (int j : it->second) {
              if (j == static_cast<int>(i)) continue;
              double dot = 0.0;
              for (int a = 0; a < 4; ++a) dot += mesh.points[i][a] * mesh.points[j][a];
              if (dot > cos_eps) mesh.neighbors[i].push_back(j);
            }
          }
    std::sort(mesh.neighbors[i].begin(), mesh.neighbors[i].end());
  }
}

}  // namespace angb
