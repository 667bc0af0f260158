#pragma once

#include <vector>

// Quasi-uniform direction meshes on the phase-space spheres: an angular grid
// on S^1 (d = 1 signals) and a Hopf-coordinate lattice driven by a 2-D
// low-discrepancy sequence on S^3 (d = 2 signals / operator kernels), in the
// spirit of golden-spiral sphere meshes.

namespace angb {

struct DirectionMesh {
  int ambient_dim = 2;                        // 2 or 4
  std::vector<std::vector<double>> points;    // unit vectors
  double mean_spacing = 0.0;                  // typical nearest-neighbor angle (radians)
  std::vector<std::vector<int>> neighbors;    // indices within the ball radius
  double ball_radius = 0.0;                   // radians; set by build_neighbors
};

DirectionMesh s1_mesh(int n_dirs);
DirectionMesh s3_mesh(int n_dirs);

// Fills mesh.neighbors with all indices (excluding self) within
// ball_cells * mean_spacing angular distance.
void build_neighbors(DirectionMesh& mesh, int ball_cells);

}  // namespace angb
