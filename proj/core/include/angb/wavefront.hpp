#pragma once

#include <string>
#include <vector>

#include "angb/grid.hpp"
#include "angb/stft.hpp"
#include "angb/symbols.hpp"

// Wave front estimation.  For each mesh direction z0 on the phase-space
// sphere the scan walks the anisotropic ladder lambda -> (lambda x0,
// lambda^s xi0), records
//
//   m(lambda) = max over an angular ball around z0 of the interpolated |V u|,
//
// and fits the log-log slope of the trailing window of the ladder.  A
// direction is classified as singular when the fitted slope stays above the
// decay threshold.  Ladders are capped per direction so every sample stays
// inside the sampled phase-space box.

namespace angb {

struct ScanConfig {
  int n_dirs = 720;               // mesh size on S^1 (d=1) or S^3 (d=2)
  double lambda_min = 1.0;
  double lambda_max = 0.0;        // 0 = per-direction in-grid cap
  bool strict_ladder = false;     // error out if lambda_max exits the grid
  int samples_per_decade = 24;
  int ball_cells = 2;             // angular ball radius in mesh cells
  double threshold_slope = -8.0;  // classified iff fitted slope > threshold
  double rel_floor = 1e-14;       // magnitudes below rel_floor * max|V| are discarded
  double max_position = 0.0;      // 0 = 0.75 * L
  double max_frequency = 0.0;     // 0 = 0.75 * xi_max
  double fit_window_decades = 0.5;
  bool keep_profiles = false;     // keep ladder data for unclassified entries too
};

struct DecayProfile {
  std::vector<double> direction;   // unit vector, positions then frequencies
  std::vector<double> lambdas;     // ladder actually used (may be empty if dropped)
  std::vector<double> magnitudes;  // ball-maximized |V| along the ladder
  double fitted_slope = 0.0;
  double r2 = 0.0;
  bool classified = false;
};

struct DirectionSet {
  double s = 1.0;
  double threshold = -8.0;
  int signal_dim = 1;  // 1: directions on S^1; 2: kernel relations on S^3
  std::vector<DecayProfile> entries;
};

using WfRelation = DirectionSet;

DirectionSet estimate_wf(const Signal& u, const Window& phi, double s,
                         const ScanConfig& scan);

// Same scan on a two-variable kernel K(x, y) with the product window.
WfRelation estimate_wf_kernel(const Signal& kernel, const Window& phi2, double s,
                              const ScanConfig& scan);

std::vector<std::vector<double>> classified_directions(const DirectionSet& ds);

double angle_deg(const std::vector<double>& a, const std::vector<double>& b);

// Symmetric Hausdorff distance (degrees) between direction lists.
// Both empty -> 0; one empty -> a large sentinel (1e9).
double hausdorff_deg(const std::vector<std::vector<double>>& A,
                     const std::vector<std::vector<double>>& B);

// chi_t transport of each classified direction followed by pi_s projection.
DirectionSet transport(const DirectionSet& ds, const PolySymbol& p, double t);

struct GraphConditionReport {
  bool holds = false;
  double margin_right_deg = 0.0;  // distance to {(x, 0, xi, 0)}
  double margin_left_deg = 0.0;   // distance to {(0, y, 0, -eta)}
  double c = 0.0;                 // two-sided comparability constant
  std::vector<int> offenders;
};

GraphConditionReport graph_condition(const WfRelation& rel, double axis_tol_deg);

// Relation composition: out = { pi_s(x, xi) : exists (y, eta) in B with
// (x, y, xi, -eta) in rel }, matched with angular slack.
DirectionSet compose(const WfRelation& rel, const DirectionSet& B, double match_tol_deg);

struct TensorBoundReport {
  bool ok = false;
  std::vector<int> offenders;
};

// Checks W <= ((U u {0}) x (V u {0})) \ 0 componentwise up to tolerance.
TensorBoundReport tensor_bound_check(const DirectionSet& U, const DirectionSet& V,
                                     const DirectionSet& W, double tol_deg);

}  // namespace angb
