// Command-line front end: reproducible experiment runs described by a JSON
// spec file.  Subcommands generate signals, estimate singular directions,
// evolve under a polynomial Fourier multiplier, verify propagation of the
// estimated directions along the bicharacteristic flow, scan kernel
// relations, and check relation composition.
//
// Exit codes: 0 pass, 1 verification fail, 2 configuration error, 3 I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "angb/fft.hpp"
#include "angb/io.hpp"
#include "angb/parallel.hpp"
#include "angb/propagator.hpp"
#include "angb/signals.hpp"
#include "angb/stft.hpp"
#include "angb/symbols.hpp"
#include "angb/wavefront.hpp"

using namespace angb;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out.good()) throw IoError("cannot write " + path);
  out << text;
  if (!out.good()) throw IoError("cannot write " + path);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Everything an experiment run needs; spec-file fields with CLI overrides.
struct Experiment {
  std::string name = "experiment";
  Grid grid{1, 1024, 16.0};
  double s = 1.0;
  double window_width = 1.0;
  double tolerance_deg = 5.0;
  ScanConfig scan;
  json signal;                       // generator description
  std::optional<PolySymbol> symbol;  // evolution block
  double t = 0.0;
  std::string out_dir = ".";
};

ScanConfig scan_from_json(const json& j) {
  ScanConfig sc;
  sc.n_dirs = j.value("n_dirs", sc.n_dirs);
  sc.lambda_min = j.value("lambda_min", sc.lambda_min);
  sc.lambda_max = j.value("lambda_max", sc.lambda_max);
  sc.strict_ladder = j.value("strict_ladder", sc.strict_ladder);
  sc.samples_per_decade = j.value("samples_per_decade", sc.samples_per_decade);
  sc.ball_cells = j.value("ball_cells", sc.ball_cells);
  sc.threshold_slope = j.value("threshold_slope", sc.threshold_slope);
  sc.rel_floor = j.value("rel_floor", sc.rel_floor);
  sc.max_position = j.value("max_position", sc.max_position);
  sc.max_frequency = j.value("max_frequency", sc.max_frequency);
  sc.fit_window_decades = j.value("fit_window_decades", sc.fit_window_decades);
  return sc;
}

Experiment load_experiment(const std::string& spec_path, const std::string& out_dir,
                           int grid_n, double grid_L, double s_flag, double tol_flag) {
  Experiment ex;
  json j;
  if (!spec_path.empty()) {
    try {
      j = json::parse(slurp(spec_path));
    } catch (const json::exception& e) {
      throw ConfigError(std::string("spec parse error: ") + e.what());
    }
  }
  try {
    ex.name = j.value("name", ex.name);
    int n = j.contains("grid") ? j["grid"].value("n", 1024) : 1024;
    double L = j.contains("grid") ? j["grid"].value("L", 16.0) : 16.0;
    if (grid_n > 0) n = grid_n;
    if (grid_L > 0) L = grid_L;
    ex.grid = Grid(1, n, L);
    ex.s = j.value("s", ex.s);
    if (s_flag > 0) ex.s = s_flag;
    ex.window_width = j.value("window_width", ex.window_width);
    ex.tolerance_deg = j.value("tolerance_deg", ex.tolerance_deg);
    if (tol_flag > 0) ex.tolerance_deg = tol_flag;
    if (j.contains("scan")) ex.scan = scan_from_json(j["scan"]);
    if (j.contains("signal")) ex.signal = j["signal"];
    if (j.contains("evolution")) {
      const json& ev = j["evolution"];
      if (!ev.contains("symbol") || !ev.contains("t"))
        throw ConfigError("evolution block needs \"symbol\" and \"t\"");
      ex.symbol = symbol_from_json(ev["symbol"].dump());
      ex.t = ev["t"].get<double>();
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad spec: ") + e.what());
  }
  if (ex.s <= 0) throw ConfigError("s must be positive");
  ex.out_dir = out_dir.empty() ? "." : out_dir;
  return ex;
}

Signal make_signal(const Experiment& ex) {
  if (ex.signal.is_null()) throw ConfigError("spec has no \"signal\" block");
  try {
    std::string kind = ex.signal.at("kind").get<std::string>();
    if (kind == "gaussian") return make_gaussian(ex.grid, ex.signal.value("width", 1.0));
    if (kind == "hermite") return make_hermite(ex.grid, ex.signal.value("k", 0));
    if (kind == "poly_chirp")
      return make_poly_chirp(ex.grid, ex.signal.at("c").get<double>(),
                             ex.signal.at("m").get<int>(), ex.signal.value("flat", 0.0),
                             ex.signal.value("end", 0.0));
    if (kind == "file") {
      Signal u = read_signal(ex.signal.at("path").get<std::string>());
      if (!(u.grid == ex.grid))
        throw ConfigError("signal file grid differs from the spec grid");
      return u;
    }
    throw ConfigError("unknown signal kind: " + kind);
  } catch (const ConfigError&) {
    throw;
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad signal block: ") + e.what());
  }
}

std::string path_in(const Experiment& ex, const std::string& leaf) {
  return ex.out_dir + "/" + ex.name + "_" + leaf;
}

// --- subcommand bodies -----------------------------------------------------

int cmd_generate(const Experiment& ex) {
  Signal u = make_signal(ex);
  write_signal(path_in(ex, "signal.bin"), u);
  write_signal_csv(path_in(ex, "signal.csv"), u);
  std::printf("wrote %s\n", path_in(ex, "signal.bin").c_str());
  return kExitPass;
}

int cmd_analyze(const Experiment& ex) {
  Signal u = make_signal(ex);
  Window phi = gaussian_window(ex.grid, ex.window_width);
  DirectionSet ds = estimate_wf(u, phi, ex.s, ex.scan);
  write_direction_set(path_in(ex, "directions.json"), ds);
  write_direction_set_csv(path_in(ex, "directions.csv"), ds);
  std::printf("classified %zu of %zu directions -> %s\n",
              classified_directions(ds).size(), ds.entries.size(),
              path_in(ex, "directions.json").c_str());
  return kExitPass;
}

int cmd_evolve(const Experiment& ex) {
  if (!ex.symbol) throw ConfigError("evolve needs an \"evolution\" block in the spec");
  Signal u = make_signal(ex);
  SpectralReport rep;
  Signal ut = evolve(u, *ex.symbol, ex.t, &rep);
  write_signal(path_in(ex, "evolved.bin"), ut);
  write_signal_csv(path_in(ex, "evolved.csv"), ut);
  std::string report = std::string("{\n  \"mass_above_halfband\": ") +
                       fmt_double(rep.mass_above_halfband) +
                       ",\n  \"transport_estimate\": " + fmt_double(rep.transport_estimate) +
                       ",\n  \"t\": " + fmt_double(ex.t) + "\n}\n";
  spit(path_in(ex, "evolve_report.json"), report);
  std::printf("%s", report.c_str());
  return kExitPass;
}

// Mode per anisotropy: the estimated directions move with the flow exactly
// when s = 1/(m-1); for s < 1/(m-1) they stay put; larger s is unsupported.
enum class PropMode { Flow, Identity };

PropMode propagation_mode(double s, int m) {
  if (m < 2) throw ConfigError("propagation needs a symbol of order >= 2");
  double s_crit = 1.0 / (m - 1);
  if (std::abs(s - s_crit) < 1e-12) return PropMode::Flow;
  if (s < s_crit) return PropMode::Identity;
  throw ConfigError("no propagation statement for s > 1/(m-1)");
}

int cmd_verify_propagation(const Experiment& ex) {
  if (!ex.symbol) throw ConfigError("verify-propagation needs an \"evolution\" block");
  PropMode mode = propagation_mode(ex.s, ex.symbol->order);
  Signal u0 = make_signal(ex);

  // Off-grid guard: reject before the expensive scans if the flow would push
  // the signal's spectral bulk further than a quarter box.
  double reach = transport_reach(u0, *ex.symbol, ex.t);
  if (reach > 0.25 * ex.grid.L)
    throw ConfigError("transport reach " + fmt_double(reach) + " exceeds L/4 = " +
                      fmt_double(0.25 * ex.grid.L));

  Window phi = gaussian_window(ex.grid, ex.window_width);
  DirectionSet initial = estimate_wf(u0, phi, ex.s, ex.scan);
  Signal ut = evolve(u0, *ex.symbol, ex.t);
  DirectionSet evolved = estimate_wf(ut, phi, ex.s, ex.scan);
  DirectionSet transported =
      mode == PropMode::Flow ? transport(initial, *ex.symbol, ex.t) : initial;

  double dist = hausdorff_deg(classified_directions(evolved),
                              classified_directions(transported));
  bool pass = dist <= ex.tolerance_deg;

  std::string report =
      std::string("{\n  \"mode\": \"") +
      (mode == PropMode::Flow ? "flow" : "identity") +
      "\",\n  \"t\": " + fmt_double(ex.t) + ",\n  \"s\": " + fmt_double(ex.s) +
      ",\n  \"hausdorff_deg\": " + fmt_double(dist) +
      ",\n  \"tolerance_deg\": " + fmt_double(ex.tolerance_deg) +
      ",\n  \"pass\": " + (pass ? "true" : "false") +
      ",\n  \"initial\": " + direction_set_to_json(initial) +
      ",\n  \"evolved\": " + direction_set_to_json(evolved) +
      ",\n  \"transported\": " + direction_set_to_json(transported) + "\n}\n";
  spit(path_in(ex, "propagation_report.json"), report);
  std::printf("mode %s  hausdorff %.3f deg  tolerance %.3f deg  %s\n",
              mode == PropMode::Flow ? "flow" : "identity", dist, ex.tolerance_deg,
              pass ? "PASS" : "FAIL");
  return pass ? kExitPass : kExitFail;
}

int cmd_kernel_diagnostics(const Experiment& ex) {
  if (!ex.symbol) throw ConfigError("kernel-diagnostics needs an \"evolution\" block");
  if (ex.grid.n > 256) throw ConfigError("kernel-diagnostics: n <= 256 for the 4-D scan");
  int m = ex.symbol->order;
  bool report_only = m >= 2 && ex.s > 1.0 / (m - 1) + 1e-12;

  Signal K = build_kernel(*ex.symbol, ex.t, ex.grid);
  Grid g2(2, ex.grid.n, ex.grid.L);
  Window phi2 = gaussian_window(g2, ex.window_width);
  WfRelation rel = estimate_wf_kernel(K, phi2, ex.s, ex.scan);
  GraphConditionReport gc = graph_condition(rel, ex.tolerance_deg);

  std::string report =
      std::string("{\n  \"report_only\": ") + (report_only ? "true" : "false") +
      ",\n  \"holds\": " + (gc.holds ? "true" : "false") +
      ",\n  \"margin_right_deg\": " + fmt_double(gc.margin_right_deg) +
      ",\n  \"margin_left_deg\": " + fmt_double(gc.margin_left_deg) +
      ",\n  \"comparability\": " + fmt_double(gc.c) +
      ",\n  \"relation\": " + direction_set_to_json(rel) + "\n}\n";
  spit(path_in(ex, "kernel_report.json"), report);
  std::printf("graph condition %s  margins %.2f / %.2f deg  c %.3g%s\n",
              gc.holds ? "holds" : "FAILS", gc.margin_right_deg, gc.margin_left_deg,
              gc.c, report_only ? "  (report only)" : "");
  if (report_only) return kExitPass;
  return gc.holds ? kExitPass : kExitFail;
}

int cmd_compose_check(const Experiment& ex, const std::string& relation_path,
                      const std::string& directions_path, const std::string& expected_path) {
  if (relation_path.empty() || directions_path.empty())
    throw ConfigError("compose-check needs --relation and --directions");
  WfRelation rel = read_direction_set(relation_path);
  DirectionSet B = read_direction_set(directions_path);
  DirectionSet out = compose(rel, B, ex.tolerance_deg);
  write_direction_set(path_in(ex, "composed.json"), out);
  std::printf("composed %zu directions -> %s\n", out.entries.size(),
              path_in(ex, "composed.json").c_str());
  if (expected_path.empty()) return kExitPass;
  DirectionSet want = read_direction_set(expected_path);
  double dist = hausdorff_deg(classified_directions(out), classified_directions(want));
  bool pass = dist <= ex.tolerance_deg;
  std::printf("hausdorff to expected %.3f deg  tolerance %.3f deg  %s\n", dist,
              ex.tolerance_deg, pass ? "PASS" : "FAIL");
  return pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anisotropic phase-space analysis of sampled signals"};
  app.require_subcommand(1);

  std::string spec_path, out_dir = ".";
  int threads = 0, grid_n = 0;
  double grid_L = 0.0, s_flag = 0.0, tol_flag = 0.0;
  app.add_option("--spec", spec_path, "experiment spec (JSON)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--threads", threads, "worker threads (0 = hardware)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--grid-n", grid_n, "override grid samples per axis")
      ->check(CLI::PositiveNumber);
  app.add_option("--grid-L", grid_L, "override grid half-extent")
      ->check(CLI::PositiveNumber);
  app.add_option("--s", s_flag, "override anisotropy parameter")
      ->check(CLI::PositiveNumber);
  app.add_option("--tolerance-deg", tol_flag, "override angular tolerance")
      ->check(CLI::PositiveNumber);

  auto* c_gen = app.add_subcommand("generate", "sample a signal to disk");
  auto* c_ana = app.add_subcommand("analyze", "estimate singular directions");
  auto* c_evo = app.add_subcommand("evolve", "apply the multiplier evolution");
  auto* c_ver = app.add_subcommand("verify-propagation",
                                   "compare evolved directions with the transported ones");
  auto* c_ker = app.add_subcommand("kernel-diagnostics",
                                   "scan the propagator kernel's relation");
  auto* c_cmp = app.add_subcommand("compose-check", "compose a relation with a set");

  std::string relation_path, directions_path, expected_path;
  c_cmp->add_option("--relation", relation_path, "kernel relation (JSON)");
  c_cmp->add_option("--directions", directions_path, "direction set to compose (JSON)");
  c_cmp->add_option("--expected", expected_path, "expected composed set (JSON)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (threads > 0) set_thread_count(threads);
    Experiment ex = load_experiment(spec_path, out_dir, grid_n, grid_L, s_flag, tol_flag);
    if (c_gen->parsed()) return cmd_generate(ex);
    if (c_ana->parsed()) return cmd_analyze(ex);
    if (c_evo->parsed()) return cmd_evolve(ex);
    if (c_ver->parsed()) return cmd_verify_propagation(ex);
    if (c_ker->parsed()) return cmd_kernel_diagnostics(ex);
    if (c_cmp->parsed())
      return cmd_compose_check(ex, relation_path, directions_path, expected_path);
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
}
