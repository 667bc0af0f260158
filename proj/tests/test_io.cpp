#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "angb/io.hpp"
#include "angb/signals.hpp"
#include "angb/stft.hpp"

using namespace angb;

namespace {

std::string tmp_path(const char* name) {
  return std::string("/tmp/angb_test_") + name;
}

int count_lines(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  int lines = 0;
  std::string s;
  while (std::getline(in, s)) ++lines;
  return lines;
}

DirectionSet sample_set() {
  DirectionSet ds;
  ds.s = 0.5;
  ds.threshold = -8.0;
  ds.signal_dim = 1;
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 7; ++i) {
    DecayProfile e;
    double a = u(rng), b = u(rng);
    double nrm = std::hypot(a, b);
    e.direction = {a / nrm, b / nrm};
    e.lambdas = {1.0, 2.0, 4.0};
    e.magnitudes = {0.5, 0.25, 0.125};
    e.fitted_slope = -1.0 - i;
    e.r2 = 0.99;
    e.classified = (i % 2 == 0);
    ds.entries.push_back(e);
  }
  return ds;
}

}  // namespace

TEST_CASE("signal binary roundtrip is exact") {
  Grid grid(1, 128, 9.5);
  Signal u = make_poly_chirp(grid, 0.4, 2);
  std::string path = tmp_path("sig.bin");
  write_signal(path, u);
  Signal v = read_signal(path);
  REQUIRE(v.grid == u.grid);
  for (std::size_t i = 0; i < u.values.size(); ++i) CHECK(v.values[i] == u.values[i]);
  std::remove(path.c_str());
}

TEST_CASE("field binary roundtrip is exact") {
  Grid grid(1, 64, 6.0);
  Signal u = make_gaussian(grid);
  StftField f = stft(u, gaussian_window(grid));
  std::string path = tmp_path("field.bin");
  write_field(path, f);
  StftField g = read_field(path);
  REQUIRE(g.grid == f.grid);
  REQUIRE(g.values.size() == f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(g.values[i] == f.values[i]);
  std::remove(path.c_str());
}

TEST_CASE("corrupt headers are rejected") {
  std::string path = tmp_path("bad.bin");
  {
    std::ofstream out(path, std::ios::binary);
    out << "NOPEgarbage";
  }
  CHECK_THROWS(read_signal(path));
  std::remove(path.c_str());
  CHECK_THROWS(read_signal(tmp_path("does_not_exist.bin")));
}

TEST_CASE("direction sets roundtrip through JSON with exact doubles") {
  DirectionSet ds = sample_set();
  std::string text = direction_set_to_json(ds);
  DirectionSet back = direction_set_from_json(text);
  REQUIRE(back.entries.size() == ds.entries.size());
  CHECK(back.s == ds.s);
  CHECK(back.threshold == ds.threshold);
  CHECK(back.signal_dim == ds.signal_dim);
  for (std::size_t i = 0; i < ds.entries.size(); ++i) {
    const auto& a = ds.entries[i];
    const auto& b = back.entries[i];
    CHECK(b.classified == a.classified);
    CHECK(b.fitted_slope == a.fitted_slope);
    CHECK(b.r2 == a.r2);
    REQUIRE(b.direction.size() == a.direction.size());
    for (std::size_t j = 0; j < a.direction.size(); ++j)
      CHECK(b.direction[j] == a.direction[j]);
    REQUIRE(b.lambdas == a.lambdas);
    REQUIRE(b.magnitudes == a.magnitudes);
  }

  // Serialization is deterministic: encode twice, byte-identical.
  CHECK(direction_set_to_json(back) == text);

  std::string path = tmp_path("dirs.json");
  write_direction_set(path, ds);
  DirectionSet from_file = read_direction_set(path);
  CHECK(direction_set_to_json(from_file) == text);
  std::remove(path.c_str());
}

TEST_CASE("CSV exports have one row per record plus a header") {
  Grid grid(1, 32, 4.0);
  Signal u = make_gaussian(grid);
  std::string spath = tmp_path("sig.csv");
  write_signal_csv(spath, u);
  CHECK(count_lines(spath) == grid.n + 1);
  std::remove(spath.c_str());

  DirectionSet ds = sample_set();
  std::string dpath = tmp_path("dirs.csv");
  write_direction_set_csv(dpath, ds);
  CHECK(count_lines(dpath) == static_cast<int>(ds.entries.size()) + 1);
  std::remove(dpath.c_str());
}

TEST_CASE("symbols roundtrip through JSON and validate the declared order") {
  std::string text = R"json({"d": 1, "m": 3, "coeffs": {"(3)": 1.0, "(1)": -2.0}})json";
  PolySymbol p = symbol_from_json(text);
  CHECK(p.d == 1);
  CHECK(p.order == 3);
  CHECK(eval_symbol(p, {2.0}) == doctest::Approx(4.0));

  PolySymbol back = symbol_from_json(symbol_to_json(p));
  CHECK(back.coeffs == p.coeffs);

  CHECK_THROWS(symbol_from_json(R"json({"d": 1, "m": 2, "coeffs": {"(3)": 1.0}})json"));
  CHECK_THROWS(symbol_from_json(R"json({"d": 1, "m": 3})json"));
  CHECK_THROWS(symbol_from_json("not json"));

  std::string text2 = R"json({"d": 2, "m": 2, "coeffs": {"(2,0)": 1.0, "(0,2)": 1.0}})json";
  PolySymbol q = symbol_from_json(text2);
  CHECK(eval_symbol(q, {1.0, 2.0}) == doctest::Approx(5.0));
}
