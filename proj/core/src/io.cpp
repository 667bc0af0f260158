#include "angb/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace angb {

namespace {

using nlohmann::json;

constexpr char kMagic[4] = {'A', 'N', 'G', 'B'};
constexpr std::uint32_t kVersion = 1;

void write_header(std::ofstream& out, int d, int n, double L) {
  out.write(kMagic, 4);
  std::uint32_t v = kVersion, dd = d, nn = n;
  out.write(reinterpret_cast<const char*>(&v), 4);
  out.write(reinterpret_cast<const char*>(&dd), 4);
  out.write(reinterpret_cast<const char*>(&nn), 4);
  out.write(reinterpret_cast<const char*>(&L), 8);
}

struct Header {
  int d;
  int n;
  double L;
};

Header read_header(std::ifstream& in, const std::string& path) {
  char magic[4];
  std::uint32_t v, d, n;
  double L;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&v), 4);
  in.read(reinterpret_cast<char*>(&d), 4);
  in.read(reinterpret_cast<char*>(&n), 4);
  in.read(reinterpret_cast<char*>(&L), 8);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("bad magic in " + path);
  if (v != kVersion) throw std::runtime_error("unsupported version in " + path);
  return {static_cast<int>(d), static_cast<int>(n), L};
}

void write_values(std::ofstream& out, const std::vector<cdouble>& vals) {
  for (const auto& z : vals) {
    double re = z.real(), im = z.imag();
    out.write(reinterpret_cast<const char*>(&re), 8);
    out.write(reinterpret_cast<const char*>(&im), 8);
  }
}

void read_values(std::ifstream& in, std::vector<cdouble>& vals, const std::string& path) {
  for (auto& z : vals) {
    double re, im;
    in.read(reinterpret_cast<char*>(&re), 8);
    in.read(reinterpret_cast<char*>(&im), 8);
    z = {re, im};
  }
  if (!in) throw std::runtime_error("truncated data in " + path);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

}  // namespace

void write_signal(const std::string& path, const Signal& u) {
  auto out = open_out(path);
  write_header(out, u.grid.d, u.grid.n, u.grid.L);
  write_values(out, u.values);
  if (!out) throw std::runtime_error("write failed: " + path);
}

Signal read_signal(const std::string& path) {
  auto in = open_in(path);
  Header h = read_header(in, path);
  Signal u(Grid(h.d, h.n, h.L));
  read_values(in, u.values, path);
  return u;
}

void write_field(const std::string& path, const StftField& f) {
  auto out = open_out(path);
  // A field is a sample set on the doubled lattice; d in the header is the
  // phase-space dimension 2 * grid.d.
  write_header(out, 2 * f.grid.d, f.grid.n, f.grid.L);
  write_values(out, f.values);
  if (!out) throw std::runtime_error("write failed: " + path);
}

StftField read_field(const std::string& path) {
  auto in = open_in(path);
  Header h = read_header(in, path);
  if (h.d % 2 != 0) throw std::runtime_error("field file with odd dimension: " + path);
  StftField f;
  f.grid = Grid(h.d / 2, h.n, h.L);
  f.values.resize(f.grid.size() * f.grid.size());
  read_values(in, f.values, path);
  return f;
}

void write_signal_csv(const std::string& path, const Signal& u) {
  auto out = open_out(path);
  out << "index,re,im\n";
  char buf[80];
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, u.values[i].real(),
                  u.values[i].imag());
    out << buf;
  }
}

std::string direction_set_to_json(const DirectionSet& ds) {
  json j;
  j["s"] = ds.s;
  j["threshold"] = ds.threshold;
  j["signal_dim"] = ds.signal_dim;
  json entries = json::array();
  for (const auto& e : ds.entries) {
    json je;
    je["dir"] = e.direction;
    je["slope"] = e.fitted_slope;
    je["r2"] = e.r2;
    je["classified"] = e.classified;
    if (!e.lambdas.empty()) {
      je["lambdas"] = e.lambdas;
      je["magnitudes"] = e.magnitudes;
    }
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  return j.dump(2);
}

DirectionSet direction_set_from_json(const std::string& text) {
  json j = json::parse(text);
  DirectionSet ds;
  ds.s = j.at("s").get<double>();
  ds.threshold = j.at("threshold").get<double>();
  ds.signal_dim = j.at("signal_dim").get<int>();
  for (const auto& je : j.at("entries")) {
    DecayProfile e;
    e.direction = je.at("dir").get<std::vector<double>>();
    e.fitted_slope = je.at("slope").get<double>();
    e.r2 = je.at("r2").get<double>();
    e.classified = je.at("classified").get<bool>();
    if (je.contains("lambdas")) {
      e.lambdas = je.at("lambdas").get<std::vector<double>>();
      e.magnitudes = je.at("magnitudes").get<std::vector<double>>();
    }
    ds.entries.push_back(std::move(e));
  }
  return ds;
}

void write_direction_set(const std::string& path, const DirectionSet& ds) {
  auto out = open_out(path);
  out << direction_set_to_json(ds) << "\n";
}

DirectionSet read_direction_set(const std::string& path) {
  auto in = open_in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return direction_set_from_json(ss.str());
}

void write_direction_set_csv(const std::string& path, const DirectionSet& ds) {
  auto out = open_out(path);
  std::size_t comps = ds.entries.empty() ? 0 : ds.entries.front().direction.size();
  out << "entry";
  for (std::size_t c = 0; c < comps; ++c) out << ",dir" << c;
  out << ",slope,r2,classified\n";
  char buf[64];
  for (std::size_t i = 0; i < ds.entries.size(); ++i) {
    const auto& e = ds.entries[i];
    out << i;
    for (double v : e.direction) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      out << buf;
    }
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%d\n", e.fitted_slope, e.r2,
                  e.classified ? 1 : 0);
    out << buf;
  }
}

namespace {

std::vector<int> parse_multi_index(const std::string& key, int d) {
  if (key.size() < 3 || key.front() != '(' || key.back() != ')')
    throw std::runtime_error("bad multi-index key: " + key);
  std::vector<int> alpha;
  std::stringstream ss(key.substr(1, key.size() - 2));
  std::string part;
  while (std::getline(ss, part, ',')) alpha.push_back(std::stoi(part));
  if (static_cast<int>(alpha.size()) != d)
    throw std::runtime_error("multi-index arity mismatch: " + key);
  return alpha;
}

}  // namespace

PolySymbol symbol_from_json(const std::string& text) {
  json j = json::parse(text);
  int d = j.at("d").get<int>();
  std::map<std::vector<int>, double> coeffs;
  for (const auto& [key, val] : j.at("coeffs").items())
    coeffs[parse_multi_index(key, d)] = val.get<double>();
  PolySymbol p(d, std::move(coeffs));
  if (j.contains("m") && j.at("m").get<int>() != p.order)
    throw std::runtime_error("declared order does not match coefficients");
  return p;
}

std::string symbol_to_json(const PolySymbol& p) {
  json j;
  j["d"] = p.d;
  j["m"] = p.order;
  json coeffs = json::object();
  for (const auto& [alpha, c] : p.coeffs) {
    std::string key = "(";
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (i) key += ",";
      key += std::to_string(alpha[i]);
    }
    key += ")";
    coeffs[key] = c;
  }
  j["coeffs"] = std::move(coeffs);
  return j.dump(2);
}

}  // namespace angb
