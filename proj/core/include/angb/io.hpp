#pragma once

#include <string>

#include "angb/grid.hpp"
#include "angb/stft.hpp"
#include "angb/symbols.hpp"
#include "angb/wavefront.hpp"

// Serialization.  Binary samples use a fixed little-endian layout:
//   "ANGB" | u32 version | u32 d | u32 n_per_axis | f64 L | interleaved re/im f64
// Direction sets and symbols round-trip through JSON; CSV exports are flat
// tables for plotting.

namespace angb {

void write_signal(const std::string& path, const Signal& u);
Signal read_signal(const std::string& path);

void write_field(const std::string& path, const StftField& f);
StftField read_field(const std::string& path);

void write_signal_csv(const std::string& path, const Signal& u);

std::string direction_set_to_json(const DirectionSet& ds);
DirectionSet direction_set_from_json(const std::string& text);
void write_direction_set(const std::string& path, const DirectionSet& ds);
DirectionSet read_direction_set(const std::string& path);
void write_direction_set_csv(const std::string& path, const DirectionSet& ds);

PolySymbol symbol_from_json(const std::string& text);
std::string symbol_to_json(const PolySymbol& p);

}  // namespace angb
