#pragma once
#include <map>
#include <string>

#include "apex/complex.hpp"
#include "apex/contraction.hpp"

namespace apex {

// Run description: root system, refinement, filtration depth, window.
struct RunConfig {
  std::string type;
  long m = 1;
  Rat r;
  Rat window_radius;
  Vec base_vertex;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string config_text(const RunConfig& c);  // canonical JSON

// Window complex described by the config; the base vertex must be a vertex of
// the result.
CellComplex build_from_config(const RunConfig& c);

void save_chains(const std::string& path, const RunConfig& c, const Contraction& ct);

struct LoadedChains {
  RunConfig config;
  long region_radius = -1;
  int base_cell = -1;
  std::map<int, Chain> maps;
};

LoadedChains load_chains(const std::string& path);

// Reassembles a contraction over a freshly built complex, validating ids and
// dimensions of every stored chain.
Contraction attach_chains(const CellComplex& cx, const LoadedChains& lc);

}  // namespace apex
