#include "apex/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace apex {

namespace {

using nlohmann::json;

Rat field_rat(const json& j, const char* key) {
  if (!j.contains(key)) throw std::runtime_error(std::string("config is missing \"") + key + "\"");
  if (!j.at(key).is_string())
    throw std::runtime_error(std::string("config field \"") + key +
                             "\" must be a rational written as a string");
  return parse_rat(j.at(key).get<std::string>());
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j = json::parse(text);
  RunConfig c;
  if (!j.contains("type") || !j.at("type").is_string())
    throw std::runtime_error("config is missing the root system \"type\"");
  c.type = j.at("type").get<std::string>();
  if (!j.contains("m") || !j.at("m").is_number_integer())
    throw std::runtime_error("config field \"m\" must be an integer");
  c.m = j.at("m").get<long>();
  if (c.m < 1) throw std::runtime_error("refinement parameter must be a positive integer");
  c.r = field_rat(j, "r");
  if (sgn(c.r) < 0) throw std::runtime_error("filtration depth must be nonnegative");
  if (!on_grid(c.r, c.m)) throw std::runtime_error("filtration depth must lie on the 1/m grid");
  c.window_radius = field_rat(j, "window_radius");
  if (!is_integer(c.window_radius) || c.window_radius < 1)
    throw std::runtime_error("window radius must be an integer of at least 1");
  if (!j.contains("base_vertex") || !j.at("base_vertex").is_array())
    throw std::runtime_error("config field \"base_vertex\" must be an array of rationals");
  for (const auto& e : j.at("base_vertex")) {
    if (!e.is_string())
      throw std::runtime_error("base vertex coordinates must be rationals written as strings");
    c.base_vertex.push_back(parse_rat(e.get<std::string>()));
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

json config_json(const RunConfig& c) {
  json j;
  j["type"] = c.type;
  j["m"] = c.m;
  j["r"] = rat_str(c.r);
  j["window_radius"] = rat_str(c.window_radius);
  json bv = json::array();
  for (const Rat& q : c.base_vertex) bv.push_back(rat_str(q));
  j["base_vertex"] = bv;
  return j;
}

}  // namespace

std::string config_text(const RunConfig& c) { return config_json(c).dump(2) + "\n"; }

CellComplex build_from_config(const RunConfig& c) {
  FiniteRootSystem sys = build_root_system(c.type);
  if ((int)c.base_vertex.size() != sys.rank)
    throw std::runtime_error("base vertex dimension does not match the root system rank");
  CellComplex cx = build_complex(sys, c.m, c.base_vertex, rat_num(c.window_radius).get_si());
  if (cx.cells[(size_t)cx.cell_at(c.base_vertex)].dim != 0)
    throw std::runtime_error("base vertex is not a vertex of the complex");
  return cx;
}

void save_chains(const std::string& path, const RunConfig& c, const Contraction& ct) {
  json j;
  j["config"] = config_json(c);
  j["region_radius"] = ct.region_radius;
  j["base_cell"] = ct.base_cell;
  json maps;
  for (const auto& [cell, chain] : ct.maps) {
    json e;
    e["degree"] = chain.dim;
    json terms = json::array();
    for (const auto& [id, v] : chain.coef) {
      if (!v.fits_slong_p())
        throw std::runtime_error("chain coefficient exceeds the dump integer range");
      terms.push_back(json::array({id, (long long)v.get_si()}));
    }
    e["terms"] = terms;
    maps[std::to_string(cell)] = e;
  }
  j["maps"] = maps.is_null() ? json::object() : maps;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write chain file: " + path);
  out << j.dump(2) << "\n";
}

LoadedChains load_chains(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open chain file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  json j = json::parse(ss.str());
  LoadedChains lc;
  if (!j.contains("config")) throw std::runtime_error("chain file has no embedded config");
  lc.config = parse_config(j.at("config").dump());
  lc.region_radius = j.value("region_radius", (long)-1);
  lc.base_cell = j.value("base_cell", -1);
  if (!j.contains("maps") || !j.at("maps").is_object())
    throw std::runtime_error("chain file has no \"maps\" object");
  for (const auto& [key, e] : j.at("maps").items()) {
    if (!e.is_object() || !e.contains("degree") || !e.contains("terms"))
      throw std::runtime_error("chain entry must carry \"degree\" and \"terms\"");
    Chain ch;
    ch.dim = e.at("degree").get<int>();
    for (const auto& t : e.at("terms")) {
      if (!t.is_array() || t.size() != 2)
        throw std::runtime_error("chain term must be a [cell, coefficient] pair");
      Int v = t[1].is_string() ? Int(t[1].get<std::string>()) : Int((long)t[1].get<long long>());
      ch.coef[t[0].get<int>()] = v;
    }
    lc.maps[std::stoi(key)] = std::move(ch);
  }
  return lc;
}

Contraction attach_chains(const CellComplex& cx, const LoadedChains& lc) {
  Contraction ct;
  ct.base_cell = cx.cell_at(cx.center);
  if (lc.base_cell != ct.base_cell)
    throw std::runtime_error("stored base cell does not match the rebuilt complex");
  ct.region_radius = lc.region_radius;
  ct.region = verification_region(cx, lc.region_radius);
  ct.maps = lc.maps;
  for (auto& [cell, chain] : ct.maps) {
    if (cell < 0 || cell >= (int)cx.cells.size())
      throw std::runtime_error("stored chain references a cell outside the complex");
    if (chain.dim != cx.cells[(size_t)cell].dim + 1)
      throw std::runtime_error("stored chain degree does not match its cell dimension");
    for (const auto& [id, v] : chain.coef) {
      if (id < 0 || id >= (int)cx.cells.size())
        throw std::runtime_error("stored chain references a cell outside the complex");
      if (cx.cells[(size_t)id].dim != chain.dim)
        throw std::runtime_error("stored chain entry has the wrong dimension");
      if (sgn(v) == 0) throw std::runtime_error("stored chain carries a zero coefficient");
    }
  }
  return ct;
}

}  // namespace apex
