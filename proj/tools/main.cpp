#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "apex/config.hpp"
#include "apex/contraction.hpp"
#include "apex/moy_prasad.hpp"
#include "apex/render.hpp"
#include "apex/root_system.hpp"
#include "apex/sl2.hpp"
#include "apex/support.hpp"

using nlohmann::json;

namespace {

void write_or_print(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write output file: " + out);
  f << text;
}

apex::Vec parse_vec(const std::string& s) {
  apex::Vec v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(apex::parse_rat(tok));
  if (v.empty()) throw std::runtime_error("empty coordinate list");
  return v;
}

std::vector<long> parse_radii(const std::string& s) {
  std::vector<long> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(std::stol(tok));
  if (v.empty()) throw std::runtime_error("empty radius list");
  return v;
}

json complex_dump(const apex::CellComplex& cx) {
  json cells = json::array();
  for (const auto& c : cx.cells) {
    json e;
    e["id"] = c.id;
    e["dim"] = c.dim;
    e["vertices"] = c.verts;
    json faces = json::array();
    for (int t : cx.faces[(size_t)c.id])
      faces.push_back(json::array({t, apex::incidence_sign(cx, c.id, t)}));
    e["faces"] = faces;
    cells.push_back(e);
  }
  json counts = json::array();
  for (int d = 0; d <= cx.top_dim(); ++d) counts.push_back(cx.count_of_dim(d));
  json j;
  j["counts"] = counts;
  j["euler"] = apex::euler_characteristic(cx);
  j["cells"] = cells;
  return j;
}

int cmd_apartment(const std::string& config_path, const std::string& out) {
  apex::RunConfig cfg = apex::load_config(config_path);
  apex::CellComplex cx = apex::build_from_config(cfg);
  json j = complex_dump(cx);
  j["config"] = json::parse(apex::config_text(cfg));
  write_or_print(j.dump(2) + "\n", out);
  return 0;
}

int cmd_contract(const std::string& config_path, long region_radius, const std::string& out) {
  apex::RunConfig cfg = apex::load_config(config_path);
  apex::CellComplex cx = apex::build_from_config(cfg);
  apex::Contraction ct = apex::build_contraction(cx, region_radius);
  apex::save_chains(out, cfg, ct);
  apex::Int max_coeff = 0;
  for (const auto& [cell, chain] : ct.maps)
    for (const auto& [id, v] : chain.coef)
      if (apex::int_abs(v) > max_coeff) max_coeff = apex::int_abs(v);
  json j;
  j["out"] = out;
  j["cells"] = cx.cells.size();
  j["region"] = ct.region.size();
  j["mapped"] = ct.maps.size();
  j["max_coeff"] = max_coeff.get_str();
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& chains_path, int jobs) {
  apex::LoadedChains lc = apex::load_chains(chains_path);
  apex::CellComplex cx = apex::build_from_config(lc.config);
  apex::Contraction ct = apex::attach_chains(cx, lc);
  apex::ContractionReport rep = apex::verify_contraction(cx, ct, jobs);
  json j;
  j["identity"] = rep.identity ? "pass" : "fail";
  j["support"] = rep.support ? "pass" : "fail";
  j["equivariance"] = rep.equivariance ? "pass" : "fail";
  j["pointwise_fix"] = rep.pointwise_fix ? "pass" : "fail";
  j["checked"] = rep.checked;
  j["max_coeff"] = rep.max_coeff.get_str();
  if (!rep.detail.empty()) j["detail"] = rep.detail;
  std::cout << j.dump(2) << "\n";
  return rep.all_ok() ? 0 : 1;
}

int cmd_bounds(const std::string& type, long m, const std::string& radii, double budget,
               const std::string& out) {
  std::vector<apex::SweepRow> rows =
      apex::coefficient_bound_sweep(type, m, parse_radii(radii), budget);
  std::string csv = "radius,max_coeff,timed_out\n";
  for (const auto& row : rows)
    csv += std::to_string(row.radius) + "," + row.max_coeff.get_str() + "," +
           (row.timed_out ? "1" : "0") + "\n";
  write_or_print(csv, out);
  return 0;
}

int cmd_support(const std::string& config_path, int sigma, const std::string& out) {
  apex::RunConfig cfg = apex::load_config(config_path);
  apex::CellComplex cx = apex::build_from_config(cfg);
  apex::Support sup = apex::support_subcomplex(cx, sigma);
  json j;
  j["sigma"] = sigma;
  j["cells"] = sup.cells;
  j["core"] = sup.core;
  write_or_print(j.dump(2) + "\n", out);
  return 0;
}

int cmd_mp_index(const std::string& type, const std::string& x, const std::string& r,
                 bool nonstrict) {
  apex::FiniteRootSystem sys = apex::build_root_system(type);
  apex::MPFiltration f = apex::index_set(sys, parse_vec(x), apex::parse_rat(r), !nonstrict);
  json t = json::array();
  for (const apex::Int& n : f.t) t.push_back(n.get_si());
  json j;
  j["type"] = f.label;
  j["strict"] = f.strict;
  j["t"] = t;
  j["t0"] = f.t0.get_si();
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_mp_mp1(const std::string& type, const std::string& x, const std::string& y,
               const std::string& z, const std::string& r) {
  apex::FiniteRootSystem sys = apex::build_root_system(type);
  apex::MP1Result res =
      apex::lemma_mp1_check(sys, parse_vec(x), parse_vec(y), parse_vec(z), apex::parse_rat(r));
  json j;
  j["ok"] = res.ok;
  j["positive"] = res.positive;
  std::cout << j.dump(2) << "\n";
  return res.ok ? 0 : 1;
}

int cmd_mp_mp2(const std::string& config_path, int sigma, int tau) {
  apex::RunConfig cfg = apex::load_config(config_path);
  apex::CellComplex cx = apex::build_from_config(cfg);
  auto w = apex::lemma_mp2_witness(cx, sigma, tau, cfg.r);
  json j;
  j["sigma"] = sigma;
  j["tau"] = tau;
  j["found"] = w.has_value();
  if (w) {
    json y = json::array(), z = json::array();
    for (const apex::Rat& q : w->y) y.push_back(apex::rat_str(q));
    for (const apex::Rat& q : w->z) z.push_back(apex::rat_str(q));
    j["y"] = y;
    j["z"] = z;
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_sl2(uint64_t p, int radius, const std::string& r, const std::string& level_s,
            const std::string& rep_s) {
  int level = 0;
  if (level_s != "auto") level = std::stoi(level_s);
  if (rep_s != "perm" && rep_s != "trivial")
    throw std::runtime_error("--rep must be perm or trivial");
  apex::ExactnessReport rep =
      apex::exactness_report(p, radius, apex::parse_rat(r), level, rep_s == "perm");
  json dims;
  dims["c1"] = rep.dims[0];
  dims["c0"] = rep.dims[1];
  dims["cm1"] = rep.dims[2];
  dims["v"] = rep.dim_v;
  json j;
  j["level"] = rep.level;
  j["group_order"] = rep.group_order;
  j["homology"] = json::array({rep.homology[0], rep.homology[1], rep.homology[2]});
  j["dims"] = dims;
  j["coset_checks"] = rep.coset_ok ? "pass" : "fail";
  j["iwahori_checks"] = rep.iwahori_ok ? "pass" : "fail";
  j["exact_ranks"] = rep.exact_ranks;
  std::cout << j.dump(2) << "\n";
  bool zero = rep.homology[0] == 0 && rep.homology[1] == 0 && rep.homology[2] == 0;
  return (zero && rep.coset_ok && rep.iwahori_ok) ? 0 : 1;
}

int cmd_render(const std::string& type, long m, long radius, int sigma, const std::string& out) {
  apex::FiniteRootSystem sys = apex::build_root_system(type);
  apex::Vec origin((size_t)sys.rank, apex::Rat(0));
  apex::CellComplex cx = apex::build_complex(sys, m, origin, radius);
  if (sys.rank > 2) {
    json j = complex_dump(cx);
    write_or_print(j.dump(2) + "\n", out);
    return 0;
  }
  if (sigma >= 0) {
    if (sigma >= (int)cx.cells.size()) throw std::runtime_error("cell id is outside the complex");
    apex::Support sup = apex::support_subcomplex(cx, sigma);
    apex::Contraction ct = apex::build_contraction(cx);
    auto it = ct.maps.find(sigma);  // top-dimension cells carry no chain
    write_or_print(apex::render_svg(cx, sigma, &sup, it == ct.maps.end() ? nullptr : &it->second),
                   out);
  } else {
    write_or_print(apex::render_svg(cx), out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for windowed affine apartments, cone contractions, "
               "depth filtrations, and the residue-tree exactness check"};
  app.require_subcommand(1);

  uint64_t seed = 12345;
  int jobs = 1;
  app.add_option("--seed", seed, "seed for sampled runs")->capture_default_str();
  app.add_option("--jobs", jobs, "worker threads for verification")->capture_default_str();

  std::string config_path, out, chains_path;
  long region_radius = -1;

  CLI::App* apartment = app.add_subcommand("apartment", "dump the windowed cell complex");
  apartment->add_option("--config", config_path, "run configuration file")->required();
  apartment->add_option("--out", out, "output file (default stdout)");

  CLI::App* contract = app.add_subcommand("contract", "build the cone contraction");
  contract->add_option("--config", config_path, "run configuration file")->required();
  contract->add_option("--region-radius", region_radius, "verification region radius")
      ->capture_default_str();
  std::string chains_out = "chains.json";
  contract->add_option("--out", chains_out, "chain file to write")->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "re-check a stored contraction");
  verify->add_option("--chains", chains_path, "chain file from contract")->required();

  CLI::App* bounds = app.add_subcommand("bounds", "coefficient growth sweep (CSV)");
  std::string b_type = "A1", b_radii;
  long b_m = 1;
  double b_budget = 0.0;
  bounds->add_option("--type", b_type, "root system label")->required();
  bounds->add_option("--m", b_m, "refinement parameter")->capture_default_str();
  bounds->add_option("--radii", b_radii, "comma-separated window radii")->required();
  bounds->add_option("--budget", b_budget, "time budget in seconds (0: none)")
      ->capture_default_str();
  bounds->add_option("--out", out, "output file (default stdout)");

  CLI::App* support = app.add_subcommand("support", "support subcomplex of a cell");
  int s_sigma = -1;
  support->add_option("--config", config_path, "run configuration file")->required();
  support->add_option("--sigma", s_sigma, "cell id")->required();
  support->add_option("--out", out, "output file (default stdout)");

  CLI::App* mp = app.add_subcommand("mp", "depth filtration queries");
  mp->require_subcommand(1);
  std::string m_type = "A1", m_x, m_y, m_z, m_r;
  bool m_nonstrict = false;
  int m_sigma = -1, m_tau = -1;
  CLI::App* mp_index = mp->add_subcommand("index", "threshold table at a point");
  mp_index->add_option("--type", m_type, "root system label")->required();
  mp_index->add_option("--x", m_x, "point, comma-separated rationals")->required();
  mp_index->add_option("--r", m_r, "filtration depth")->required();
  mp_index->add_flag("--nonstrict", m_nonstrict, "weak thresholds instead of strict");
  CLI::App* mp_mp1 = mp->add_subcommand("mp1", "segment product-decomposition check");
  mp_mp1->add_option("--type", m_type, "root system label")->required();
  mp_mp1->add_option("--x", m_x, "segment start")->required();
  mp_mp1->add_option("--y", m_y, "segment end")->required();
  mp_mp1->add_option("--z", m_z, "point on the segment")->required();
  mp_mp1->add_option("--r", m_r, "filtration depth")->required();
  CLI::App* mp_mp2 = mp->add_subcommand("mp2", "face-group witness points");
  mp_mp2->add_option("--config", config_path, "run configuration file")->required();
  mp_mp2->add_option("--sigma", m_sigma, "base cell id")->required();
  mp_mp2->add_option("--tau", m_tau, "face cell id")->required();

  CLI::App* sl2 = app.add_subcommand("sl2", "residue tree checks");
  sl2->require_subcommand(1);
  uint64_t t_p = 2;
  int t_radius = 1;
  std::string t_r = "3/2", t_level = "auto", t_rep = "perm";
  CLI::App* sl2_ex = sl2->add_subcommand("exactness", "projected coefficient-complex exactness");
  sl2_ex->add_option("--p", t_p, "residue characteristic")->required();
  sl2_ex->add_option("--R", t_radius, "tree ball radius")->capture_default_str();
  sl2_ex->add_option("--r", t_r, "filtration depth")->required();
  sl2_ex->add_option("--N", t_level, "congruence level, or auto")->capture_default_str();
  sl2_ex->add_option("--rep", t_rep, "coefficient module: perm or trivial")
      ->capture_default_str();

  CLI::App* render = app.add_subcommand("render", "SVG picture of the apartment");
  std::string r_type = "A2";
  long r_m = 1, r_radius = 3;
  int r_sigma = -1;
  render->add_option("--type", r_type, "root system label")->required();
  render->add_option("--m", r_m, "refinement parameter")->capture_default_str();
  render->add_option("--R", r_radius, "window radius")->capture_default_str();
  render->add_option("--sigma", r_sigma, "cell id to highlight (-1: none)")
      ->capture_default_str();
  render->add_option("--out", out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (apartment->parsed()) return cmd_apartment(config_path, out);
    if (contract->parsed()) return cmd_contract(config_path, region_radius, chains_out);
    if (verify->parsed()) return cmd_verify(chains_path, jobs);
    if (bounds->parsed()) return cmd_bounds(b_type, b_m, b_radii, b_budget, out);
    if (support->parsed()) return cmd_support(config_path, s_sigma, out);
    if (mp->parsed()) {
      if (mp->got_subcommand(mp_index)) return cmd_mp_index(m_type, m_x, m_r, m_nonstrict);
      if (mp->got_subcommand(mp_mp1)) return cmd_mp_mp1(m_type, m_x, m_y, m_z, m_r);
      if (mp->got_subcommand(mp_mp2)) return cmd_mp_mp2(config_path, m_sigma, m_tau);
    }
    if (sl2->parsed()) return cmd_sl2(t_p, t_radius, t_r, t_level, t_rep);
    if (render->parsed()) return cmd_render(r_type, r_m, r_radius, r_sigma, out);
  } catch (const apex::HullEscapeError& e) {
    std::cerr << "error: " << e.what() << "\n"
              << "hint: raise \"window_radius\" in the configuration and rerun\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
