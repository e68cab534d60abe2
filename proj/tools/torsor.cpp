// Command-line front end: surface table, target derivation, the four prime
// solvers, singular series, main-term desk checks, M_U counts and grid
// experiments, and the surface-table exactness run.

#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "torsor/circle.hpp"
#include "torsor/harness.hpp"
#include "torsor/surfaces.hpp"
#include "torsor/targets.hpp"

using json = nlohmann::ordered_json;
using namespace torsor;

namespace {

std::array<double, 4> parse_xi(const std::string& csv) {
  std::array<double, 4> xi{};
  std::stringstream ss(csv);
  std::string tok;
  int i = 0;
  while (std::getline(ss, tok, ',')) {
    if (i >= 4) throw error(errc::bad_config, "--xi needs exactly 4 components");
    xi[i++] = std::stod(tok);
  }
  if (i != 4) throw error(errc::bad_config, "--xi needs exactly 4 components");
  return xi;
}

std::vector<int> parse_signs(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const int v = std::stoi(tok);
    if (v != 1 && v != -1) throw error(errc::bad_config, "betas must be 1 or -1");
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_reals(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

std::vector<uint64_t> parse_u64s(const std::string& csv) {
  std::vector<uint64_t> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoull(tok));
  return out;
}

void cmd_surfaces_list() {
  std::printf("%-4s %-28s %-36s %s\n", "id", "singularities", "equation", "r bound");
  for (auto id : surfaces::all_ids()) {
    const auto& s = surfaces::spec(id);
    std::printf("%-4s %-28s %-36s %d\n", std::string(surfaces::name(id)).c_str(),
                std::string(s.singularity).c_str(), std::string(s.equation).c_str(), s.r_bound);
  }
}

void cmd_derive(const std::string& surface, const std::string& xi_csv) {
  const auto id = surfaces::surface_from_name(surface);
  const auto xi = parse_xi(xi_csv);
  const auto d = targets::derive_generic(id, xi);
  json out;
  out["surface"] = surfaces::name(id);
  out["family"] = solvers::family_name(d.family);
  out["gammas"] = d.gammas;
  out["betas"] = d.betas;
  out["exponents"] = d.exponents;
  std::cout << out.dump(2) << "\n";
}

struct SolveArgs {
  std::string family;
  std::string betas;
  std::string gammas;
  uint64_t B = 1000000;
  double delta = 0.1;
  double alpha = 1.0 / 3.0;
  int two_slot = 0;
  std::string weight = "log";
  std::string emit = "count";
  std::string format = "csv";
  int workers = 0;
};

void cmd_solve(const SolveArgs& args) {
  solvers::ConstraintFamily fam;
  fam.kind = solvers::family_from_name(args.family);
  fam.betas = parse_signs(args.betas);
  fam.two_slot = args.two_slot;
  fam.alpha = args.alpha;

  solvers::IntervalFamily iv;
  iv.gammas = parse_reals(args.gammas);
  iv.exponents = solvers::default_exponents(fam);
  iv.B = args.B;
  iv.delta = args.delta;

  const int workers = args.workers > 0 ? args.workers : harness::default_workers();
  const auto weight = args.weight == "unit" ? solvers::Weight::Unit : solvers::Weight::Log;

  std::vector<std::vector<int64_t>> tuples;
  double weighted = 0.0;
  auto collect = [&](const auto& sols) {
    weighted = solvers::weighted_count(std::span(sols), weight);
    for (const auto& s : sols) tuples.emplace_back(s.begin(), s.end());
  };
  switch (fam.kind) {
    case solvers::FamilyKind::F1: collect(solvers::solve_F1(fam, iv, workers)); break;
    case solvers::FamilyKind::F2: collect(solvers::solve_F2(fam, iv, workers)); break;
    case solvers::FamilyKind::F3: collect(solvers::solve_F3(fam, iv, workers)); break;
    case solvers::FamilyKind::F4: collect(solvers::solve_F4(fam, iv, workers)); break;
  }

  if (args.emit == "count") {
    if (args.format == "json") {
      json out;
      out["family"] = args.family;
      out["B"] = args.B;
      out["solutions"] = tuples.size();
      out["weighted"] = weighted;
      out["weight"] = args.weight;
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "family,B,solutions,weighted,weight\n";
      std::cout << args.family << ',' << args.B << ',' << tuples.size() << ',' << weighted << ','
                << args.weight << "\n";
    }
    return;
  }
  if (args.format == "json") {
    json out = json::array();
    for (const auto& t : tuples) out.push_back(t);
    std::cout << out.dump() << "\n";
  } else {
    const int arity = solvers::family_arity(fam.kind);
    for (int j = 0; j < arity; ++j) std::cout << (j ? "," : "") << "p" << (j + 1);
    std::cout << "\n";
    for (const auto& t : tuples) {
      for (size_t j = 0; j < t.size(); ++j) std::cout << (j ? "," : "") << t[j];
      std::cout << "\n";
    }
  }
}

void cmd_series(uint64_t P) {
  const auto sv = circle::singular_series(P);
  json out;
  out["P"] = sv.P;
  out["S_product"] = sv.product;
  out["S_partial_sum"] = sv.partial_sum;
  out["diff"] = sv.diff();
  std::cout << out.dump(2) << "\n";
}

void cmd_aq(uint64_t q) {
  const auto v = circle::A_of_q(q);
  json out;
  out["q"] = q;
  out["A_q"] = v.get_str();
  out["A_q_real"] = v.get_d();
  std::cout << out.dump(2) << "\n";
}

void cmd_circle_verify(const std::string& grid_csv, const std::string& gammas_csv,
                       const std::string& betas_csv, double delta) {
  const auto grid = parse_u64s(grid_csv);
  auto gv = parse_reals(gammas_csv);
  auto bv = parse_signs(betas_csv);
  if (gv.size() != 4 || bv.size() != 3) {
    throw error(errc::bad_config, "circle-verify needs 4 gammas and 3 betas");
  }
  std::array<double, 4> gammas{gv[0], gv[1], gv[2], gv[3]};
  std::array<int, 3> betas{bv[0], bv[1], bv[2]};

  json rows = json::array();
  std::vector<double> ratios;
  for (uint64_t B : grid) {
    const auto rep = circle::main_term_check(B, gammas, betas, delta);
    json row;
    row["B"] = rep.B;
    row["R1"] = rep.R1;
    row["J"] = rep.J;
    row["S"] = rep.S;
    if (rep.ratio_defined) {
      row["ratio"] = rep.ratio;
      ratios.push_back(rep.ratio);
    } else {
      row["ratio"] = nullptr;  // J == 0, reported as undefined
    }
    rows.push_back(row);
  }
  json out;
  out["rows"] = rows;
  if (ratios.size() >= 2) {
    int improving = 0;
    for (size_t i = 1; i < ratios.size(); ++i) {
      if (std::abs(ratios[i] - 1.0) <= std::abs(ratios[i - 1] - 1.0)) ++improving;
    }
    out["abs_ratio_gap_non_increasing_steps"] = improving;
    out["steps"] = ratios.size() - 1;
  }
  std::cout << out.dump(2) << "\n";
}

void cmd_count(const std::string& surface, const std::string& xi_csv, double epsilon, uint64_t B, int r) {
  const auto id = surfaces::surface_from_name(surface);
  const auto xi = parse_xi(xi_csv);
  const int rr = r > 0 ? r : surfaces::spec(id).r_bound;
  const uint64_t m = harness::count_M(id, xi, epsilon, B, rr, harness::default_workers());
  std::cout << m << "\n";
}

int cmd_verify_table1(uint64_t seed, int samples) {
  const auto results = harness::verify_table1(seed, samples);
  bool all_pass = true;
  for (const auto& res : results) {
    const auto& s = surfaces::spec(res.surface);
    std::printf("%-4s Omega=%-2d rtilde<=%d samples=%-4d %s%s\n",
                std::string(surfaces::name(res.surface)).c_str(), s.r_bound, s.rtilde_bound, res.samples,
                res.pass ? "pass" : "FAIL ", res.pass ? "" : res.first_failure.c_str());
    all_pass = all_pass && res.pass;
  }
  return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"almost-prime points on the eight singular cubic surfaces"};
  app.require_subcommand(1);

  auto* sc_surfaces = app.add_subcommand("surfaces", "surface table");
  sc_surfaces->add_subcommand("list", "print id, singularities, equation, r bound");

  std::string surface = "X1", xi_csv;
  auto* sc_derive = app.add_subcommand("derive", "derive (gamma, beta) data from a target point");
  sc_derive->add_option("--surface", surface, "surface id X1..X8")->required();
  sc_derive->add_option("--xi", xi_csv, "target point, 4 comma-separated reals")->required();

  SolveArgs sa;
  auto* sc_solve = app.add_subcommand("solve", "enumerate prime solutions of one family");
  sc_solve->add_option("--family", sa.family, "F1, F2, F3 or F4")->required();
  sc_solve->add_option("--betas", sa.betas, "sign vector, e.g. -1,1,1")->required();
  sc_solve->add_option("--gammas", sa.gammas, "gamma vector")->required();
  sc_solve->add_option("--B", sa.B, "scale parameter");
  sc_solve->add_option("--delta", sa.delta, "interval half-width parameter");
  sc_solve->add_option("--alpha", sa.alpha, "F2 interval exponent");
  sc_solve->add_option("--two-slot", sa.two_slot, "F2 slot carrying the coefficient 2");
  sc_solve->add_option("--weight", sa.weight, "log or unit")->check(CLI::IsMember({"log", "unit"}));
  sc_solve->add_option("--emit", sa.emit, "count or tuples")->check(CLI::IsMember({"count", "tuples"}));
  sc_solve->add_option("--format", sa.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sc_solve->add_option("--workers", sa.workers, "worker threads (0 = default)");

  uint64_t P = 100000;
  auto* sc_series = app.add_subcommand("series", "truncated singular series, both forms");
  sc_series->add_option("--P", P, "truncation point");

  uint64_t q = 1;
  auto* sc_aq = app.add_subcommand("aq", "the exact rational A(q)");
  sc_aq->add_option("--q", q, "modulus")->required();

  std::string grid_csv = "1000000", cv_gammas = "1,1,1,1", cv_betas = "-1,1,1";
  double cv_delta = 0.1;
  uint64_t cv_B = 0;
  auto* sc_cv = app.add_subcommand("circle-verify", "R1(B) vs J(B)*S desk comparison");
  sc_cv->add_option("--B", cv_B, "single B (overrides --grid)");
  sc_cv->add_option("--grid", grid_csv, "comma-separated B grid");
  sc_cv->add_option("--gammas", cv_gammas, "4 gammas satisfying the F1 relation");
  sc_cv->add_option("--betas", cv_betas, "3 signs");
  sc_cv->add_option("--delta", cv_delta, "interval parameter");

  std::string c_surface, c_xi;
  double c_eps = 0.3;
  uint64_t c_B = 0;
  int c_r = 0;
  auto* sc_count = app.add_subcommand("count", "count almost-prime points near a target");
  sc_count->add_option("--surface", c_surface)->required();
  sc_count->add_option("--xi", c_xi)->required();
  sc_count->add_option("--epsilon", c_eps);
  sc_count->add_option("--B", c_B)->required();
  sc_count->add_option("--r", c_r, "almost-prime bound (0 = the surface r bound)");

  std::string config_path;
  auto* sc_grid = app.add_subcommand("grid", "run a B-grid experiment from a config file");
  sc_grid->add_option("--config", config_path, "flat key = value experiment file")->required();

  uint64_t vt_seed = 1;
  int vt_samples = 500;
  auto* sc_vt = app.add_subcommand("verify-table1", "exactness run over all eight surfaces");
  sc_vt->add_option("--seed", vt_seed);
  sc_vt->add_option("--samples", vt_samples);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sc_surfaces->parsed()) {
      cmd_surfaces_list();
    } else if (sc_derive->parsed()) {
      cmd_derive(surface, xi_csv);
    } else if (sc_solve->parsed()) {
      cmd_solve(sa);
    } else if (sc_series->parsed()) {
      cmd_series(P);
    } else if (sc_aq->parsed()) {
      cmd_aq(q);
    } else if (sc_cv->parsed()) {
      cmd_circle_verify(cv_B > 0 ? std::to_string(cv_B) : grid_csv, cv_gammas, cv_betas, cv_delta);
    } else if (sc_count->parsed()) {
      cmd_count(c_surface, c_xi, c_eps, c_B, c_r);
    } else if (sc_grid->parsed()) {
      auto cfg = harness::parse_config_file(config_path);
      auto rep = harness::run_grid(cfg, harness::default_workers());
      harness::write_report(rep);
    } else if (sc_vt->parsed()) {
      return cmd_verify_table1(vt_seed, vt_samples);
    }
  } catch (const torsor::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad numeric argument: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
