#include "torsor/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "torsor/circle.hpp"

namespace torsor::harness {

using surfaces::SurfaceId;

int default_workers() {
  if (const char* env = std::getenv("TORSOR_WORKERS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

namespace {

std::vector<int64_t> window_primes(const solvers::PrimeWindow& w) {
  std::vector<int64_t> out;
  if (w.empty() || w.ihi < 3) return out;
  auto ps = arith::primes_in(static_cast<uint64_t>(std::max<int64_t>(w.ilo, 3)), static_cast<uint64_t>(w.ihi));
  for (uint64_t p : ps) {
    if (p % 2 == 1) out.push_back(static_cast<int64_t>(p));
  }
  return out;
}

// Family-slot tuples of the surface's constraint, as surface-slot prime
// vectors with free slots left 0.
std::vector<std::vector<uint64_t>> enumerate_family(const surfaces::SurfaceSpec& s,
                                                    const targets::TargetDerivation& d, uint64_t B,
                                                    double delta, int workers) {
  solvers::ConstraintFamily fam;
  fam.kind = s.family;
  fam.two_slot = s.two_slot;
  fam.betas.clear();
  for (const auto& fs : s.family_signs) {
    int b = fs.sign;
    for (int bi : fs.betas) b *= d.betas[bi];
    fam.betas.push_back(b);
  }
  solvers::IntervalFamily iv;
  iv.B = B;
  iv.delta = delta;
  for (int slot : s.family_slots) {
    iv.gammas.push_back(d.gammas[slot]);
    iv.exponents.push_back(d.exponents[slot]);
  }
  if (s.family == solvers::FamilyKind::F2) fam.alpha = iv.exponents[0];

  std::vector<std::vector<uint64_t>> out;
  auto push = [&](const auto& tuples) {
    for (const auto& tup : tuples) {
      std::vector<uint64_t> primes(s.k, 0);
      for (size_t j = 0; j < tup.size(); ++j) primes[s.family_slots[j]] = static_cast<uint64_t>(tup[j]);
      out.push_back(std::move(primes));
    }
  };
  switch (s.family) {
    case solvers::FamilyKind::F1: push(solvers::solve_F1(fam, iv, workers)); break;
    case solvers::FamilyKind::F2: push(solvers::solve_F2(fam, iv, workers)); break;
    case solvers::FamilyKind::F3: push(solvers::solve_F3(fam, iv, workers)); break;
    case solvers::FamilyKind::F4: push(solvers::solve_F4(fam, iv, workers)); break;
  }
  return out;
}

}  // namespace

uint64_t count_M(SurfaceId id, const std::array<double, 4>& xi, double epsilon, uint64_t B, int r,
                 int workers) {
  if (r < 1) throw error(errc::bad_config, "count_M: r must be >= 1");
  if (B < 2) throw error(errc::bad_config, "count_M: B must be >= 2");
  const auto& s = surfaces::spec(id);
  auto d = targets::derive_generic(id, xi);
  const double delta = targets::auto_delta(d, xi, epsilon);
  auto windows = targets::realize_windows(d, B, delta);

  auto family_tuples = enumerate_family(s, d, B, delta, workers);

  // Expand the free slots over their own prime windows.
  std::vector<std::vector<uint64_t>> assignments;
  if (s.free_slots.empty()) {
    assignments = std::move(family_tuples);
  } else {
    std::vector<std::vector<int64_t>> free_primes;
    for (int slot : s.free_slots) free_primes.push_back(window_primes(windows[slot]));
    for (const auto& base : family_tuples) {
      std::vector<std::vector<uint64_t>> acc{base};
      for (size_t f = 0; f < s.free_slots.size(); ++f) {
        std::vector<std::vector<uint64_t>> next;
        for (const auto& partial : acc) {
          for (int64_t p : free_primes[f]) {
            auto full = partial;
            full[s.free_slots[f]] = static_cast<uint64_t>(p);
            next.push_back(std::move(full));
          }
        }
        acc = std::move(next);
      }
      for (auto& a : acc) assignments.push_back(std::move(a));
    }
  }

  std::set<std::array<std::string, 4>> points;
  for (const auto& primes : assignments) {
    bool ok = true;
    for (size_t i = 0; i < primes.size() && ok; ++i) {
      if (primes[i] < 3 || primes[i] % 2 == 0) ok = false;
      for (size_t j = i + 1; j < primes.size() && ok; ++j) {
        if (primes[i] == primes[j]) ok = false;
      }
    }
    if (!ok) continue;

    surfaces::PrimeAssignment a{id, d.betas, primes};
    auto pt = surfaces::parametrize(a);

    std::array<BigInt, 4> values;
    for (int i = 0; i < 4; ++i) values[i] = pt[i].value;
    if (arith::gcd4(values) != 1) continue;

    auto prod = pt[0] * pt[1] * pt[2] * pt[3];
    if (arith::big_omega(prod) > static_cast<uint64_t>(r)) continue;

    bool in_box = true;
    for (int i = 0; i < 4 && in_box; ++i) {
      const double coord = values[i].get_d() / static_cast<double>(B);
      if (!(std::abs(coord - xi[i]) < epsilon)) in_box = false;
    }
    if (!in_box) continue;

    points.insert({values[0].get_str(), values[1].get_str(), values[2].get_str(), values[3].get_str()});
  }
  return points.size();
}

double reference_curve(SurfaceId id, uint64_t B) {
  const double lb = std::log(static_cast<double>(B));
  if (id == SurfaceId::X8) return std::pow(static_cast<double>(B), 3.0 / 7.0) / std::pow(lb, 4);
  const int k = id == SurfaceId::X2 ? 5 : 4;
  return static_cast<double>(B) / std::pow(lb, k);
}

CountReport run_grid(const GridConfig& cfg_in, int workers) {
  GridConfig cfg = cfg_in;
  if (cfg.B_grid.empty()) throw error(errc::bad_config, "run_grid: empty B_grid");
  if (cfg.r == 0) cfg.r = surfaces::spec(cfg.surface).r_bound;
  std::sort(cfg.B_grid.begin(), cfg.B_grid.end());

  CountReport rep;
  rep.meta = cfg;
  rep.rows.resize(cfg.B_grid.size());

  const int n = std::max(1, workers);
  std::vector<std::future<void>> tasks;
  std::atomic<size_t> next{0};
  auto body = [&] {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= cfg.B_grid.size()) return;
      const auto t0 = std::chrono::steady_clock::now();
      CountRow row;
      row.B = cfg.B_grid[i];
      row.M = count_M(cfg.surface, cfg.xi, cfg.epsilon, row.B, cfg.r, 1);
      row.reference = reference_curve(cfg.surface, row.B);
      row.normalized = static_cast<double>(row.M) / row.reference;
      row.elapsed_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
      rep.rows[i] = row;
    }
  };
  if (n == 1 || cfg.B_grid.size() == 1) {
    body();
  } else {
    for (int w = 0; w < n; ++w) tasks.push_back(std::async(std::launch::async, body));
    for (auto& t : tasks) t.get();
  }
  rep.zero_at_largest = rep.rows.back().M == 0;
  return rep;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// xi is echoed at full precision so a report regenerates its own experiment.
std::string xi_string(const std::array<double, 4>& xi, char sep = ',') {
  std::string out;
  char buf[64];
  for (int i = 0; i < 4; ++i) {
    if (i) out += sep;
    std::snprintf(buf, sizeof(buf), "%.17g", xi[i]);
    out += buf;
  }
  return out;
}

}  // namespace

void write_csv(const CountReport& rep, std::ostream& out) {
  out << "# surface=" << surfaces::name(rep.meta.surface) << " xi=" << xi_string(rep.meta.xi)
      << " epsilon=" << format_double(rep.meta.epsilon) << " r=" << rep.meta.r << " seed=" << rep.meta.seed
      << " zero_at_largest=" << (rep.zero_at_largest ? 1 : 0) << "\n";
  out << "B,M,reference,normalized" << (rep.meta.timing ? ",elapsed_ms" : "") << "\n";
  for (const auto& row : rep.rows) {
    out << row.B << ',' << row.M << ',' << format_double(row.reference) << ','
        << format_double(row.normalized);
    if (rep.meta.timing) out << ',' << row.elapsed_ms;
    out << "\n";
  }
}

void write_json(const CountReport& rep, std::ostream& out) {
  out << "{\n  \"surface\": \"" << surfaces::name(rep.meta.surface) << "\",\n";
  out << "  \"xi\": [" << xi_string(rep.meta.xi) << "],\n";
  out << "  \"epsilon\": " << format_double(rep.meta.epsilon) << ",\n";
  out << "  \"r\": " << rep.meta.r << ",\n";
  out << "  \"seed\": " << rep.meta.seed << ",\n";
  out << "  \"zero_at_largest\": " << (rep.zero_at_largest ? "true" : "false") << ",\n";
  out << "  \"rows\": [\n";
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& row = rep.rows[i];
    out << "    {\"B\": " << row.B << ", \"M\": " << row.M << ", \"reference\": " << format_double(row.reference)
        << ", \"normalized\": " << format_double(row.normalized);
    if (rep.meta.timing) out << ", \"elapsed_ms\": " << row.elapsed_ms;
    out << "}" << (i + 1 < rep.rows.size() ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
}

void write_report(const CountReport& rep) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!rep.meta.output.empty()) {
    file.open(rep.meta.output);
    if (!file) throw error(errc::bad_config, "cannot open output file: " + rep.meta.output);
    out = &file;
  }
  if (rep.meta.format == ReportFormat::Csv) {
    write_csv(rep, *out);
  } else {
    write_json(rep, *out);
  }
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  size_t e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

[[noreturn]] void config_fail(const std::string& name, int line, const std::string& msg) {
  throw error(errc::bad_config, name + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

GridConfig parse_config(std::istream& in, const std::string& name) {
  GridConfig cfg;
  bool have_surface = false, have_xi = false, have_grid = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) config_fail(name, lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) config_fail(name, lineno, "field '" + key + "' has no value");
    try {
      if (key == "surface") {
        cfg.surface = surfaces::surface_from_name(value);
        have_surface = true;
      } else if (key == "xi") {
        std::stringstream ss(value);
        std::string tok;
        int i = 0;
        while (std::getline(ss, tok, ',')) {
          if (i >= 4) config_fail(name, lineno, "field 'xi' needs exactly 4 components");
          cfg.xi[i++] = std::stod(trim(tok));
        }
        if (i != 4) config_fail(name, lineno, "field 'xi' needs exactly 4 components");
        have_xi = true;
      } else if (key == "epsilon") {
        cfg.epsilon = std::stod(value);
      } else if (key == "r") {
        cfg.r = std::stoi(value);
      } else if (key == "B_grid") {
        std::stringstream ss(value);
        std::string tok;
        while (std::getline(ss, tok, ',')) cfg.B_grid.push_back(std::stoull(trim(tok)));
        have_grid = !cfg.B_grid.empty();
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else if (key == "output") {
        cfg.output = value;
      } else if (key == "format") {
        if (value == "csv") {
          cfg.format = ReportFormat::Csv;
        } else if (value == "json") {
          cfg.format = ReportFormat::Json;
        } else {
          config_fail(name, lineno, "field 'format' must be csv or json");
        }
      } else if (key == "timing") {
        if (value == "on") {
          cfg.timing = true;
        } else if (value == "off") {
          cfg.timing = false;
        } else {
          config_fail(name, lineno, "field 'timing' must be on or off");
        }
      } else {
        config_fail(name, lineno, "unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      config_fail(name, lineno, "field '" + key + "' has a malformed value '" + value + "'");
    } catch (const std::out_of_range&) {
      config_fail(name, lineno, "field '" + key + "' is out of range: '" + value + "'");
    }
  }
  if (!have_surface) throw error(errc::bad_config, name + ": missing field 'surface'");
  if (!have_xi) throw error(errc::bad_config, name + ": missing field 'xi'");
  if (!have_grid) throw error(errc::bad_config, name + ": missing field 'B_grid'");
  return cfg;
}

GridConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::bad_config, "cannot open config file: " + path);
  return parse_config(in, path);
}

namespace {

// Draw from the shared pool of small odd primes.
const std::vector<uint64_t>& prime_pool() {
  static const std::vector<uint64_t> pool = [] {
    auto p = arith::primes_in(3, 4000);
    return std::vector<uint64_t>(p.begin(), p.end());
  }();
  return pool;
}

uint64_t draw(std::mt19937_64& rng) {
  const auto& pool = prime_pool();
  return pool[rng() % pool.size()];
}

int draw_sign(std::mt19937_64& rng) { return rng() & 1 ? 1 : -1; }

bool distinct(std::initializer_list<uint64_t> ps) {
  std::vector<uint64_t> v(ps);
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

bool usable_prime(int64_t v) {
  return v >= 3 && v % 2 == 1 && arith::is_prime_u64(static_cast<uint64_t>(v));
}

}  // namespace

surfaces::PrimeAssignment sample_assignment(SurfaceId id, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    switch (id) {
      case SurfaceId::X1: {
        const uint64_t p2 = draw(rng), p3 = draw(rng), p4 = draw(rng);
        const int b2 = draw_sign(rng), b3 = draw_sign(rng), b4 = draw_sign(rng);
        const int64_t v = b2 * static_cast<int64_t>(p2) + b3 * static_cast<int64_t>(p3) +
                          b4 * static_cast<int64_t>(p4);
        if (v == 0 || !usable_prime(std::abs(v))) break;
        const uint64_t p1 = static_cast<uint64_t>(std::abs(v));
        if (!distinct({p1, p2, p3, p4})) break;
        return {id, {v > 0 ? 1 : -1, b2, b3, b4}, {p1, p2, p3, p4}};
      }
      case SurfaceId::X2: {
        const uint64_t p2 = draw(rng), p3 = draw(rng);
        const int b2 = draw_sign(rng), b3 = draw_sign(rng);
        const int64_t w = b2 * static_cast<int64_t>(p2) + b3 * static_cast<int64_t>(p3);
        if (w == 0 || !usable_prime(std::abs(w) / 2)) break;
        const uint64_t p4 = static_cast<uint64_t>(std::abs(w) / 2);
        const int b4 = w > 0 ? -1 : 1;
        const uint64_t p1 = draw(rng);
        const int b1 = draw_sign(rng);
        const int64_t u = b1 * static_cast<int64_t>(p1) + 2 * b4 * static_cast<int64_t>(p4);
        if (u == 0 || !usable_prime(std::abs(u))) break;
        const uint64_t p5 = static_cast<uint64_t>(std::abs(u));
        if (!distinct({p1, p2, p3, p4, p5})) break;
        return {id, {b1, b2, b3, b4, u > 0 ? 1 : -1}, {p1, p2, p3, p4, p5}};
      }
      case SurfaceId::X3:
      case SurfaceId::X4:
      case SurfaceId::X5:
      case SurfaceId::X8: {
        const uint64_t p1 = draw(rng), p2 = draw(rng);
        const int b1 = draw_sign(rng), b2 = draw_sign(rng);
        const int64_t v = b1 * static_cast<int64_t>(p1) + b2 * static_cast<int64_t>(p2);
        if (v == 0 || !usable_prime(std::abs(v) / 2)) break;
        const uint64_t p3 = static_cast<uint64_t>(std::abs(v) / 2);
        const uint64_t p4 = draw(rng);
        if (!distinct({p1, p2, p3, p4})) break;
        return {id, {b1, b2, v > 0 ? -1 : 1, draw_sign(rng)}, {p1, p2, p3, p4}};
      }
      case SurfaceId::X6: {
        const uint64_t p1 = draw(rng), p2 = draw(rng), p3 = draw(rng);
        const int b1 = draw_sign(rng), b2 = draw_sign(rng), b3 = draw_sign(rng);
        const int64_t v = b1 * b2 * static_cast<int64_t>(p1 * p2) + static_cast<int64_t>(p3 * p3);
        if (v == 0 || !usable_prime(std::abs(v) / 2)) break;
        const uint64_t p4 = static_cast<uint64_t>(std::abs(v) / 2);
        if (!distinct({p1, p2, p3, p4})) break;
        return {id, {b1, b2, b3, v > 0 ? -1 : 1}, {p1, p2, p3, p4}};
      }
      case SurfaceId::X7: {
        const uint64_t p2 = draw(rng), p3 = draw(rng), p4 = draw(rng);
        const int b2 = draw_sign(rng), b3 = draw_sign(rng), b4 = draw_sign(rng);
        const int64_t v = static_cast<int64_t>(p3 * p3) + b2 * b4 * static_cast<int64_t>(p2 * p4);
        if (v == 0 || !usable_prime(std::abs(v) / 2)) break;
        const uint64_t p1 = static_cast<uint64_t>(std::abs(v) / 2);
        if (!distinct({p1, p2, p3, p4})) break;
        return {id, {v > 0 ? -1 : 1, b2, b3, b4}, {p1, p2, p3, p4}};
      }
    }
  }
  throw error(errc::unsupported, "sample_assignment: no valid assignment found (pool exhausted?)");
}

std::vector<Table1Result> verify_table1(uint64_t seed, int samples) {
  std::vector<Table1Result> out;
  for (SurfaceId id : surfaces::all_ids()) {
    const auto& s = surfaces::spec(id);
    Table1Result res;
    res.surface = id;
    res.pass = true;
    std::mt19937_64 rng(seed * 1000003ULL + static_cast<uint64_t>(id));
    for (int i = 0; i < samples; ++i) {
      auto a = sample_assignment(id, rng);
      auto fail = [&](const std::string& what) {
        res.pass = false;
        if (res.first_failure.empty()) {
          std::string msg = what + " at sample " + std::to_string(i) + " primes=(";
          for (size_t j = 0; j < a.primes.size(); ++j) {
            msg += (j ? "," : "") + std::to_string(a.primes[j]);
          }
          msg += ")";
          res.first_failure = msg;
        }
      };
      auto pt = surfaces::parametrize(a);
      std::array<BigInt, 4> values;
      for (int c = 0; c < 4; ++c) values[c] = pt[c].value;
      if (eval_form(id, values) != 0) fail("eval_form != 0");
      if (arith::gcd4(values) != 1) fail("gcd != 1");
      auto prod = pt[0] * pt[1] * pt[2] * pt[3];
      if (arith::big_omega(prod) != static_cast<uint64_t>(s.r_bound)) fail("Omega != r bound");
      if (arith::omega_distinct_odd(prod) > static_cast<uint64_t>(s.rtilde_bound)) {
        fail("distinct odd primes above the cap");
      }
      res.samples = i + 1;
      if (!res.pass) break;
    }
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace torsor::harness
