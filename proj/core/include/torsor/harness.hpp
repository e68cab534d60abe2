#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "torsor/surfaces.hpp"
#include "torsor/targets.hpp"

namespace torsor::harness {

// Worker-count default: TORSOR_WORKERS env override, else hardware threads.
int default_workers();

// Number of distinct primitive integral points x of the construction with
// pairwise-distinct odd primes, Omega(x0x1x2x3) <= r and |x/B - xi| < eps.
// delta is auto-shrunk from eps.
uint64_t count_M(surfaces::SurfaceId id, const std::array<double, 4>& xi, double epsilon, uint64_t B,
                 int r, int workers = 1);

enum class ReportFormat { Csv, Json };

struct GridConfig {
  surfaces::SurfaceId surface = surfaces::SurfaceId::X1;
  std::array<double, 4> xi{};
  double epsilon = 0.3;
  int r = 0;  // 0 means the surface's r bound
  std::vector<uint64_t> B_grid;
  uint64_t seed = 1;
  std::string output;  // empty means stdout
  ReportFormat format = ReportFormat::Csv;
  bool timing = true;  // elapsed_ms column; off gives byte-stable reports
};

// Flat key = value text, one experiment per file. Unknown keys, malformed
// values and missing fields are reported with line/field diagnostics.
GridConfig parse_config(std::istream& in, const std::string& name = "<config>");
GridConfig parse_config_file(const std::string& path);

struct CountRow {
  uint64_t B = 0;
  uint64_t M = 0;
  double reference = 0.0;   // reference growth curve for the surface
  double normalized = 0.0;  // M / reference
  int64_t elapsed_ms = 0;
};

struct CountReport {
  GridConfig meta;
  std::vector<CountRow> rows;
  bool zero_at_largest = false;
};

// Reference curve: B (log B)^-4 in general, exponent 5 for X2, and
// B^(3/7) (log B)^-4 for X8.
double reference_curve(surfaces::SurfaceId id, uint64_t B);

CountReport run_grid(const GridConfig& cfg, int workers = 1);

void write_csv(const CountReport& rep, std::ostream& out);
void write_json(const CountReport& rep, std::ostream& out);
void write_report(const CountReport& rep);  // honors meta.output/meta.format

// Seeded sampler of valid assignments (distinct odd primes, residuals zero).
surfaces::PrimeAssignment sample_assignment(surfaces::SurfaceId id, std::mt19937_64& rng);

struct Table1Result {
  surfaces::SurfaceId surface;
  int samples = 0;
  bool pass = false;
  std::string first_failure;
};

// For each surface: seeded valid assignments, checking eval_form == 0,
// gcd == 1, Omega == the construction's bound exactly, and the cap on
// distinct odd primes. Failures are data, not exceptions.
std::vector<Table1Result> verify_table1(uint64_t seed = 1, int samples = 500);

}  // namespace torsor::harness
