#include "torsor/surfaces.hpp"

#include <algorithm>

namespace torsor::surfaces {

using solvers::FamilyKind;

std::string_view name(SurfaceId id) {
  static constexpr std::string_view names[] = {"X1", "X2", "X3", "X4", "X5", "X6", "X7", "X8"};
  return names[static_cast<int>(id)];
}

SurfaceId surface_from_name(std::string_view n) {
  for (int i = 0; i < kSurfaceCount; ++i) {
    if (name(static_cast<SurfaceId>(i)) == n) return static_cast<SurfaceId>(i);
  }
  throw error(errc::bad_config, "unknown surface: " + std::string(n));
}

std::array<SurfaceId, kSurfaceCount> all_ids() {
  std::array<SurfaceId, kSurfaceCount> out{};
  for (int i = 0; i < kSurfaceCount; ++i) out[i] = static_cast<SurfaceId>(i);
  return out;
}

namespace {

constexpr double k13 = 1.0 / 3.0;
constexpr double k23 = 2.0 / 3.0;
constexpr double k17 = 1.0 / 7.0;

std::vector<SurfaceSpec> build_table() {
  std::vector<SurfaceSpec> t(kSurfaceCount);

  // Expanded x0*(x1+x2+x3)^2 shared by X1 and X2.
  const std::vector<Monomial> d4_head = {
      {1, {1, 2, 0, 0}}, {1, {1, 0, 2, 0}}, {1, {1, 0, 0, 2}},
      {2, {1, 1, 1, 0}}, {2, {1, 1, 0, 1}}, {2, {1, 0, 1, 1}},
  };

  {
    auto& s = t[0];
    s.id = SurfaceId::X1;
    s.singularity = "D4, first isomorphy class";
    s.equation = "x0(x1+x2+x3)^2 - x1x2x3 = 0";
    s.form = d4_head;
    s.form.push_back({-1, {0, 1, 1, 1}});
    s.r_bound = 12;
    s.rtilde_bound = 4;
    s.k = 4;
    s.exponents = {k13, k13, k13, k13, 0};
    s.coords = {CoordinateMap{1, {0, 1, 1, 1, 0}, {0, 1, 1, 1, 0}},
                CoordinateMap{1, {0, 1, 0, 0, 0}, {2, 1, 0, 0, 0}},
                CoordinateMap{1, {0, 0, 1, 0, 0}, {2, 0, 1, 0, 0}},
                CoordinateMap{1, {0, 0, 0, 1, 0}, {2, 0, 0, 1, 0}}};
    s.constraints = {{{-1, {0}, {0}}, {1, {1}, {1}}, {1, {2}, {2}}, {1, {3}, {3}}}};
    s.family = FamilyKind::F3;
    s.family_slots = {0, 1, 2, 3};
    s.family_signs = {{-1, {0}}, {1, {1}}, {1, {2}}, {1, {3}}};
    s.free_slots = {};
    s.two_slot = 0;
    s.beta_steps = {{1, 1, {}}, {2, 2, {}}, {3, 3, {}}};
    s.completion_betas = {0};
    s.sign_checks = {{0, {1, 2, 3}}};
  }
  {
    auto& s = t[1];
    s.id = SurfaceId::X2;
    s.singularity = "D4, second isomorphy class";
    s.equation = "x0(x1+x2+x3)^2 + x1x2(x1+x2) = 0";
    s.form = d4_head;
    s.form.push_back({1, {0, 2, 1, 0}});
    s.form.push_back({1, {0, 1, 2, 0}});
    s.r_bound = 13;
    s.rtilde_bound = 5;
    s.k = 5;
    s.exponents = {k13, k13, k13, k13, k13};
    s.coords = {CoordinateMap{2, {0, 1, 1, 1, 0}, {0, 1, 1, 1, 0}},
                CoordinateMap{1, {0, 1, 0, 0, 0}, {2, 1, 0, 0, 0}},
                CoordinateMap{1, {0, 0, 1, 0, 0}, {2, 0, 1, 0, 0}},
                CoordinateMap{1, {0, 0, 0, 0, 1}, {2, 0, 0, 0, 1}}};
    s.constraints = {{{1, {0}, {0}}, {2, {3}, {3}}, {-1, {4}, {4}}},
                     {{1, {1}, {1}}, {1, {2}, {2}}, {2, {3}, {3}}}};
    s.family = FamilyKind::F4;
    s.family_slots = {0, 1, 2, 3, 4};
    s.family_signs = {{1, {0}}, {1, {1}}, {1, {2}}, {1, {3}}, {1, {4}}};
    s.free_slots = {};
    s.two_slot = 0;
    s.beta_steps = {{1, 1, {}}, {2, 2, {}}, {3, 0, {1, 2}}, {4, 3, {}}};
    s.completion_betas = {0};
    s.sign_checks = {};
  }
  {
    auto& s = t[2];
    s.id = SurfaceId::X3;
    s.singularity = "A3+2A1";
    s.equation = "x3^2(x1+x2) + x0x1x2 = 0";
    s.form = {{1, {0, 1, 0, 2}}, {1, {0, 0, 1, 2}}, {1, {1, 1, 1, 0}}};
    s.r_bound = 14;
    s.rtilde_bound = 4;
    s.k = 4;
    s.exponents = {k13, k13, k13, k13, 0};
    s.coords = {CoordinateMap{1, {1, 0, 0, 0, 0}, {1, 0, 0, 2, 0}},
                CoordinateMap{2, {0, 0, 1, 0, 0}, {0, 2, 1, 0, 0}},
                CoordinateMap{2, {1, 1, 1, 0, 0}, {1, 1, 1, 0, 0}},
                CoordinateMap{1, {1, 1, 0, 1, 0}, {1, 1, 0, 1, 0}}};
    s.constraints = {{{1, {0}, {0}}, {1, {1}, {1}}, {2, {2}, {2}}}};
    s.family = FamilyKind::F2;
    s.family_slots = {0, 1, 2};
    s.family_signs = {{1, {0}}, {1, {1}}, {1, {2}}};
    s.free_slots = {3};
    s.two_slot = 2;
    s.beta_steps = {{0, 0, {}}, {2, 1, {}}, {1, 2, {0, 2}}, {3, 3, {0, 1}}};
    s.completion_betas = {};
    s.sign_checks = {};
  }
  {
    auto& s = t[3];
    s.id = SurfaceId::X4;
    s.singularity = "2A2+A1";
    s.equation = "x3^2(x1+x3) + x0x1x2 = 0";
    s.form = {{1, {0, 1, 0, 2}}, {1, {0, 0, 0, 3}}, {1, {1, 1, 1, 0}}};
    s.r_bound = 13;
    s.rtilde_bound = 4;
    s.k = 4;
    s.exponents = {k13, k13, k13, k13, 0};
    s.coords = {CoordinateMap{1, {1, 0, 0, 0, 0}, {1, 2, 0, 0, 0}},
                CoordinateMap{1, {0, 0, 0, 1, 0}, {2, 0, 0, 1, 0}},
                CoordinateMap{2, {0, 0, 1, 0, 0}, {0, 0, 1, 2, 0}},
                CoordinateMap{1, {1, 1, 0, 1, 0}, {1, 1, 0, 1, 0}}};
    s.constraints = {{{1, {0}, {0}}, {1, {1}, {1}}, {2, {2}, {2}}}};
    s.family = FamilyKind::F2;
    s.family_slots = {0, 1, 2};
    s.family_signs = {{1, {0}}, {1, {1}}, {1, {2}}};
    s.free_slots = {3};
    s.two_slot = 2;
    s.beta_steps = {{0, 0, {}}, {3, 1, {}}, {2, 2, {}}, {1, 3, {0, 3}}};
    s.completion_betas = {};
    s.sign_checks = {};
  }
  {
    auto& s = t[4];
    s.id = SurfaceId::X5;
    s.singularity = "A4+A1";
    s.equation = "x2x3^2 + x1^2x3 + x0x1x2 = 0";
    s.form = {{1, {0, 0, 1, 2}}, {1, {0, 2, 0, 1}}, {1, {1, 1, 1, 0}}};
    s.r_bound = 13;
    s.rtilde_bound = 4;
    s.k = 4;
    s.exponents = {k13, k13, k13, k13, 0};
    s.coords = {CoordinateMap{2, {1, 1, 1, 0, 0}, {1, 1, 1, 0, 0}},
                CoordinateMap{1, {1, 0, 0, 0, 0}, {1, 0, 0, 2, 0}},
                CoordinateMap{1, {0, 0, 0, 1, 0}, {0, 0, 0, 3, 0}},
                CoordinateMap{1, {1, 1, 0, 1, 0}, {1, 1, 0, 1, 0}}};
    s.constraints = {{{1, {0}, {0}}, {1, {1}, {1}}, {2, {2}, {2}}}};
    s.family = FamilyKind::F2;
    s.family_slots = {0, 1, 2};
    s.family_signs = {{1, {0}}, {1, {1}}, {1, {2}}};
    s.free_slots = {3};
    s.two_slot = 2;
    s.beta_steps = {{0, 1, {}}, {3, 2, {}}, {1, 3, {0, 3}}, {2, 0, {0, 1}}};
    s.completion_betas = {};
    s.sign_checks = {};
  }
  {
    auto& s = t[5];
    s.id = SurfaceId::X6;
    s.singularity = "D5";
    s.equation = "x3x0^2 + x0x2^2 + x1^2x2 = 0";
    s.form = {{1, {2, 0, 0, 1}}, {1, {1, 0, 2, 0}}, {1, {0, 2, 1, 0}}};
    s.r_bound = 12;
    s.rtilde_bound = 4;
    s.k = 4;
    s.exponents = {k13, k13, k13, k23, 0};
    s.coords = {CoordinateMap{1, {1, 0, 0, 0, 0}, {3, 0, 0, 0, 0}},
                CoordinateMap{1, {0, 0, 1, 0, 0}, {2, 0, 1, 0, 0}},
                CoordinateMap{1, {0, 1, 0, 0, 0}, {2, 1, 0, 0, 0}},
                CoordinateMap{2, {0, 1, 0, 1, 0}, {0, 1, 0, 1, 0}}};
    s.constraints = {{{2, {3}, {3}}, {1, {0, 1}, {0, 1}}, {1, {}, {2, 2}}}};
    s.family = FamilyKind::F1;
    s.family_slots = {3, 2, 0, 1};
    s.family_signs = {{1, {3}}, {1, {}}, {1, {0, 1}}};
    s.free_slots = {};
    s.two_slot = 0;
    s.beta_steps = {{0, 0, {}}, {2, 1, {}}, {1, 2, {}}, {3, 3, {1}}};
    s.completion_betas = {};
    s.sign_checks = {};
  }
  {
    auto& s = t[6];
    s.id = SurfaceId::X7;
    s.singularity = "A5+A1";
    s.equation = "x1^3 + x2x3^2 + x0x1x2 = 0";
    s.form = {{1, {0, 3, 0, 0}}, {1, {0, 0, 1, 2}}, {1, {1, 1, 1, 0}}};
    s.r_bound = 12;
    s.rtilde_bound = 4;
    s.k = 4;
    s.exponents = {k23, k13, k13, k13, 0};
    s.coords = {CoordinateMap{2, {1, 0, 0, 1, 0}, {1, 0, 0, 1, 0}},
                CoordinateMap{2, {1, 1, 0, 0, 0}, {1, 1, 0, 0, 0}},
                CoordinateMap{1, {0, 1, 0, 0, 0}, {0, 3, 0, 0, 0}},
                CoordinateMap{2, {1, 0, 1, 0, 0}, {1, 0, 1, 0, 0}}};
    s.constraints = {{{2, {0}, {0}}, {1, {}, {2, 2}}, {1, {1, 3}, {1, 3}}}};
    s.family = FamilyKind::F1;
    s.family_slots = {0, 2, 1, 3};
    s.family_signs = {{1, {0}}, {1, {}}, {1, {1, 3}}};
    s.free_slots = {};
    s.two_slot = 0;
    s.beta_steps = {{1, 2, {}}, {0, 1, {1}}, {3, 0, {0}}, {2, 3, {0}}};
    s.completion_betas = {};
    s.sign_checks = {};
  }
  {
    auto& s = t[7];
    s.id = SurfaceId::X8;
    s.singularity = "E6";
    s.equation = "x1x2^2 + x2x0^2 + x3^3 = 0";
    s.form = {{1, {0, 1, 2, 0}}, {1, {2, 0, 1, 0}}, {1, {0, 0, 0, 3}}};
    s.r_bound = 29;
    s.rtilde_bound = 4;
    s.k = 4;
    s.exponents = {k17, k17, k17, k17, 0};
    s.coords = {CoordinateMap{1, {0, 0, 0, 1, 0}, {2, 2, 0, 3, 0}},
                CoordinateMap{2, {0, 0, 1, 0, 0}, {0, 0, 1, 6, 0}},
                CoordinateMap{1, {1, 0, 0, 0, 0}, {3, 4, 0, 0, 0}},
                CoordinateMap{1, {0, 1, 0, 0, 0}, {2, 3, 0, 2, 0}}};
    s.constraints = {{{1, {0}, {0}}, {1, {1}, {1}}, {2, {2}, {2}}}};
    s.family = FamilyKind::F2;
    s.family_slots = {0, 1, 2};
    s.family_signs = {{1, {0}}, {1, {1}}, {1, {2}}};
    s.free_slots = {3};
    s.two_slot = 2;
    s.beta_steps = {{3, 0, {}}, {2, 1, {}}, {0, 2, {}}, {1, 3, {}}};
    s.completion_betas = {};
    s.sign_checks = {};
  }
  return t;
}

const std::vector<SurfaceSpec>& table() {
  static const std::vector<SurfaceSpec> t = build_table();
  return t;
}

}  // namespace

const SurfaceSpec& spec(SurfaceId id) { return table()[static_cast<int>(id)]; }

BigInt eval_form(SurfaceId id, const std::array<BigInt, 4>& x) {
  const auto& s = spec(id);
  BigInt total = 0;
  BigInt term, pw;
  for (const auto& m : s.form) {
    term = m.coeff;
    for (int i = 0; i < 4; ++i) {
      if (m.exp[i] == 0) continue;
      mpz_pow_ui(pw.get_mpz_t(), x[i].get_mpz_t(), static_cast<unsigned long>(m.exp[i]));
      term *= pw;
    }
    total += term;
  }
  return total;
}

static void check_shape(const PrimeAssignment& a, const SurfaceSpec& s) {
  if (a.betas.size() != static_cast<size_t>(s.k) || a.primes.size() != static_cast<size_t>(s.k)) {
    throw error(errc::invalid_assignment, "assignment arity mismatch for " + std::string(name(s.id)));
  }
  for (int b : a.betas) {
    if (b != 1 && b != -1) throw error(errc::invalid_assignment, "betas must be +-1");
  }
}

std::vector<BigInt> constraint_residual(const PrimeAssignment& a) {
  const auto& s = spec(a.surface);
  check_shape(a, s);
  std::vector<BigInt> out;
  out.reserve(s.constraints.size());
  for (const auto& constraint : s.constraints) {
    BigInt r = 0;
    for (const auto& term : constraint) {
      BigInt v = term.coeff;
      for (int bi : term.betas) v *= a.betas[bi];
      for (int pi : term.primes) v *= BigInt(a.primes[pi]);
      r += v;
    }
    out.push_back(r);
  }
  return out;
}

std::array<arith::FactoredInt, 4> parametrize(const PrimeAssignment& a) {
  const auto& s = spec(a.surface);
  check_shape(a, s);
  for (size_t i = 0; i < a.primes.size(); ++i) {
    if (a.primes[i] < 3 || a.primes[i] % 2 == 0 || !arith::is_prime_u64(a.primes[i])) {
      throw error(errc::invalid_assignment,
                  "slot " + std::to_string(i + 1) + ": " + std::to_string(a.primes[i]) + " is not an odd prime");
    }
    for (size_t j = i + 1; j < a.primes.size(); ++j) {
      if (a.primes[i] == a.primes[j]) {
        throw error(errc::duplicate_prime, "repeated prime " + std::to_string(a.primes[i]));
      }
    }
  }
  for (const auto& r : constraint_residual(a)) {
    if (r != 0) {
      throw error(errc::invalid_assignment,
                  std::string(name(a.surface)) + ": constraint residual " + r.get_str() + " != 0");
    }
  }

  std::array<arith::FactoredInt, 4> out;
  for (int i = 0; i < 4; ++i) {
    const auto& cm = s.coords[i];
    int sign = 1;
    for (int j = 0; j < s.k; ++j) {
      if (cm.beta_par[j] & 1) sign *= a.betas[j];
    }
    auto f = arith::FactoredInt::unit(sign);
    f.mul_small(cm.coeff);
    for (int j = 0; j < s.k; ++j) {
      if (cm.prime_exp[j] > 0) f.mul_prime(a.primes[j], static_cast<uint32_t>(cm.prime_exp[j]));
    }
    out[i] = std::move(f);
  }
  return out;
}

}  // namespace torsor::surfaces
