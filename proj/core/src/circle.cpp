#include "torsor/circle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace torsor::circle {

namespace {

bool squarefree_parts(uint64_t q, uint64_t& odd_part, bool& even) {
  even = q % 2 == 0;
  odd_part = even ? q / 2 : q;
  if (even && odd_part % 2 == 0) return false;  // 4 | q
  return arith::mobius(odd_part) != 0;
}

}  // namespace

mpq_class A_of_q(uint64_t q) {
  if (q == 0) throw error(errc::undefined_input, "A_of_q: q must be positive");
  if (q == 1) return 1;
  uint64_t m;
  bool even;
  if (!squarefree_parts(q, m, even)) return 0;
  if (m == 1) return 1;  // q == 2
  const int mu = arith::mobius(m);
  const BigInt ph = static_cast<unsigned long>(arith::euler_phi(m));
  mpq_class r(BigInt(mu), ph * ph);
  r.canonicalize();
  return r;
}

double A_of_q_direct(uint64_t q, int beta1, int beta2) {
  if (q == 0) throw error(errc::undefined_input, "A_of_q_direct: q must be positive");
  if (beta1 != 1 && beta1 != -1) throw error(errc::bad_config, "beta1 must be +-1");
  if (beta2 != 1 && beta2 != -1) throw error(errc::bad_config, "beta2 must be +-1");
  if (q == 1) return 1.0;
  const int mu = arith::mobius(q);
  if (mu == 0) return 0.0;
  const double phi = static_cast<double>(arith::euler_phi(q));

  std::vector<uint64_t> units;
  for (uint64_t a = 1; a <= q; ++a) {
    if (std::gcd(a, q) == 1) units.push_back(a);
  }
  const double tau = 2.0 * M_PI / static_cast<double>(q);
  std::complex<double> total = 0.0;
  for (uint64_t a : units) {
    std::complex<double> s1 = 0.0, s2 = 0.0;
    for (uint64_t h : units) {
      const uint64_t e1 = (2 * a % q) * h % q;
      s1 += std::polar(1.0, beta1 * tau * static_cast<double>(e1));
      const uint64_t e2 = (a * (h * h % q)) % q;
      s2 += std::polar(1.0, beta2 * tau * static_cast<double>(e2));
    }
    total += s1 * s2;
  }
  return mu * total.real() / (phi * phi * phi);
}

SeriesValue singular_series(uint64_t P) {
  if (P < 2) throw error(errc::undefined_input, "singular_series: P must be >= 2");
  SeriesValue out;
  out.P = P;

  double product = 2.0;
  if (P >= 3) {
    for (uint64_t p : arith::primes_in(3, P)) {
      const double d = static_cast<double>(p - 1);
      product *= 1.0 - 1.0 / (d * d);
    }
  }
  out.product = product;

  const uint32_t n = static_cast<uint32_t>(P);
  auto mu = arith::mobius_table(n);
  auto phi = arith::phi_table(n);
  double sum = 0.0;
  for (uint64_t q = 1; q <= P; ++q) {
    uint64_t m;
    bool even;
    if (!squarefree_parts(q, m, even)) continue;
    if (mu[m] == 0) continue;
    const double d = static_cast<double>(phi[m]);
    sum += mu[m] / (d * d);
  }
  out.partial_sum = sum;
  return out;
}

uint64_t count_J(const solvers::ConstraintFamily& fam, const solvers::IntervalFamily& ivals) {
  if (fam.kind != solvers::FamilyKind::F1) throw error(errc::bad_config, "count_J: F1-shape intervals required");
  auto win = solvers::realize(fam, ivals);
  const int64_t b1 = fam.betas[0], b2 = fam.betas[1], b3 = fam.betas[2];
  uint64_t count = 0;
  for (int64_t m2 = win[1].ilo; m2 <= win[1].ihi; ++m2) {
    const int64_t sq = b2 * m2 * m2;
    for (int64_t m3 = win[2].ilo; m3 <= win[2].ihi; ++m3) {
      for (int64_t m4 = win[3].ilo; m4 <= win[3].ihi; ++m4) {
        const int64_t rhs = -(sq + b3 * m3 * m4);
        const int64_t num = b1 > 0 ? rhs : -rhs;
        if (num % 2 != 0) continue;
        if (win[0].contains(num / 2)) ++count;
      }
    }
  }
  return count;
}

MainTermReport main_term_check(uint64_t B, const std::array<double, 4>& gammas,
                             const std::array<int, 3>& betas, double delta, uint64_t P0) {
  solvers::ConstraintFamily fam;
  fam.kind = solvers::FamilyKind::F1;
  fam.betas.assign(betas.begin(), betas.end());
  solvers::IntervalFamily ivals;
  ivals.gammas.assign(gammas.begin(), gammas.end());
  ivals.exponents = solvers::default_exponents(fam);
  ivals.B = B;
  ivals.delta = delta;

  MainTermReport rep;
  rep.B = B;
  auto sols = solvers::solve_F1(fam, ivals);
  rep.R1 = solvers::weighted_count<4>(sols, solvers::Weight::Log);
  rep.J = count_J(fam, ivals);
  rep.S = singular_series(P0).product;
  if (rep.J > 0) {
    rep.ratio = rep.R1 / (static_cast<double>(rep.J) * rep.S);
    rep.ratio_defined = true;
  }
  return rep;
}

LinearSystem LinearSystem::row(std::vector<int64_t> coeffs, int64_t rhs) {
  if (coeffs.size() > 5 || coeffs.empty()) throw error(errc::bad_config, "LinearSystem: t must be 1..5");
  LinearSystem sys;
  sys.s = 1;
  sys.t = static_cast<int>(coeffs.size());
  for (int j = 0; j < sys.t; ++j) sys.A[0][j] = coeffs[j];
  sys.b[0] = rhs;
  for (int j = 0; j < sys.t; ++j) sys.box[j] = {1.0, 1.0};
  return sys;
}

LinearSystem LinearSystem::two_rows(std::vector<int64_t> r0, std::vector<int64_t> r1, int64_t rhs0,
                                    int64_t rhs1) {
  if (r0.size() != r1.size()) throw error(errc::bad_config, "LinearSystem: ragged rows");
  LinearSystem sys = row(std::move(r0), rhs0);
  sys.s = 2;
  for (int j = 0; j < sys.t; ++j) sys.A[1][j] = r1[j];
  sys.b[1] = rhs1;
  return sys;
}

void validate(const LinearSystem& sys) {
  if (sys.s < 1 || sys.s > 2 || sys.t < sys.s || sys.t > 5) {
    throw error(errc::bad_config, "LinearSystem: need 1 <= s <= 2, s <= t <= 5");
  }
  if (sys.s == 1) {
    int nonzero = 0;
    for (int j = 0; j < sys.t; ++j) nonzero += sys.A[0][j] != 0;
    if (nonzero == 0) throw error(errc::bad_config, "LinearSystem: zero row");
    if (nonzero <= 2) throw error(errc::bad_config, "LinearSystem: row has <= 2 nonzero entries");
    return;
  }
  // s == 2: full rank iff some 2x2 minor is nonzero.
  bool full_rank = false;
  for (int i = 0; i < sys.t && !full_rank; ++i) {
    for (int j = i + 1; j < sys.t && !full_rank; ++j) {
      if (sys.A[0][i] * sys.A[1][j] - sys.A[0][j] * sys.A[1][i] != 0) full_rank = true;
    }
  }
  if (!full_rank) throw error(errc::bad_config, "LinearSystem: rank < s over Q");
  // A nonzero combination supported on columns {i, j} exists iff the 2x(t-2)
  // complement has rank <= 1.
  for (int i = 0; i < sys.t; ++i) {
    for (int j = i + 1; j < sys.t; ++j) {
      bool rank2 = false;
      for (int c = 0; c < sys.t && !rank2; ++c) {
        if (c == i || c == j) continue;
        for (int d = c + 1; d < sys.t && !rank2; ++d) {
          if (d == i || d == j) continue;
          if (sys.A[0][c] * sys.A[1][d] - sys.A[0][d] * sys.A[1][c] != 0) rank2 = true;
        }
      }
      if (!rank2) {
        throw error(errc::bad_config, "LinearSystem: row space contains an element with <= 2 nonzero entries");
      }
    }
  }
}

namespace {

int64_t mod_pos(int64_t v, int64_t m) {
  int64_t r = v % m;
  return r < 0 ? r + m : r;
}

// Modular inverse for prime modulus.
int64_t inv_mod(int64_t a, int64_t p) {
  int64_t r = 1;
  int64_t e = p - 2;
  a = mod_pos(a, p);
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

// Count all-unit solutions of Ax = b mod p by enumerating units on the free
// columns and solving the pivot columns.
uint64_t count_unit_solutions_mod_p(const LinearSystem& sys, int64_t p, const std::vector<int>& pivot,
                                    const std::vector<int>& free_cols) {
  const int s = sys.s;
  // Inverse of the pivot minor mod p.
  int64_t inv[2][2] = {{0, 0}, {0, 0}};
  if (s == 1) {
    inv[0][0] = inv_mod(sys.A[0][pivot[0]], p);
  } else {
    const int64_t a = mod_pos(sys.A[0][pivot[0]], p), b2 = mod_pos(sys.A[0][pivot[1]], p);
    const int64_t c = mod_pos(sys.A[1][pivot[0]], p), d = mod_pos(sys.A[1][pivot[1]], p);
    const int64_t det = mod_pos(a * d - b2 * c, p);
    const int64_t idet = inv_mod(det, p);
    inv[0][0] = d * idet % p;
    inv[0][1] = mod_pos(-b2, p) * idet % p;
    inv[1][0] = mod_pos(-c, p) * idet % p;
    inv[1][1] = a * idet % p;
  }

  const int nfree = static_cast<int>(free_cols.size());
  uint64_t count = 0;
  std::vector<int64_t> fv(nfree, 1);
  while (true) {
    int64_t rhs[2];
    for (int i = 0; i < s; ++i) {
      int64_t acc = mod_pos(sys.b[i], p);
      for (int f = 0; f < nfree; ++f) acc = mod_pos(acc - sys.A[i][free_cols[f]] % p * fv[f], p);
      rhs[i] = acc;
    }
    bool all_units = true;
    for (int i = 0; i < s && all_units; ++i) {
      int64_t v = 0;
      for (int j = 0; j < s; ++j) v = (v + inv[i][j] * rhs[j]) % p;
      all_units = v != 0;
    }
    if (all_units) ++count;
    int f = 0;
    while (f < nfree) {
      if (++fv[f] <= p - 1) break;
      fv[f] = 1;
      ++f;
    }
    if (f == nfree) break;
  }
  return count;
}

}  // namespace

LocalDensity local_density(const LinearSystem& sys, uint64_t p_in) {
  validate(sys);
  if (!arith::is_prime_u64(p_in)) throw error(errc::undefined_input, "local_density: p must be prime");
  if (p_in > 97) throw error(errc::unsupported, "local_density: brute-force regime is p <= 97");
  const int64_t p = static_cast<int64_t>(p_in);
  const int s = sys.s, t = sys.t;

  // Pick pivot columns with an invertible minor mod p.
  std::vector<int> pivot;
  if (s == 1) {
    for (int j = 0; j < t; ++j) {
      if (mod_pos(sys.A[0][j], p) != 0) {
        pivot = {j};
        break;
      }
    }
  } else {
    for (int i = 0; i < t && pivot.empty(); ++i) {
      for (int j = i + 1; j < t && pivot.empty(); ++j) {
        const int64_t det = sys.A[0][i] * sys.A[1][j] - sys.A[0][j] * sys.A[1][i];
        if (mod_pos(det, p) != 0) pivot = {i, j};
      }
    }
  }

  const double unit_ratio = std::pow(static_cast<double>(p) / static_cast<double>(p - 1), t);

  if (static_cast<int>(pivot.size()) == s) {
    std::vector<int> free_cols;
    for (int j = 0; j < t; ++j) {
      if (std::find(pivot.begin(), pivot.end(), j) == pivot.end()) free_cols.push_back(j);
    }
    const uint64_t N = count_unit_solutions_mod_p(sys, p, pivot, free_cols);
    LocalDensity out;
    out.value = unit_ratio * static_cast<double>(N) / std::pow(static_cast<double>(p), t - s);
    out.approximate = false;
    return out;
  }

  // Degenerate mod p: two-level approximation at modulus p^2, flagged.
  const int64_t p2 = p * p;
  double cost = 1.0;
  for (int j = 0; j < t; ++j) cost *= static_cast<double>(p2);
  if (cost > 5e7) {
    throw error(errc::unsupported, "local_density: degenerate mod p and p^2 enumeration too large");
  }
  uint64_t total = 0, units = 0;
  std::vector<int64_t> x(t, 0);
  while (true) {
    int64_t r0 = mod_pos(-sys.b[0], p2), r1 = s > 1 ? mod_pos(-sys.b[1], p2) : 0;
    for (int j = 0; j < t; ++j) {
      r0 = mod_pos(r0 + sys.A[0][j] % p2 * x[j], p2);
      if (s > 1) r1 = mod_pos(r1 + sys.A[1][j] % p2 * x[j], p2);
    }
    if (r0 == 0 && r1 == 0) {
      ++total;
      bool all_units = true;
      for (int j = 0; j < t; ++j) {
        if (x[j] % p == 0) {
          all_units = false;
          break;
        }
      }
      if (all_units) ++units;
    }
    int j = 0;
    while (j < t) {
      if (++x[j] < p2) break;
      x[j] = 0;
      ++j;
    }
    if (j == t) break;
  }
  LocalDensity out;
  out.approximate = true;
  out.value = total == 0 ? 0.0 : unit_ratio * static_cast<double>(units) / static_cast<double>(total);
  return out;
}

uint64_t archimedean_factor(const LinearSystem& sys) {
  validate(sys);
  const int s = sys.s, t = sys.t;
  for (int j = 0; j < t; ++j) {
    if (!std::isfinite(sys.box[j][0]) || !std::isfinite(sys.box[j][1])) {
      throw error(errc::bad_config, "archimedean_factor: box must be bounded");
    }
  }

  // Bound columns with nonzero rational minor.
  std::vector<int> pivot;
  if (s == 1) {
    for (int j = 0; j < t; ++j) {
      if (sys.A[0][j] != 0) {
        pivot = {j};
        break;
      }
    }
  } else {
    for (int i = 0; i < t && pivot.empty(); ++i) {
      for (int j = i + 1; j < t && pivot.empty(); ++j) {
        if (sys.A[0][i] * sys.A[1][j] - sys.A[0][j] * sys.A[1][i] != 0) pivot = {i, j};
      }
    }
  }

  std::vector<int> free_cols;
  for (int j = 0; j < t; ++j) {
    if (std::find(pivot.begin(), pivot.end(), j) == pivot.end()) free_cols.push_back(j);
  }

  std::vector<int64_t> lo(t), hi(t);
  double cost = 1.0;
  for (int j = 0; j < t; ++j) {
    lo[j] = static_cast<int64_t>(std::ceil(std::max(sys.box[j][0], 0.0) - 1e-9));
    hi[j] = static_cast<int64_t>(std::floor(sys.box[j][1] + 1e-9));
  }
  for (int f : free_cols) cost *= std::max<double>(0.0, static_cast<double>(hi[f] - lo[f] + 1));
  if (cost > 1e8) throw error(errc::unsupported, "archimedean_factor: box too large to enumerate");

  const int nfree = static_cast<int>(free_cols.size());
  std::vector<int64_t> fv(nfree);
  for (int f = 0; f < nfree; ++f) {
    fv[f] = lo[free_cols[f]];
    if (fv[f] > hi[free_cols[f]]) return 0;
  }

  uint64_t count = 0;
  while (true) {
    // Solve the pivot coordinates exactly (Cramer).
    __int128 rhs[2] = {sys.b[0], sys.b[1]};
    for (int i = 0; i < s; ++i) {
      for (int f = 0; f < nfree; ++f) rhs[i] -= static_cast<__int128>(sys.A[i][free_cols[f]]) * fv[f];
    }
    bool ok = true;
    int64_t xp[2] = {0, 0};
    if (s == 1) {
      const int64_t a = sys.A[0][pivot[0]];
      if (rhs[0] % a != 0) ok = false;
      if (ok) xp[0] = static_cast<int64_t>(rhs[0] / a);
    } else {
      const __int128 det = static_cast<__int128>(sys.A[0][pivot[0]]) * sys.A[1][pivot[1]] -
                           static_cast<__int128>(sys.A[0][pivot[1]]) * sys.A[1][pivot[0]];
      const __int128 n0 = rhs[0] * sys.A[1][pivot[1]] - rhs[1] * static_cast<__int128>(sys.A[0][pivot[1]]);
      const __int128 n1 = static_cast<__int128>(sys.A[0][pivot[0]]) * rhs[1] -
                          static_cast<__int128>(sys.A[1][pivot[0]]) * rhs[0];
      if (n0 % det != 0 || n1 % det != 0) ok = false;
      if (ok) {
        xp[0] = static_cast<int64_t>(n0 / det);
        xp[1] = static_cast<int64_t>(n1 / det);
      }
    }
    if (ok) {
      for (int i = 0; i < s; ++i) {
        const int c = pivot[i];
        if (xp[i] < lo[c] || xp[i] > hi[c]) {
          ok = false;
          break;
        }
      }
      if (ok) ++count;
    }
    int f = 0;
    while (f < nfree) {
      if (++fv[f] <= hi[free_cols[f]]) break;
      fv[f] = lo[free_cols[f]];
      ++f;
    }
    if (f == nfree || nfree == 0) break;
  }
  return count;
}

}  // namespace torsor::circle
