#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "torsor/arith.hpp"
#include "torsor/solvers.hpp"

namespace torsor::circle {

// A(q): the major-arc coefficient of the quadratic/bilinear equation.
// The root-of-unity sums reduce exactly (the h1 sum is a Ramanujan sum and
// the (a, h2) double sum a Gauss-sum identity), so the value is rational:
//   A(q) = mu(q)/phi(q)^2 for odd squarefree q,
//   A(2m) = mu(m)/phi(m)^2 for odd squarefree m, and 0 otherwise.
// The value does not depend on the beta signs.
mpq_class A_of_q(uint64_t q);

// Cross-check path: evaluates the triple character sum with complex
// arithmetic, no closed forms. Agrees with A_of_q to ~1e-9 and is
// independent of (beta1, beta2).
double A_of_q_direct(uint64_t q, int beta1, int beta2);

struct SeriesValue {
  uint64_t P;
  double product;      // 2 prod_{2<p<=P} (1 - 1/(p-1)^2)
  double partial_sum;  // sum_{q<=P} A(q)
  double diff() const { return product - partial_sum; }
};

// Both truncations of the singular series, for cross-validation.
SeriesValue singular_series(uint64_t P);

// Number of integer solutions of the F1 equation with m_j in the realized
// intervals (the archimedean count J(B) of the asymptotic).
uint64_t count_J(const solvers::ConstraintFamily& fam, const solvers::IntervalFamily& ivals);

struct MainTermReport {
  uint64_t B = 0;
  double R1 = 0.0;  // log-weighted prime-solution count
  uint64_t J = 0;
  double S = 0.0;  // singular series truncation
  double ratio = 0.0;
  bool ratio_defined = false;
};

// Desk-scale check of R1(B) ~ J(B) * S for the F1 equation.
MainTermReport main_term_check(uint64_t B, const std::array<double, 4>& gammas,
                             const std::array<int, 3>& betas, double delta, uint64_t P0 = 100000);

// s x t integer system A x = b over a box, s <= 2, t <= 5.
struct LinearSystem {
  int s = 1;
  int t = 3;
  std::array<std::array<int64_t, 5>, 2> A{};
  std::array<int64_t, 2> b{};
  std::array<std::array<double, 2>, 5> box{};  // [lo, hi] per coordinate

  static LinearSystem row(std::vector<int64_t> coeffs, int64_t rhs = 0);
  static LinearSystem two_rows(std::vector<int64_t> r0, std::vector<int64_t> r1,
                               int64_t rhs0 = 0, int64_t rhs1 = 0);
};

// Full rank over Q and no nonzero row-space element with <= 2 nonzero
// entries. Throws errc::bad_config on violation.
void validate(const LinearSystem& sys);

struct LocalDensity {
  double value = 0.0;
  bool approximate = false;  // true when the mod-p^2 fallback was used
};

// alpha_p = (p/(p-1))^t * N_p / p^(t-s) with N_p the count of all-unit
// solutions mod p, computed by enumeration over t-s free unit coordinates.
// Systems degenerate mod p fall back to a flagged mod-p^2 approximation.
// Brute-force regime: p <= 97.
LocalDensity local_density(const LinearSystem& sys, uint64_t p);

// alpha_inf: number of nonnegative integer points of the box on Ax = b.
uint64_t archimedean_factor(const LinearSystem& sys);

}  // namespace torsor::circle
