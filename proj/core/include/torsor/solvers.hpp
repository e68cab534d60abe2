#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "torsor/arith.hpp"

namespace torsor::solvers {

// The four prime-equation shapes driving the eight surface constructions:
//   F1:  2*b1*t1 + b2*t2^2 + b3*t3*t4 = 0      (t1 at exponent 2/3, rest 1/3)
//   F2:  three-term linear, coefficient 2 on a designated slot
//   F3:  b1*t1 + b2*t2 + b3*t3 + b4*t4 = 0
//   F4:  the 2x5 system  b1*t1 + 2*b4*t4 - b5*t5 = 0,
//                        b2*t2 + b3*t3 + 2*b4*t4 = 0
enum class FamilyKind { F1, F2, F3, F4 };

int family_arity(FamilyKind kind);
const char* family_name(FamilyKind kind);
FamilyKind family_from_name(std::string_view name);

struct ConstraintFamily {
  FamilyKind kind = FamilyKind::F2;
  std::vector<int> betas;  // +-1 per slot (3 for F1/F2, 4 for F3, 5 for F4)
  int two_slot = 0;        // F2 only: 0-based slot carrying the coefficient 2
  double alpha = 1.0 / 3.0;  // F2 only: interval exponent

  // Coefficient of slot j in the (first) linear relation; F1/F4 fix their own.
  int64_t coeff(int j) const;
};

struct IntervalFamily {
  std::vector<double> gammas;
  std::vector<double> exponents;  // per slot
  uint64_t B = 0;
  double delta = 0.1;
};

// Default exponents for a family at its natural scaling.
std::vector<double> default_exponents(const ConstraintFamily& fam);

// Realized closed interval for one slot. Integer bounds are snapped against
// floating roundoff before ceil/floor.
struct PrimeWindow {
  double lo = 0.0;
  double hi = -1.0;
  int64_t ilo = 0;
  int64_t ihi = -1;
  bool empty() const { return ilo > ihi; }
  bool contains(int64_t v) const { return v >= ilo && v <= ihi; }
};

PrimeWindow make_window(double gamma, double exponent, uint64_t B, double delta, bool sqrt_endpoints);

// Windows in family slot order. For F1, slots 2..4 get sqrt(1 +- delta)
// endpoints so the composed quadratic terms land exactly in slot 1's range.
std::vector<PrimeWindow> realize(const ConstraintFamily& fam, const IntervalFamily& ivals);

// Checks the gamma relation(s) of the family; throws errc::inconsistent_target
// when violated beyond tolerance.
void check_gamma_relation(const ConstraintFamily& fam, std::span<const double> gammas);

// Enumerators. Output is the full solution set over the windows, sorted
// lexicographically; only the equations are enforced here (distinctness and
// parity of use are the caller's business). `workers` > 1 partitions the
// outermost interval; the merged result is identical for any worker count.
std::vector<std::array<int64_t, 4>> solve_F1(const ConstraintFamily& fam, const IntervalFamily& ivals,
                                             int workers = 1);
std::vector<std::array<int64_t, 3>> solve_F2(const ConstraintFamily& fam, const IntervalFamily& ivals,
                                             int workers = 1);
std::vector<std::array<int64_t, 4>> solve_F3(const ConstraintFamily& fam, const IntervalFamily& ivals,
                                             int workers = 1);
std::vector<std::array<int64_t, 5>> solve_F4(const ConstraintFamily& fam, const IntervalFamily& ivals,
                                             int workers = 1);

enum class Weight { Log, Unit };

// Sum over solutions of prod log p_j (Log) or the cardinality (Unit).
// Lambda-weights on prime arguments equal log p, so Log realizes the von
// Mangoldt weighting on prime tuples; prime powers are excluded by construction.
template <size_t N>
double weighted_count(std::span<const std::array<int64_t, N>> solutions, Weight w);

extern template double weighted_count<3>(std::span<const std::array<int64_t, 3>>, Weight);
extern template double weighted_count<4>(std::span<const std::array<int64_t, 4>>, Weight);
extern template double weighted_count<5>(std::span<const std::array<int64_t, 5>>, Weight);

}  // namespace torsor::solvers
