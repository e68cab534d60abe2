#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "torsor/arith.hpp"
#include "torsor/solvers.hpp"

namespace torsor::surfaces {

enum class SurfaceId { X1, X2, X3, X4, X5, X6, X7, X8 };

inline constexpr int kSurfaceCount = 8;

std::string_view name(SurfaceId id);
SurfaceId surface_from_name(std::string_view name);
std::array<SurfaceId, kSurfaceCount> all_ids();

struct Monomial {
  int coeff;
  std::array<int, 4> exp;
};

// One coordinate of a torsor parametrization:
//   x_i = coeff * prod_{beta_par} beta_j * prod_j p_j^{prime_exp[j]}
struct CoordinateMap {
  int coeff;
  std::array<uint8_t, 5> beta_par;
  std::array<int, 5> prime_exp;
};

// One term of a constraint polynomial: coeff * prod betas * prod primes
// (repeated prime indices mean powers).
struct ConstraintTerm {
  int coeff;
  std::vector<int> betas;
  std::vector<int> primes;
};

// Sign of x_i determines one beta (possibly times previously resolved ones);
// betas listed nowhere are pinned later through a constraint.
struct BetaStep {
  int beta;
  int xi;
  std::vector<int> deps;
};

// Product of surface betas giving the sign on one family slot.
struct FamilySign {
  int sign;
  std::vector<int> betas;
};

struct SurfaceSpec {
  SurfaceId id;
  std::string_view singularity;
  std::string_view equation;
  std::vector<Monomial> form;
  int r_bound;
  int rtilde_bound;
  int k;  // number of prime slots (4, or 5 for X2)
  std::array<double, 5> exponents;
  std::array<CoordinateMap, 4> coords;
  std::vector<std::vector<ConstraintTerm>> constraints;

  // binding of the construction onto its solver family
  solvers::FamilyKind family;
  std::vector<int> family_slots;  // family slot -> surface prime index
  std::vector<FamilySign> family_signs;
  std::vector<int> free_slots;  // prime slots unconstrained by the family
  int two_slot;                 // F2 binding

  // target derivation data
  std::vector<BetaStep> beta_steps;
  std::vector<int> completion_betas;                       // resolved via a constraint
  std::vector<std::pair<int, std::vector<int>>> sign_checks;  // sgn(xi_i) == prod betas
};

const SurfaceSpec& spec(SurfaceId id);

struct PrimeAssignment {
  SurfaceId surface;
  std::vector<int> betas;        // k entries, each +-1
  std::vector<uint64_t> primes;  // k distinct odd primes
};

// Exact value of the defining cubic at x; 0 iff [x] lies on the surface.
BigInt eval_form(SurfaceId id, const std::array<BigInt, 4>& x);

// The constraint polynomial(s) evaluated at (beta, p); valid iff all zero.
std::vector<BigInt> constraint_residual(const PrimeAssignment& a);

// The integral point of the construction. Requires a valid assignment:
// residuals zero, primes odd and pairwise distinct.
std::array<arith::FactoredInt, 4> parametrize(const PrimeAssignment& a);

}  // namespace torsor::surfaces
