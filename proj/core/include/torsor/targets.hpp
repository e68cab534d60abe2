#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "torsor/solvers.hpp"
#include "torsor/surfaces.hpp"

namespace torsor::targets {

// The (gamma, beta) data a target point induces, in surface slot order.
struct TargetDerivation {
  surfaces::SurfaceId surface;
  std::vector<double> gammas;
  std::vector<int> betas;
  std::vector<double> exponents;
  solvers::FamilyKind family;
};

// |C(xi)| <= 1e-9 * max|xi_i|^3, else errc::bad_xi.
void validate_on_surface(surfaces::SurfaceId id, const std::array<double, 4>& xi);

// The explicit X2 recipe: gammas from the displayed radical formulas, betas
// from the displayed sign functions.
TargetDerivation derive_X2(const std::array<double, 4>& xi);

// Any surface: betas from the coordinate sign pattern, gammas from the
// log-linear system of the coordinate magnitudes (plus, for X2, the kernel
// direction pinned through the linear constraint), completion betas through
// their constraint. Throws errc::not_in_u / errc::bad_xi when the data does
// not resolve.
TargetDerivation derive_generic(surfaces::SurfaceId id, const std::array<double, 4>& xi);

// Intervals for every prime slot, surface order.
solvers::IntervalFamily make_intervals(const TargetDerivation& d, uint64_t B, double delta);

// Realized windows for make_intervals output (sqrt endpoints on the slots the
// family binds quadratically).
std::vector<solvers::PrimeWindow> realize_windows(const TargetDerivation& d, uint64_t B, double delta);

// Largest delta <= 0.49 whose image box lies inside the epsilon-box around
// xi, found by bisection.
double auto_delta(const TargetDerivation& d, const std::array<double, 4>& xi, double epsilon);

}  // namespace torsor::targets
