#pragma once

// Committed per-surface fixtures: a valid prime assignment, the desk scale
// B* at which the generated point itself qualifies, and a doubling grid
// found empirically to keep the normalized count stable.

#include <array>
#include <cstdint>

#include "torsor/surfaces.hpp"

namespace fixtures {

struct SurfaceFixture {
  torsor::surfaces::SurfaceId id;
  int k;
  std::array<int, 5> betas;
  std::array<uint64_t, 5> primes;
  uint64_t B_star;
  uint64_t grid_B0;  // doubling grid {B0, 2*B0, 4*B0}
};

inline constexpr std::array<SurfaceFixture, 8> kFixtures = {{
    {torsor::surfaces::SurfaceId::X1, 4, {1, 1, 1, 1, 0}, {19, 3, 5, 11, 0}, 6859, 14047232},
    {torsor::surfaces::SurfaceId::X2, 5, {1, 1, 1, -1, 1}, {29, 3, 7, 5, 19}, 24389, 199794688},
    {torsor::surfaces::SurfaceId::X3, 4, {1, 1, -1, 1, 0}, {3, 7, 5, 11, 0}, 490, 128450560},
    {torsor::surfaces::SurfaceId::X4, 4, {1, 1, -1, 1, 0}, {3, 7, 5, 11, 0}, 1210, 317194240},
    {torsor::surfaces::SurfaceId::X5, 4, {1, 1, -1, 1, 0}, {3, 7, 5, 11, 0}, 1331, 348913664},
    {torsor::surfaces::SurfaceId::X6, 4, {1, -1, 1, -1, 0}, {3, 5, 7, 17, 0}, 170, 44564480},
    {torsor::surfaces::SurfaceId::X7, 4, {1, 1, 1, -1, 0}, {13, 5, 3, 7, 0}, 182, 47710208},
    {torsor::surfaces::SurfaceId::X8, 4, {1, 1, -1, 1, 0}, {3, 7, 5, 11, 0}, 17715610,
     608703724629524480ULL},
}};

inline torsor::surfaces::PrimeAssignment assignment(const SurfaceFixture& f) {
  torsor::surfaces::PrimeAssignment a;
  a.surface = f.id;
  a.betas.assign(f.betas.begin(), f.betas.begin() + f.k);
  a.primes.assign(f.primes.begin(), f.primes.begin() + f.k);
  return a;
}

// xi = x / B_star for the fixture's generated point.
inline std::array<double, 4> target_xi(const SurfaceFixture& f) {
  auto pt = torsor::surfaces::parametrize(assignment(f));
  std::array<double, 4> xi{};
  for (int i = 0; i < 4; ++i) xi[i] = pt[i].value.get_d() / static_cast<double>(f.B_star);
  return xi;
}

}  // namespace fixtures
