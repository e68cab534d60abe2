#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "torsor/harness.hpp"
#include "torsor/targets.hpp"

using namespace torsor;
using surfaces::SurfaceId;

namespace {

// A random target on X2 away from the degenerate sections.
std::array<double, 4> random_x2_point(std::mt19937_64& rng) {
  auto real = [&] { return (static_cast<double>(rng() % 2000000) / 1000000.0 - 1.0); };
  while (true) {
    const double x1 = real(), x2 = real(), x3 = real();
    const double s = x1 + x2 + x3;
    if (std::abs(x1) < 0.05 || std::abs(x2) < 0.05 || std::abs(x3) < 0.05 || std::abs(s) < 0.05) continue;
    if (std::abs(x1 + x2) < 0.05) continue;
    const double x0 = -x1 * x2 * (x1 + x2) / (s * s);
    if (std::abs(x0) < 1e-4) continue;
    return {x0, x1, x2, x3};
  }
}

double residual_f45(const targets::TargetDerivation& d) {
  const auto& g = d.gammas;
  const auto& b = d.betas;
  const double r1 = b[0] * g[0] + 2.0 * b[3] * g[3] - b[4] * g[4];
  const double r2 = b[1] * g[1] + b[2] * g[2] + 2.0 * b[3] * g[3];
  return std::max(std::abs(r1), std::abs(r2));
}

}  // namespace

TEST_CASE("targets: on-surface validation") {
  CHECK_NOTHROW(targets::validate_on_surface(SurfaceId::X1, {165, 1083, 1805, 3971}));
  CHECK_THROWS_AS(targets::validate_on_surface(SurfaceId::X1, {165, 1083, 1805, 3970}), error);
  CHECK_THROWS_AS(targets::validate_on_surface(SurfaceId::X1, {0, 0, 0, 0}), error);
}

TEST_CASE("targets: the explicit X2 cube-root gamma") {
  // xi1 + xi2 + xi3 = 8 forces gamma1 = 2
  const double x1 = 3, x2 = 4, x3 = 1;
  const double x0 = -x1 * x2 * (x1 + x2) / 64.0;
  auto d = targets::derive_X2({x0, x1, x2, x3});
  CHECK(d.gammas[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(d.betas[0] == 1);
  CHECK(d.family == solvers::FamilyKind::F4);
  for (double e : d.exponents) CHECK(e == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("targets: X2 gammas satisfy both constraint relations") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 100; ++trial) {
    auto xi = random_x2_point(rng);
    auto d = targets::derive_X2(xi);
    CHECK(residual_f45(d) < 1e-9 * (1.0 + std::abs(d.gammas[0])));
  }
}

TEST_CASE("targets: X2 derivation is homogeneous of weight 1/3") {
  std::mt19937_64 rng(99);
  auto xi = random_x2_point(rng);
  auto d1 = targets::derive_X2(xi);
  const double t = 3.7;
  std::array<double, 4> scaled{};
  for (int i = 0; i < 4; ++i) scaled[i] = t * xi[i];
  auto dt = targets::derive_X2(scaled);
  for (int j = 0; j < 5; ++j) {
    CHECK(dt.gammas[j] == doctest::Approx(d1.gammas[j] * std::cbrt(t)).epsilon(1e-10));
    CHECK(dt.betas[j] == d1.betas[j]);
  }
}

TEST_CASE("targets: generic derivation agrees with the explicit X2 recipe") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 100; ++trial) {
    auto xi = random_x2_point(rng);
    auto a = targets::derive_X2(xi);
    auto b = targets::derive_generic(SurfaceId::X2, xi);
    for (int j = 0; j < 5; ++j) {
      CHECK(b.betas[j] == a.betas[j]);
      CHECK(b.gammas[j] == doctest::Approx(a.gammas[j]).epsilon(1e-9));
    }
  }
}

TEST_CASE("targets: X1 derivation inverts the worked point") {
  const std::array<double, 4> xi{165.0 / 6859, 1083.0 / 6859, 1805.0 / 6859, 3971.0 / 6859};
  auto d = targets::derive_generic(SurfaceId::X1, xi);
  const double expect[] = {1.0, 3.0 / 19, 5.0 / 19, 11.0 / 19};
  for (int j = 0; j < 4; ++j) {
    CHECK(d.betas[j] == 1);
    CHECK(d.gammas[j] == doctest::Approx(expect[j]).epsilon(1e-10));
  }
}

TEST_CASE("targets: X8 exponents and constraint relation") {
  const auto& f = fixtures::kFixtures[7];
  auto xi = fixtures::target_xi(f);
  auto d = targets::derive_generic(SurfaceId::X8, xi);
  for (double e : d.exponents) CHECK(e == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
  const double r = d.betas[0] * d.gammas[0] + d.betas[1] * d.gammas[1] + 2.0 * d.betas[2] * d.gammas[2];
  CHECK(std::abs(r) < 1e-9);
}

TEST_CASE("targets: degenerate coordinates are rejected") {
  // xi0 = 0 forces x1 x2 x3 = 0 on X1; the map has no preimage
  CHECK_THROWS_AS(targets::derive_generic(SurfaceId::X1, {0.0, 2.0, -1.0, -1.0}), error);
}

TEST_CASE("targets: round trip over every surface") {
  std::mt19937_64 rng(555);
  for (auto id : surfaces::all_ids()) {
    const auto& s = surfaces::spec(id);
    for (int trial = 0; trial < 25; ++trial) {
      auto a = harness::sample_assignment(id, rng);
      auto pt = surfaces::parametrize(a);
      double mx = 0.0;
      for (const auto& f : pt) mx = std::max(mx, std::abs(f.value.get_d()));
      const double B = 2.0 * mx;
      std::array<double, 4> xi{};
      for (int i = 0; i < 4; ++i) xi[i] = pt[i].value.get_d() / B;
      auto d = targets::derive_generic(id, xi);
      for (int j = 0; j < s.k; ++j) {
        CHECK(d.betas[j] == a.betas[j]);
        const double recovered = d.gammas[j] * std::pow(B, d.exponents[j]);
        CHECK(recovered == doctest::Approx(static_cast<double>(a.primes[j])).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("targets: interval realization") {
  auto iv_window = solvers::make_window(1.0, 1.0 / 3.0, 1000000, 0.1, false);
  CHECK(iv_window.ilo == 90);
  CHECK(iv_window.ihi == 110);

  const auto& f = fixtures::kFixtures[0];  // X1
  auto xi = fixtures::target_xi(f);
  auto d = targets::derive_generic(f.id, xi);
  auto iv = targets::make_intervals(d, f.B_star, 0.05);
  CHECK(iv.gammas == d.gammas);
  CHECK(iv.B == f.B_star);
  auto wins = targets::realize_windows(d, f.B_star, 0.05);
  for (int j = 0; j < 4; ++j) {
    CHECK(wins[j].contains(static_cast<int64_t>(f.primes[j])));  // generating primes stay inside
  }
}

TEST_CASE("targets: auto delta keeps the image box inside the epsilon box") {
  std::mt19937_64 rng(777);
  for (auto id : surfaces::all_ids()) {
    auto a = harness::sample_assignment(id, rng);
    auto pt = surfaces::parametrize(a);
    double mx = 0.0;
    for (const auto& f : pt) mx = std::max(mx, std::abs(f.value.get_d()));
    std::array<double, 4> xi{};
    for (int i = 0; i < 4; ++i) xi[i] = pt[i].value.get_d() / mx;
    auto d = targets::derive_generic(id, xi);
    const double eps = 0.25;
    const double delta = targets::auto_delta(d, xi, eps);
    CHECK(delta > 0.0);
    CHECK(delta <= 0.49);

    // check the corners directly
    const auto& s = surfaces::spec(id);
    auto wins = targets::realize_windows(d, 1000000007ULL, delta);
    for (int i = 0; i < 4; ++i) {
      double up = s.coords[i].coeff, down = s.coords[i].coeff;
      for (int j = 0; j < s.k; ++j) {
        for (int e = 0; e < s.coords[i].prime_exp[j]; ++e) {
          up *= wins[j].hi / std::pow(1000000007.0, d.exponents[j]);
          down *= wins[j].lo / std::pow(1000000007.0, d.exponents[j]);
        }
      }
      CHECK(up - std::abs(xi[i]) < eps + 1e-12);
      CHECK(std::abs(xi[i]) - down < eps + 1e-12);
    }
  }
}

TEST_CASE("targets: off-surface points are rejected") {
  CHECK_THROWS_AS(targets::derive_generic(SurfaceId::X3, {1.0, 1.0, 1.0, 1.0}), error);
}
