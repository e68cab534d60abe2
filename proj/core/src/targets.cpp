#include "torsor/targets.hpp"

#include <algorithm>
#include <cmath>

namespace torsor::targets {

using surfaces::SurfaceId;
using surfaces::SurfaceSpec;

namespace {

int sgn(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

void require(bool cond, errc kind, const std::string& msg) {
  if (!cond) throw error(kind, msg);
}

// Solve M g = L for a square system by Gaussian elimination with partial
// pivoting. The surface exponent matrices are small and well conditioned.
std::vector<double> solve_square(std::vector<std::vector<double>> M, std::vector<double> L) {
  const size_t n = L.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r) {
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    }
    require(std::abs(M[piv][col]) > 1e-12, errc::bad_xi, "derivation: singular exponent system");
    std::swap(M[piv], M[col]);
    std::swap(L[piv], L[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = M[r][col] / M[col][col];
      if (f == 0.0) continue;
      for (size_t c = col; c < n; ++c) M[r][c] -= f * M[col][c];
      L[r] -= f * L[col];
    }
  }
  std::vector<double> g(n);
  for (size_t i = 0; i < n; ++i) g[i] = L[i] / M[i][i];
  return g;
}

// Real-level constraint residual: sum of coeff * prod beta * prod gamma.
double real_residual(const std::vector<surfaces::ConstraintTerm>& constraint, const std::vector<int>& betas,
                     const std::vector<double>& gammas, double* scale_out = nullptr) {
  double r = 0.0, scale = 0.0;
  for (const auto& term : constraint) {
    double v = term.coeff;
    for (int bi : term.betas) v *= betas[bi];
    for (int pi : term.primes) v *= gammas[pi];
    r += v;
    scale = std::max(scale, std::abs(v));
  }
  if (scale_out) *scale_out = scale;
  return r;
}

std::vector<int> resolve_betas(const SurfaceSpec& s, const std::array<double, 4>& xi) {
  std::vector<int> betas(s.k, 0);
  for (const auto& step : s.beta_steps) {
    int b = sgn(xi[step.xi]);
    require(b != 0, errc::not_in_u, "derivation: vanishing coordinate");
    for (int d : step.deps) b *= betas[d];
    betas[step.beta] = b;
  }
  for (const auto& [xi_idx, deps] : s.sign_checks) {
    int prod = 1;
    for (int d : deps) prod *= betas[d];
    require(sgn(xi[xi_idx]) == prod, errc::not_in_u, "derivation: coordinate sign pattern off the construction");
  }
  return betas;
}

// Resolve the completion betas through their constraints and check the
// magnitudes line up. gammas must already be final (normalized scale).
void complete_betas(const SurfaceSpec& s, std::vector<int>& betas, const std::vector<double>& gammas) {
  for (int cb : s.completion_betas) {
    const std::vector<surfaces::ConstraintTerm>* owner = nullptr;
    const surfaces::ConstraintTerm* own_term = nullptr;
    for (const auto& constraint : s.constraints) {
      for (const auto& term : constraint) {
        if (term.betas.size() == 1 && term.betas[0] == cb) {
          owner = &constraint;
          own_term = &term;
        }
      }
      if (owner) break;
    }
    require(owner != nullptr, errc::bad_xi, "derivation: completion beta without a linear constraint term");
    double rest = 0.0;
    for (const auto& term : *owner) {
      if (&term == own_term) continue;
      double v = term.coeff;
      for (int bi : term.betas) {
        require(betas[bi] != 0, errc::bad_xi, "derivation: unresolved beta ordering");
        v *= betas[bi];
      }
      for (int pi : term.primes) v *= gammas[pi];
      rest += v;
    }
    require(std::abs(rest) > 0.0, errc::not_in_u, "derivation: constraint degenerates at xi");
    double monomial = std::abs(static_cast<double>(own_term->coeff));
    for (int pi : own_term->primes) monomial *= gammas[pi];
    betas[cb] = -sgn(rest) * sgn(own_term->coeff);
    require(std::abs(monomial - std::abs(rest)) <= 1e-7 * std::max(1.0, std::abs(rest)), errc::not_in_u,
            "derivation: completion magnitude mismatch");
  }
}

void verify_derivation(const SurfaceSpec& s, const std::vector<int>& betas, const std::vector<double>& gammas,
                       const std::array<double, 4>& xi_normalized) {
  for (const auto& constraint : s.constraints) {
    double scale = 0.0;
    const double r = real_residual(constraint, betas, gammas, &scale);
    require(std::abs(r) <= 1e-7 * std::max(1.0, scale), errc::not_in_u, "derivation: gamma relation violated");
  }
  for (int i = 0; i < 4; ++i) {
    const auto& cm = s.coords[i];
    double v = cm.coeff;
    for (int j = 0; j < s.k; ++j) {
      if (cm.beta_par[j] & 1) v *= betas[j];
      for (int e = 0; e < cm.prime_exp[j]; ++e) v *= gammas[j];
    }
    require(std::abs(v - xi_normalized[i]) <= 1e-7 * std::max(1.0, std::abs(xi_normalized[i])), errc::bad_xi,
            "derivation: reconstruction does not reach xi");
  }
}

}  // namespace

void validate_on_surface(SurfaceId id, const std::array<double, 4>& xi) {
  double m = 0.0;
  for (double v : xi) m = std::max(m, std::abs(v));
  require(m > 0.0, errc::bad_xi, "xi is the zero vector");
  double total = 0.0;
  for (const auto& mono : surfaces::spec(id).form) {
    double term = mono.coeff;
    for (int i = 0; i < 4; ++i) {
      for (int e = 0; e < mono.exp[i]; ++e) term *= xi[i];
    }
    total += term;
  }
  require(std::abs(total) <= 1e-9 * m * m * m, errc::bad_xi, "xi does not lie on the surface");
}

TargetDerivation derive_X2(const std::array<double, 4>& xi) {
  validate_on_surface(SurfaceId::X2, xi);
  const double s3 = xi[1] + xi[2] + xi[3];
  require(std::abs(xi[1] * xi[2]) > 0.0, errc::not_in_u, "X2 target needs xi1*xi2 != 0");
  require(std::abs(s3) > 0.0, errc::not_in_u, "X2 target needs xi1+xi2+xi3 != 0");
  require(std::abs(xi[0]) > 0.0 && std::abs(xi[3]) > 0.0, errc::not_in_u, "X2 target on a coordinate section");

  const double c = std::cbrt(s3);
  const double c2 = c * c;  // cbrt(s3^2) >= 0
  TargetDerivation d;
  d.surface = SurfaceId::X2;
  d.gammas = {std::abs(c), std::abs(xi[1] / c2), std::abs(xi[2] / c2),
              std::abs(xi[0] * c2 * c2 / (2.0 * xi[1] * xi[2])), std::abs(xi[3] / c2)};
  d.betas = {sgn(c), sgn(xi[1]), sgn(xi[2]), sgn(xi[0] / (xi[1] * xi[2])), sgn(xi[3])};
  const auto& sp = surfaces::spec(SurfaceId::X2);
  d.exponents.assign(sp.exponents.begin(), sp.exponents.begin() + sp.k);
  d.family = sp.family;
  return d;
}

TargetDerivation derive_generic(SurfaceId id, const std::array<double, 4>& xi_raw) {
  const auto& s = surfaces::spec(id);
  validate_on_surface(id, xi_raw);

  double scale = 0.0;
  for (double v : xi_raw) scale = std::max(scale, std::abs(v));
  std::array<double, 4> xi{};
  for (int i = 0; i < 4; ++i) xi[i] = xi_raw[i] / scale;
  for (int i = 0; i < 4; ++i) {
    // coordinate spreads can be huge on the 1/7-exponent surface, so this
    // only screens exact zeros; inconsistent targets die in verification
    require(std::abs(xi[i]) > 1e-250, errc::not_in_u, "derivation: vanishing coordinate");
  }

  std::vector<int> betas = resolve_betas(s, xi);

  // Magnitude system: sum_j m_ij * g_j = log(|xi_i| / c_i), g_j = log gamma_j.
  std::vector<std::vector<double>> M(4, std::vector<double>(s.k, 0.0));
  std::vector<double> L(4, 0.0);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < s.k; ++j) M[i][j] = s.coords[i].prime_exp[j];
    L[i] = std::log(std::abs(xi[i]) / s.coords[i].coeff);
  }

  std::vector<double> g;
  if (s.k == 4) {
    g = solve_square(M, L);
  } else {
    // One more slot than coordinates (X2). Solve with slot 0 as the free
    // parameter, then pin it through the constraint free of completion betas.
    std::vector<std::vector<double>> M4(4, std::vector<double>(4, 0.0));
    for (int i = 0; i < 4; ++i) {
      for (int j = 1; j < s.k; ++j) M4[i][j - 1] = M[i][j];
    }
    std::vector<double> col0(4);
    for (int i = 0; i < 4; ++i) col0[i] = M[i][0];

    auto part = solve_square(M4, L);  // g with g_0 = 0
    std::vector<double> rhs(4);
    for (int i = 0; i < 4; ++i) rhs[i] = -col0[i];
    auto kern_rest = solve_square(M4, rhs);  // kernel with kappa_0 = 1

    std::vector<double> g0{0.0}, kappa{1.0};
    g0.insert(g0.end(), part.begin(), part.end());
    kappa.insert(kappa.end(), kern_rest.begin(), kern_rest.end());

    int pin = -1;
    for (size_t ci = 0; ci < s.constraints.size(); ++ci) {
      bool has_completion = false;
      for (const auto& term : s.constraints[ci]) {
        for (int bi : term.betas) {
          if (std::find(s.completion_betas.begin(), s.completion_betas.end(), bi) != s.completion_betas.end()) {
            has_completion = true;
          }
        }
      }
      if (!has_completion) pin = static_cast<int>(ci);
    }
    require(pin >= 0, errc::bad_xi, "derivation: no pinnable constraint");

    // Group the pin constraint's terms by their kernel weight; with two
    // groups, u*exp(ka*tau) + v*exp(kb*tau) = 0 has the closed-form root.
    double ka = 0.0, ua = 0.0, kb = 0.0, ub = 0.0;
    int groups = 0;
    for (const auto& term : s.constraints[pin]) {
      double weight = 0.0;
      double v = term.coeff;
      for (int pi : term.primes) {
        weight += kappa[pi];
        v *= std::exp(g0[pi]);
      }
      for (int bi : term.betas) {
        require(betas[bi] != 0, errc::bad_xi, "derivation: pin constraint needs resolved betas");
        v *= betas[bi];
      }
      if (groups == 0 || std::abs(weight - ka) < 1e-9) {
        ka = weight;
        ua += v;
        groups = std::max(groups, 1);
      } else if (groups == 1 || std::abs(weight - kb) < 1e-9) {
        kb = weight;
        ub += v;
        groups = 2;
      } else {
        throw error(errc::bad_xi, "derivation: pin constraint has more than two kernel weights");
      }
    }
    require(groups == 2 && std::abs(kb - ka) > 1e-9, errc::bad_xi, "derivation: pin constraint degenerate");
    const double ratio = -ua / ub;
    require(ratio > 0.0, errc::not_in_u, "derivation: pin constraint unsolvable at xi");
    const double tau = std::log(ratio) / (kb - ka);
    g = g0;
    for (int j = 0; j < s.k; ++j) g[j] += tau * kappa[j];
  }

  std::vector<double> gammas(s.k);
  for (int j = 0; j < s.k; ++j) gammas[j] = std::exp(g[j]);

  complete_betas(s, betas, gammas);
  verify_derivation(s, betas, gammas, xi);

  TargetDerivation d;
  d.surface = id;
  d.gammas = std::move(gammas);
  d.betas = std::move(betas);
  d.exponents.assign(s.exponents.begin(), s.exponents.begin() + s.k);
  d.family = s.family;
  // undo the normalization: gamma_j scales like scale^(e_j)
  for (int j = 0; j < s.k; ++j) d.gammas[j] *= std::pow(scale, d.exponents[j]);
  return d;
}

namespace {

// Which surface slots take sqrt(1 +- delta) endpoints: the ones the family
// binds to F1's quadratic/bilinear positions.
std::vector<bool> sqrt_mask(const SurfaceSpec& s) {
  std::vector<bool> mask(s.k, false);
  if (s.family == solvers::FamilyKind::F1) {
    for (size_t fslot = 1; fslot < s.family_slots.size(); ++fslot) {
      mask[s.family_slots[fslot]] = true;
    }
  }
  return mask;
}

}  // namespace

solvers::IntervalFamily make_intervals(const TargetDerivation& d, uint64_t B, double delta) {
  solvers::IntervalFamily iv;
  iv.gammas = d.gammas;
  iv.exponents = d.exponents;
  iv.B = B;
  iv.delta = delta;
  return iv;
}

std::vector<solvers::PrimeWindow> realize_windows(const TargetDerivation& d, uint64_t B, double delta) {
  const auto& s = surfaces::spec(d.surface);
  auto mask = sqrt_mask(s);
  std::vector<solvers::PrimeWindow> out(s.k);
  for (int j = 0; j < s.k; ++j) {
    out[j] = solvers::make_window(d.gammas[j], d.exponents[j], B, delta, mask[j]);
  }
  return out;
}

double auto_delta(const TargetDerivation& d, const std::array<double, 4>& xi, double epsilon) {
  if (epsilon <= 0.0) throw error(errc::bad_config, "auto_delta: epsilon must be positive");
  const auto& s = surfaces::spec(d.surface);
  auto mask = sqrt_mask(s);

  // With p_j in gamma_j*(1 +- delta')*B^{e_j}, each coordinate scales by
  // prod (1 +- delta')^{m_ij} around its reconstructed value, which equals
  // xi_i when the derivation is exact.
  auto fits = [&](double delta) {
    for (int i = 0; i < 4; ++i) {
      double up = 1.0, down = 1.0;
      for (int j = 0; j < s.k; ++j) {
        const int m = s.coords[i].prime_exp[j];
        if (m == 0) continue;
        const double u = mask[j] ? std::sqrt(1.0 + delta) : (1.0 + delta);
        const double l = mask[j] ? std::sqrt(1.0 - delta) : (1.0 - delta);
        up *= std::pow(u, m);
        down *= std::pow(l, m);
      }
      const double mag = std::abs(xi[i]);
      if (mag * (up - 1.0) >= epsilon || mag * (1.0 - down) >= epsilon) return false;
    }
    return true;
  };

  double lo = 0.0, hi = 0.49;
  if (fits(hi)) return hi;
  if (!fits(1e-6)) throw error(errc::bad_config, "auto_delta: epsilon leaves no room for any interval");
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (fits(mid) ? lo : hi) = mid;
  }
  return lo * 0.999;
}

}  // namespace torsor::targets
