#include "torsor/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

namespace torsor::solvers {

int family_arity(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::F1: return 4;
    case FamilyKind::F2: return 3;
    case FamilyKind::F3: return 4;
    case FamilyKind::F4: return 5;
  }
  return 0;
}

const char* family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::F1: return "F1";
    case FamilyKind::F2: return "F2";
    case FamilyKind::F3: return "F3";
    case FamilyKind::F4: return "F4";
  }
  return "?";
}

FamilyKind family_from_name(std::string_view name) {
  if (name == "F1") return FamilyKind::F1;
  if (name == "F2") return FamilyKind::F2;
  if (name == "F3") return FamilyKind::F3;
  if (name == "F4") return FamilyKind::F4;
  throw error(errc::bad_config, "unknown family: " + std::string(name));
}

int64_t ConstraintFamily::coeff(int j) const {
  if (kind == FamilyKind::F2) return j == two_slot ? 2 : 1;
  return 1;
}

std::vector<double> default_exponents(const ConstraintFamily& fam) {
  switch (fam.kind) {
    case FamilyKind::F1: return {2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    case FamilyKind::F2: return {fam.alpha, fam.alpha, fam.alpha};
    case FamilyKind::F3: return std::vector<double>(4, 1.0 / 3.0);
    case FamilyKind::F4: return std::vector<double>(5, 1.0 / 3.0);
  }
  return {};
}

PrimeWindow make_window(double gamma, double exponent, uint64_t B, double delta, bool sqrt_endpoints) {
  const double scale = std::pow(static_cast<double>(B), exponent);
  const double down = sqrt_endpoints ? std::sqrt(1.0 - delta) : (1.0 - delta);
  const double up = sqrt_endpoints ? std::sqrt(1.0 + delta) : (1.0 + delta);
  PrimeWindow w;
  w.lo = gamma * down * scale;
  w.hi = gamma * up * scale;
  // Snap against floating roundoff: 90.000000000001 must not exclude 90.
  const double eps_lo = 1e-9 + 1e-12 * std::abs(w.lo);
  const double eps_hi = 1e-9 + 1e-12 * std::abs(w.hi);
  w.ilo = static_cast<int64_t>(std::ceil(w.lo - eps_lo));
  w.ihi = static_cast<int64_t>(std::floor(w.hi + eps_hi));
  return w;
}

static void validate_family(const ConstraintFamily& fam, const IntervalFamily& ivals) {
  const size_t arity = static_cast<size_t>(family_arity(fam.kind));
  if (fam.betas.size() != (fam.kind == FamilyKind::F1 || fam.kind == FamilyKind::F2 ? 3u : arity)) {
    throw error(errc::bad_config, "constraint family: wrong beta count");
  }
  for (int b : fam.betas) {
    if (b != 1 && b != -1) throw error(errc::bad_config, "constraint family: betas must be +-1");
  }
  if (fam.kind == FamilyKind::F2 && (fam.two_slot < 0 || fam.two_slot > 2)) {
    throw error(errc::bad_config, "constraint family: two_slot out of range");
  }
  if (ivals.gammas.size() != arity || ivals.exponents.size() != arity) {
    throw error(errc::bad_config, "interval family: wrong slot count");
  }
  if (ivals.delta <= 0.0 || ivals.delta >= 1.0) {
    throw error(errc::bad_config, "interval family: delta must lie in (0,1)");
  }
  check_gamma_relation(fam, ivals.gammas);
}

std::vector<PrimeWindow> realize(const ConstraintFamily& fam, const IntervalFamily& ivals) {
  validate_family(fam, ivals);
  std::vector<PrimeWindow> out(ivals.gammas.size());
  for (size_t j = 0; j < out.size(); ++j) {
    bool sqrt_ep = fam.kind == FamilyKind::F1 && j >= 1;
    out[j] = make_window(ivals.gammas[j], ivals.exponents[j], ivals.B, ivals.delta, sqrt_ep);
  }
  return out;
}

void check_gamma_relation(const ConstraintFamily& fam, std::span<const double> gammas) {
  auto fail = [&](double residual) {
    throw error(errc::inconsistent_target,
                std::string("gamma relation violated for ") + family_name(fam.kind) + ": residual " +
                    std::to_string(residual));
  };
  double scale = 0.0;
  for (double g : gammas) scale = std::max(scale, std::abs(g));
  const double tol = 1e-6 * std::max(1.0, scale * scale);
  switch (fam.kind) {
    case FamilyKind::F1: {
      double r = 2.0 * fam.betas[0] * gammas[0] + fam.betas[1] * gammas[1] * gammas[1] +
                 fam.betas[2] * gammas[2] * gammas[3];
      if (std::abs(r) > tol) fail(r);
      break;
    }
    case FamilyKind::F2: {
      double r = 0.0;
      for (int j = 0; j < 3; ++j) r += static_cast<double>(fam.coeff(j)) * fam.betas[j] * gammas[j];
      if (std::abs(r) > tol) fail(r);
      break;
    }
    case FamilyKind::F3: {
      double r = 0.0;
      for (int j = 0; j < 4; ++j) r += fam.betas[j] * gammas[j];
      if (std::abs(r) > tol) fail(r);
      break;
    }
    case FamilyKind::F4: {
      double r1 = fam.betas[0] * gammas[0] + 2.0 * fam.betas[3] * gammas[3] - fam.betas[4] * gammas[4];
      double r2 = fam.betas[1] * gammas[1] + fam.betas[2] * gammas[2] + 2.0 * fam.betas[3] * gammas[3];
      if (std::abs(r1) > tol) fail(r1);
      if (std::abs(r2) > tol) fail(r2);
      break;
    }
  }
}

namespace {

std::vector<int64_t> window_primes(const PrimeWindow& w) {
  std::vector<int64_t> out;
  if (w.empty() || w.ihi < 2) return out;
  auto ps = arith::primes_in(static_cast<uint64_t>(std::max<int64_t>(w.ilo, 2)), static_cast<uint64_t>(w.ihi));
  out.assign(ps.begin(), ps.end());
  return out;
}

bool prime_in(int64_t v, const PrimeWindow& w) {
  return v > 1 && w.contains(v) && arith::is_prime_u64(static_cast<uint64_t>(v));
}

// Run fn(chunk) over contiguous chunks of `outer` and concatenate the results
// in chunk order. Output is independent of the worker count.
template <typename Tuple, typename Fn>
std::vector<Tuple> run_partitioned(const std::vector<int64_t>& outer, int workers, Fn fn) {
  std::vector<Tuple> all;
  if (outer.empty()) return all;
  int n = std::max(1, workers);
  n = static_cast<int>(std::min<size_t>(n, outer.size()));
  if (n == 1) {
    return fn(std::span<const int64_t>(outer));
  }
  std::vector<std::future<std::vector<Tuple>>> parts;
  size_t chunk = (outer.size() + n - 1) / n;
  for (int i = 0; i < n; ++i) {
    size_t b = i * chunk;
    size_t e = std::min(outer.size(), b + chunk);
    if (b >= e) break;
    parts.push_back(std::async(std::launch::async, [&, b, e] {
      return fn(std::span<const int64_t>(outer.data() + b, e - b));
    }));
  }
  for (auto& f : parts) {
    auto part = f.get();
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

}  // namespace

std::vector<std::array<int64_t, 4>> solve_F1(const ConstraintFamily& fam, const IntervalFamily& ivals,
                                             int workers) {
  if (fam.kind != FamilyKind::F1) throw error(errc::bad_config, "solve_F1: family is not F1");
  auto win = realize(fam, ivals);
  auto p2s = window_primes(win[1]);
  auto p3s = window_primes(win[2]);
  auto p4s = window_primes(win[3]);
  const int64_t b1 = fam.betas[0], b2 = fam.betas[1], b3 = fam.betas[2];

  auto body = [&](std::span<const int64_t> chunk) {
    std::vector<std::array<int64_t, 4>> out;
    for (int64_t p2 : chunk) {
      const int64_t sq = b2 * p2 * p2;
      for (int64_t p3 : p3s) {
        for (int64_t p4 : p4s) {
          const int64_t rhs = -(sq + b3 * p3 * p4);  // = 2*b1*p1
          const int64_t num = b1 > 0 ? rhs : -rhs;
          if (num <= 0 || num % 2 != 0) continue;
          const int64_t p1 = num / 2;
          if (prime_in(p1, win[0])) out.push_back({p1, p2, p3, p4});
        }
      }
    }
    return out;
  };

  auto all = run_partitioned<std::array<int64_t, 4>>(p2s, workers, body);
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<std::array<int64_t, 3>> solve_F2(const ConstraintFamily& fam, const IntervalFamily& ivals,
                                             int workers) {
  if (fam.kind != FamilyKind::F2) throw error(errc::bad_config, "solve_F2: family is not F2");
  auto win = realize(fam, ivals);
  const int solved = fam.two_slot;
  const int a = (solved + 1) % 3, b = (solved + 2) % 3;
  const int i = std::min(a, b), j = std::max(a, b);
  auto pis = window_primes(win[i]);
  auto pjs = window_primes(win[j]);

  auto body = [&](std::span<const int64_t> chunk) {
    std::vector<std::array<int64_t, 3>> out;
    for (int64_t pi : chunk) {
      for (int64_t pj : pjs) {
        const int64_t rest = fam.betas[i] * pi + fam.betas[j] * pj;
        const int64_t num = fam.betas[solved] > 0 ? -rest : rest;  // = 2*p_solved
        if (num <= 0 || num % 2 != 0) continue;
        const int64_t ps = num / 2;
        if (!prime_in(ps, win[solved])) continue;
        std::array<int64_t, 3> sol{};
        sol[i] = pi;
        sol[j] = pj;
        sol[solved] = ps;
        out.push_back(sol);
      }
    }
    return out;
  };

  auto all = run_partitioned<std::array<int64_t, 3>>(pis, workers, body);
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<std::array<int64_t, 4>> solve_F3(const ConstraintFamily& fam, const IntervalFamily& ivals,
                                             int workers) {
  if (fam.kind != FamilyKind::F3) throw error(errc::bad_config, "solve_F3: family is not F3");
  auto win = realize(fam, ivals);
  auto p1s = window_primes(win[0]);
  auto p2s = window_primes(win[1]);
  auto p3s = window_primes(win[2]);

  auto body = [&](std::span<const int64_t> chunk) {
    std::vector<std::array<int64_t, 4>> out;
    for (int64_t p1 : chunk) {
      for (int64_t p2 : p2s) {
        for (int64_t p3 : p3s) {
          const int64_t rest = fam.betas[0] * p1 + fam.betas[1] * p2 + fam.betas[2] * p3;
          const int64_t p4 = fam.betas[3] > 0 ? -rest : rest;
          if (p4 > 0 && prime_in(p4, win[3])) out.push_back({p1, p2, p3, p4});
        }
      }
    }
    return out;
  };

  auto all = run_partitioned<std::array<int64_t, 4>>(p1s, workers, body);
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<std::array<int64_t, 5>> solve_F4(const ConstraintFamily& fam, const IntervalFamily& ivals,
                                             int workers) {
  if (fam.kind != FamilyKind::F4) throw error(errc::bad_config, "solve_F4: family is not F4");
  auto win = realize(fam, ivals);
  auto p1s = window_primes(win[0]);
  auto p2s = window_primes(win[1]);
  auto p3s = window_primes(win[2]);

  // Equation two determines p4 from (p2, p3); equation one then determines p5
  // from p1. The two equations share only p4, so the order is immaterial.
  auto body = [&](std::span<const int64_t> chunk) {
    std::vector<std::array<int64_t, 5>> out;
    for (int64_t p2 : chunk) {
      for (int64_t p3 : p3s) {
        const int64_t rest2 = fam.betas[1] * p2 + fam.betas[2] * p3;
        const int64_t num4 = fam.betas[3] > 0 ? -rest2 : rest2;
        if (num4 <= 0 || num4 % 2 != 0) continue;
        const int64_t p4 = num4 / 2;
        if (!prime_in(p4, win[3])) continue;
        for (int64_t p1 : p1s) {
          const int64_t rest1 = fam.betas[0] * p1 + 2 * fam.betas[3] * p4;
          const int64_t p5 = fam.betas[4] > 0 ? rest1 : -rest1;
          if (p5 > 0 && prime_in(p5, win[4])) out.push_back({p1, p2, p3, p4, p5});
        }
      }
    }
    return out;
  };

  auto all = run_partitioned<std::array<int64_t, 5>>(p2s, workers, body);
  std::sort(all.begin(), all.end());
  return all;
}

template <size_t N>
double weighted_count(std::span<const std::array<int64_t, N>> solutions, Weight w) {
  if (w == Weight::Unit) return static_cast<double>(solutions.size());
  double total = 0.0;
  for (const auto& sol : solutions) {
    double term = 1.0;
    for (int64_t p : sol) term *= std::log(static_cast<double>(p));
    total += term;
  }
  return total;
}

template double weighted_count<3>(std::span<const std::array<int64_t, 3>>, Weight);
template double weighted_count<4>(std::span<const std::array<int64_t, 4>>, Weight);
template double weighted_count<5>(std::span<const std::array<int64_t, 5>>, Weight);

}  // namespace torsor::solvers
