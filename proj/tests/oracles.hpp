#pragma once

// Brute-force reference paths kept independent of the solver implementations:
// trial-division primality, a plain sieve, full nested-loop enumerations over
// the realized windows, and closed-form local-density counts.

#include <array>
#include <cstdint>
#include <vector>

#include "torsor/circle.hpp"
#include "torsor/solvers.hpp"

namespace oracle {

inline bool is_prime_trial(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<uint64_t> simple_sieve(uint64_t n) {
  std::vector<uint8_t> flag(n + 1, 1);
  std::vector<uint64_t> primes;
  for (uint64_t i = 2; i <= n; ++i) {
    if (!flag[i]) continue;
    primes.push_back(i);
    for (uint64_t j = i * i; j <= n; j += i) flag[j] = 0;
  }
  return primes;
}

inline std::vector<int64_t> window_primes_trial(const torsor::solvers::PrimeWindow& w) {
  std::vector<int64_t> out;
  for (int64_t v = std::max<int64_t>(w.ilo, 2); v <= w.ihi; ++v) {
    if (is_prime_trial(v)) out.push_back(v);
  }
  return out;
}

inline std::vector<std::array<int64_t, 3>> brute_F2(const torsor::solvers::ConstraintFamily& fam,
                                                    const torsor::solvers::IntervalFamily& iv) {
  auto win = torsor::solvers::realize(fam, iv);
  std::vector<std::array<int64_t, 3>> out;
  for (int64_t p1 : window_primes_trial(win[0])) {
    for (int64_t p2 : window_primes_trial(win[1])) {
      for (int64_t p3 : window_primes_trial(win[2])) {
        int64_t r = 0;
        const int64_t p[] = {p1, p2, p3};
        for (int j = 0; j < 3; ++j) r += fam.coeff(j) * fam.betas[j] * p[j];
        if (r == 0) out.push_back({p1, p2, p3});
      }
    }
  }
  return out;
}

inline std::vector<std::array<int64_t, 4>> brute_F3(const torsor::solvers::ConstraintFamily& fam,
                                                    const torsor::solvers::IntervalFamily& iv) {
  auto win = torsor::solvers::realize(fam, iv);
  std::vector<std::array<int64_t, 4>> out;
  for (int64_t p1 : window_primes_trial(win[0])) {
    for (int64_t p2 : window_primes_trial(win[1])) {
      for (int64_t p3 : window_primes_trial(win[2])) {
        for (int64_t p4 : window_primes_trial(win[3])) {
          if (fam.betas[0] * p1 + fam.betas[1] * p2 + fam.betas[2] * p3 + fam.betas[3] * p4 == 0) {
            out.push_back({p1, p2, p3, p4});
          }
        }
      }
    }
  }
  return out;
}

inline std::vector<std::array<int64_t, 5>> brute_F4(const torsor::solvers::ConstraintFamily& fam,
                                                    const torsor::solvers::IntervalFamily& iv) {
  auto win = torsor::solvers::realize(fam, iv);
  std::vector<std::array<int64_t, 5>> out;
  for (int64_t p1 : window_primes_trial(win[0])) {
    for (int64_t p2 : window_primes_trial(win[1])) {
      for (int64_t p3 : window_primes_trial(win[2])) {
        for (int64_t p4 : window_primes_trial(win[3])) {
          if (fam.betas[1] * p2 + fam.betas[2] * p3 + 2 * fam.betas[3] * p4 != 0) continue;
          for (int64_t p5 : window_primes_trial(win[4])) {
            if (fam.betas[0] * p1 + 2 * fam.betas[3] * p4 - fam.betas[4] * p5 == 0) {
              out.push_back({p1, p2, p3, p4, p5});
            }
          }
        }
      }
    }
  }
  return out;
}

inline std::vector<std::array<int64_t, 4>> brute_F1(const torsor::solvers::ConstraintFamily& fam,
                                                    const torsor::solvers::IntervalFamily& iv) {
  auto win = torsor::solvers::realize(fam, iv);
  std::vector<std::array<int64_t, 4>> out;
  for (int64_t p1 : window_primes_trial(win[0])) {
    for (int64_t p2 : window_primes_trial(win[1])) {
      for (int64_t p3 : window_primes_trial(win[2])) {
        for (int64_t p4 : window_primes_trial(win[3])) {
          if (2 * fam.betas[0] * p1 + fam.betas[1] * p2 * p2 + fam.betas[2] * p3 * p4 == 0) {
            out.push_back({p1, p2, p3, p4});
          }
        }
      }
    }
  }
  return out;
}

inline uint64_t brute_J(const torsor::solvers::ConstraintFamily& fam,
                        const torsor::solvers::IntervalFamily& iv) {
  auto win = torsor::solvers::realize(fam, iv);
  uint64_t count = 0;
  for (int64_t m1 = win[0].ilo; m1 <= win[0].ihi; ++m1) {
    for (int64_t m2 = win[1].ilo; m2 <= win[1].ihi; ++m2) {
      for (int64_t m3 = win[2].ilo; m3 <= win[2].ihi; ++m3) {
        for (int64_t m4 = win[3].ilo; m4 <= win[3].ihi; ++m4) {
          if (2 * fam.betas[0] * m1 + fam.betas[1] * m2 * m2 + fam.betas[2] * m3 * m4 == 0) ++count;
        }
      }
    }
  }
  return count;
}

// All-unit solution count of Ax = b mod p over the full (p-1)^t grid.
inline uint64_t brute_Np(const torsor::circle::LinearSystem& sys, int64_t p) {
  std::vector<int64_t> x(sys.t, 1);
  uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (int i = 0; i < sys.s && ok; ++i) {
      int64_t acc = -sys.b[i];
      for (int j = 0; j < sys.t; ++j) acc += sys.A[i][j] * x[j];
      if (((acc % p) + p) % p != 0) ok = false;
    }
    if (ok) ++count;
    int j = 0;
    while (j < sys.t) {
      if (++x[j] <= p - 1) break;
      x[j] = 1;
      ++j;
    }
    if (j == sys.t) break;
  }
  return count;
}

// Closed-form all-unit counts mod p (odd p not dividing the coefficients)
// for the three linear shapes.
inline uint64_t closed_Np_row3(int64_t p) { return (p - 1) * (p - 2); }
inline uint64_t closed_Np_row4(int64_t p) { return (p - 1) * (p * p - 3 * p + 3); }
inline uint64_t closed_Np_sys25(int64_t p) { return (p - 1) * (p - 2) * (p - 2); }

}  // namespace oracle
