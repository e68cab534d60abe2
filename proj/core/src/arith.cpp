#include "torsor/arith.hpp"

#include <algorithm>
#include <cmath>

namespace torsor::arith {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is known to be exact for all n < 2^64.
  for (uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    uint64_t x = powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<uint64_t> primes_in(uint64_t lo, uint64_t hi) {
  if (lo > hi) throw error(errc::empty_range, "primes_in: lo > hi");
  std::vector<uint64_t> out;
  if (hi < 2) return out;
  lo = std::max<uint64_t>(lo, 2);

  // Base primes up to sqrt(hi) by a plain sieve.
  uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(hi))) + 2;
  while (root * root > hi + 1) --root;
  std::vector<uint8_t> base(root + 1, 1);
  std::vector<uint64_t> base_primes;
  for (uint64_t i = 2; i <= root; ++i) {
    if (!base[i]) continue;
    base_primes.push_back(i);
    for (uint64_t j = i * i; j <= root; j += i) base[j] = 0;
  }

  constexpr uint64_t kSegment = 1 << 20;
  std::vector<uint8_t> seg;
  for (uint64_t start = lo; start <= hi; start += kSegment) {
    uint64_t end = std::min(hi, start + kSegment - 1);
    seg.assign(end - start + 1, 1);
    for (uint64_t p : base_primes) {
      if (p * p > end) break;
      uint64_t first = std::max(p * p, ((start + p - 1) / p) * p);
      for (uint64_t j = first; j <= end; j += p) seg[j - start] = 0;
    }
    for (uint64_t i = start; i <= end; ++i) {
      if (seg[i - start]) out.push_back(i);
    }
    if (end == hi) break;  // avoid overflow on start += kSegment near UINT64_MAX
  }
  return out;
}

int mobius(uint64_t q) {
  if (q == 0) throw error(errc::undefined_input, "mobius: q must be positive");
  int sign = 1;
  for (uint64_t p = 2; p * p <= q; p += (p == 2 ? 1 : 2)) {
    if (q % p == 0) {
      q /= p;
      if (q % p == 0) return 0;
      sign = -sign;
    }
  }
  if (q > 1) sign = -sign;
  return sign;
}

uint64_t euler_phi(uint64_t q) {
  if (q == 0) throw error(errc::undefined_input, "euler_phi: q must be positive");
  uint64_t result = q;
  for (uint64_t p = 2; p * p <= q; p += (p == 2 ? 1 : 2)) {
    if (q % p == 0) {
      while (q % p == 0) q /= p;
      result -= result / p;
    }
  }
  if (q > 1) result -= result / q;
  return result;
}

std::vector<int8_t> mobius_table(uint32_t n) {
  std::vector<int8_t> mu(n + 1, 0);
  std::vector<uint32_t> primes;
  std::vector<uint8_t> is_comp(n + 1, 0);
  if (n >= 1) mu[1] = 1;
  for (uint32_t i = 2; i <= n; ++i) {
    if (!is_comp[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (uint32_t p : primes) {
      uint64_t ip = static_cast<uint64_t>(i) * p;
      if (ip > n) break;
      is_comp[ip] = 1;
      if (i % p == 0) {
        mu[ip] = 0;
        break;
      }
      mu[ip] = static_cast<int8_t>(-mu[i]);
    }
  }
  return mu;
}

std::vector<uint32_t> phi_table(uint32_t n) {
  std::vector<uint32_t> phi(n + 1, 0);
  std::vector<uint32_t> primes;
  std::vector<uint8_t> is_comp(n + 1, 0);
  if (n >= 1) phi[1] = 1;
  for (uint32_t i = 2; i <= n; ++i) {
    if (!is_comp[i]) {
      primes.push_back(i);
      phi[i] = i - 1;
    }
    for (uint32_t p : primes) {
      uint64_t ip = static_cast<uint64_t>(i) * p;
      if (ip > n) break;
      is_comp[ip] = 1;
      if (i % p == 0) {
        phi[ip] = phi[i] * p;
        break;
      }
      phi[ip] = phi[i] * (p - 1);
    }
  }
  return phi;
}

BigInt gcd4(const std::array<BigInt, 4>& x) {
  BigInt g = 0;
  for (const auto& v : x) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  if (g == 0) throw error(errc::undefined_input, "gcd4: zero vector");
  return g;
}

uint64_t gcd4(const std::array<int64_t, 4>& x) {
  uint64_t g = 0;
  for (int64_t v : x) {
    uint64_t a = v < 0 ? static_cast<uint64_t>(-(v + 1)) + 1 : static_cast<uint64_t>(v);
    while (a != 0) {
      uint64_t t = g % a;
      g = a;
      a = t;
    }
  }
  if (g == 0) throw error(errc::undefined_input, "gcd4: zero vector");
  return g;
}

FactoredInt FactoredInt::unit(int sign) {
  if (sign != 1 && sign != -1) throw error(errc::undefined_input, "FactoredInt::unit: sign must be +-1");
  FactoredInt f;
  f.sign = sign;
  f.value = sign;
  return f;
}

FactoredInt& FactoredInt::mul_prime(uint64_t p, uint32_t mult) {
  if (sign == 0) throw error(errc::undefined_input, "FactoredInt: multiplying zero");
  if (mult == 0) return *this;
  if (!is_prime_u64(p)) throw error(errc::invalid_assignment, "FactoredInt: " + std::to_string(p) + " is not prime");
  factors[p] += mult;
  BigInt pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), p, mult);
  value *= pw;
  return *this;
}

FactoredInt& FactoredInt::mul_small(int64_t c) {
  if (c == 0) throw error(errc::undefined_input, "FactoredInt: multiplying by 0");
  if (sign == 0) throw error(errc::undefined_input, "FactoredInt: multiplying zero");
  if (c < 0) {
    sign = -sign;
    value = -value;
    c = -c;
  }
  for (int64_t p = 2; p * p <= c; p += (p == 2 ? 1 : 2)) {
    while (c % p == 0) {
      mul_prime(static_cast<uint64_t>(p), 1);
      c /= p;
    }
  }
  if (c > 1) mul_prime(static_cast<uint64_t>(c), 1);
  return *this;
}

FactoredInt operator*(const FactoredInt& a, const FactoredInt& b) {
  if (a.sign == 0 || b.sign == 0) return FactoredInt::zero();
  FactoredInt out;
  out.sign = a.sign * b.sign;
  out.factors = a.factors;
  for (const auto& [p, k] : b.factors) out.factors[p] += k;
  out.value = a.value * b.value;
  return out;
}

bool FactoredInt::consistent() const {
  if (sign == 0) return factors.empty() && value == 0;
  if (sign != 1 && sign != -1) return false;
  BigInt prod = sign;
  for (const auto& [p, k] : factors) {
    if (k == 0 || !is_prime_u64(p)) return false;
    BigInt pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), p, k);
    prod *= pw;
  }
  return prod == value;
}

uint64_t big_omega(const FactoredInt& n) {
  if (n.sign == 0) throw error(errc::undefined_input, "big_omega: undefined at 0");
  uint64_t total = 0;
  for (const auto& [p, k] : n.factors) {
    (void)p;
    total += k;
  }
  return total;
}

uint64_t omega_distinct_odd(const FactoredInt& n) {
  if (n.sign == 0) throw error(errc::undefined_input, "omega_distinct_odd: undefined at 0");
  uint64_t total = 0;
  for (const auto& [p, k] : n.factors) {
    (void)k;
    if (p != 2) ++total;
  }
  return total;
}

}  // namespace torsor::arith
