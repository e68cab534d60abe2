#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace torsor {

// Exact wide integer. Coordinate products reach ~B^4, far past 64 bits.
using BigInt = mpz_class;

enum class errc {
  empty_range,
  undefined_input,
  invalid_assignment,
  duplicate_prime,
  inconsistent_target,
  not_in_u,
  bad_xi,
  bad_config,
  unsupported,
};

class error : public std::runtime_error {
 public:
  error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  errc kind() const { return kind_; }

 private:
  errc kind_;
};

namespace arith {

// Deterministic Miller-Rabin, valid for every 64-bit input.
bool is_prime_u64(uint64_t n);

// All primes in [lo, hi], ascending. Segmented, so memory stays proportional
// to the interval length even for windows sitting near 10^12.
// Throws errc::empty_range when lo > hi.
std::vector<uint64_t> primes_in(uint64_t lo, uint64_t hi);

// Standard mu and phi for a single argument (trial division).
int mobius(uint64_t q);
uint64_t euler_phi(uint64_t q);

// Linear-sieve tables mu[0..n], phi[0..n] for partial sums over q <= n.
std::vector<int8_t> mobius_table(uint32_t n);
std::vector<uint32_t> phi_table(uint32_t n);

// gcd of the four entries; throws errc::undefined_input on the zero vector.
BigInt gcd4(const std::array<BigInt, 4>& x);
uint64_t gcd4(const std::array<int64_t, 4>& x);

// An integer carried as sign * product of prime powers, with the exact value
// kept alongside so Omega-counting never has to factor ~B^4 products.
struct FactoredInt {
  int sign = 0;                           // -1, 0, +1
  std::map<uint64_t, uint32_t> factors;   // prime -> multiplicity, primes distinct
  BigInt value = 0;

  static FactoredInt zero() { return {}; }
  static FactoredInt unit(int sign);

  // Multiply by p^mult. p must pass the primality check.
  FactoredInt& mul_prime(uint64_t p, uint32_t mult);
  // Multiply by a small nonzero integer constant (factored by trial division).
  FactoredInt& mul_small(int64_t c);

  friend FactoredInt operator*(const FactoredInt& a, const FactoredInt& b);

  // value == sign * prod p^k, all p prime, sign==0 iff empty and value 0.
  bool consistent() const;
};

// Omega(n): number of prime factors counted with multiplicity.
// Throws errc::undefined_input when n == 0.
uint64_t big_omega(const FactoredInt& n);

// Number of distinct odd primes dividing n. Throws as big_omega.
uint64_t omega_distinct_odd(const FactoredInt& n);

}  // namespace arith
}  // namespace torsor
