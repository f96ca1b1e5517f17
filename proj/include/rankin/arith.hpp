#pragma once

// Elementary integer arithmetic shared by the cyclotomic and character layers.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rankin {

using i64 = std::int64_t;
using u64 = std::uint64_t;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by zero, non-invertible element, modulus overflow.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Ingested data is missing or inconsistent.
class DataError : public Error {
 public:
  using Error::Error;
};

u64 gcd(u64 a, u64 b);
u64 lcm(u64 a, u64 b);  // throws ArithmeticError on overflow
i64 mod(i64 a, i64 m);  // result in [0, m)
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 b, u64 e, u64 m);

bool is_prime(u64 n);
std::vector<std::pair<u64, int>> factorize(u64 n);
std::vector<u64> divisors(u64 n);  // ascending
u64 euler_phi(u64 n);
int moebius(u64 n);
std::vector<u64> primes_up_to(u64 n);
u64 primitive_root(u64 p);  // odd prime p

/// If n = p^e for a prime p (e >= 1) returns {p, e}; n = 1 gives {0, 0}.
/// Otherwise {0, -1}.
std::pair<u64, int> prime_power(u64 n);

/// spf[n] is the smallest prime factor of n for 2 <= n < limit; spf[0] = spf[1] = 0.
std::vector<u64> smallest_prime_factors(u64 limit);

}  // namespace rankin
