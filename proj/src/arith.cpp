#include "rankin/arith.hpp"

#include <algorithm>
#include <numeric>

namespace rankin {

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 lcm(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  const u64 g = std::gcd(a, b);
  u64 out = 0;
  if (__builtin_mul_overflow(a / g, b, &out)) {
    throw ArithmeticError("lcm overflow for " + std::to_string(a) + ", " + std::to_string(b));
  }
  return out;
}

i64 mod(i64 a, i64 m) {
  const i64 r = a % m;
  return r < 0 ? r + m : r;
}

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1U) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1U;
  }
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // Deterministic witness set for 64-bit integers.
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    a %= n;
    if (a == 0) continue;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
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

std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> out;
  for (u64 q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q != 0) continue;
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> out{1};
  for (auto [q, e] : factorize(n)) {
    const std::size_t base = out.size();
    u64 pw = 1;
    for (int i = 1; i <= e; ++i) {
      pw *= q;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 euler_phi(u64 n) {
  u64 r = n;
  for (auto [q, e] : factorize(n)) r = r / q * (q - 1);
  return r;
}

int moebius(u64 n) {
  int r = 1;
  for (auto [q, e] : factorize(n)) {
    if (e > 1) return 0;
    r = -r;
  }
  return r;
}

std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (u64 i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

std::vector<u64> smallest_prime_factors(u64 limit) {
  std::vector<u64> spf(std::max<u64>(limit, 2), 0);
  for (u64 i = 2; i < limit; ++i) {
    if (spf[i] != 0) continue;
    for (u64 j = i; j < limit; j += i) {
      if (spf[j] == 0) spf[j] = i;
    }
  }
  spf.resize(limit);
  return spf;
}

u64 primitive_root(u64 p) {
  if (p == 2) return 1;
  if (!is_prime(p)) throw DomainError("primitive_root: " + std::to_string(p) + " is not prime");
  const auto fac = factorize(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (auto [q, e] : fac) {
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw ArithmeticError("no primitive root modulo " + std::to_string(p));
}

std::pair<u64, int> prime_power(u64 n) {
  if (n == 1) return {0, 0};
  const auto fac = factorize(n);
  if (fac.size() != 1) return {0, -1};
  return fac.front();
}

}  // namespace rankin
