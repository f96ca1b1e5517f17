#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_M).
//
// An element is stored in the power basis 1, z, ..., z^(phi(M)-1) of
// Q[x]/Phi_M(x), as integer numerators over one positive common
// denominator. The representation is canonical for a fixed M: the
// numerators share no common factor with the denominator, so equal field
// elements of the same modulus have identical data. Values of different
// moduli are compared and combined in Q(zeta_lcm).

#include "rankin/arith.hpp"
#include "rankin/complex_ap.hpp"

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

namespace rankin {

/// Upper bound on the modulus of any cyclotomic field the library will
/// build. Defaults to 10^6.
u64 modulus_cap();
void set_modulus_cap(u64 cap);

class CycloNumber {
 public:
  /// Zero of Q = Q(zeta_1).
  CycloNumber();
  CycloNumber(long value);  // NOLINT(google-explicit-constructor)
  CycloNumber(const mpz_class& value);  // NOLINT(google-explicit-constructor)
  CycloNumber(const mpq_class& value);  // NOLINT(google-explicit-constructor)

  /// zeta_M^e.
  static CycloNumber zeta(u64 modulus, i64 e = 1);
  /// sum of coeffs[i] * zeta_M^i for any number of coefficients; reduces
  /// modulo x^M - 1 and Phi_M.
  static CycloNumber from_coeffs(u64 modulus, std::span<const mpq_class> coeffs);
  /// sum over e in [0, M) of by_exponent[e] * zeta_M^e.
  static CycloNumber from_root_sum(u64 modulus, std::span<const mpq_class> by_exponent);

  [[nodiscard]] u64 modulus() const { return modulus_; }
  /// phi(M), the length of the coefficient vector.
  [[nodiscard]] std::size_t degree() const { return num_.size(); }
  [[nodiscard]] mpq_class coeff(std::size_t i) const;
  [[nodiscard]] std::vector<mpq_class> coeffs() const;
  [[nodiscard]] const mpz_class& denominator() const { return den_; }
  [[nodiscard]] const std::vector<mpz_class>& numerators() const { return num_; }

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_one() const;
  [[nodiscard]] bool is_rational() const;
  /// Throws DomainError when the value is not rational.
  [[nodiscard]] mpq_class rational_value() const;

  /// The same element viewed in Q(zeta_target); M must divide target.
  [[nodiscard]] CycloNumber lift(u64 target) const;
  /// The same element viewed in Q(zeta_target) for target | M; throws
  /// DomainError if the element does not lie in that subfield.
  [[nodiscard]] CycloNumber project(u64 target) const;
  /// The smallest-modulus representation among divisors of M.
  [[nodiscard]] CycloNumber minimal() const;

  /// Automorphism zeta -> zeta^t for t coprime to M.
  [[nodiscard]] CycloNumber galois(i64 t) const;
  /// zeta -> zeta^{-1}; complex conjugation under the principal embedding.
  [[nodiscard]] CycloNumber conj() const { return galois(-1); }

  [[nodiscard]] CycloNumber inv() const;
  [[nodiscard]] CycloNumber pow(i64 e) const;

  CycloNumber& operator+=(const CycloNumber& o);
  CycloNumber& operator-=(const CycloNumber& o);
  CycloNumber& operator*=(const CycloNumber& o);
  CycloNumber& operator/=(const CycloNumber& o);
  /// Scaling by a rational keeps the modulus.
  CycloNumber& operator*=(const mpq_class& q);

  friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
  friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
  friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator/(const CycloNumber& a, const CycloNumber& b) { return a * b.inv(); }
  friend CycloNumber operator-(CycloNumber a);

  friend bool operator==(const CycloNumber& a, const CycloNumber& b);

  /// sum coeffs[k] exp(2 pi i k / M) at the requested number of digits.
  [[nodiscard]] ComplexAP embed(unsigned digits) const;

  /// Readable form, e.g. "3 - 1/2*z12^5" where z12 = exp(2 pi i / 12).
  [[nodiscard]] std::string to_string() const;

 private:
  CycloNumber(u64 modulus, std::vector<mpz_class> num, mpz_class den);
  void normalize();

  u64 modulus_;
  std::vector<mpz_class> num_;
  mpz_class den_;
};

/// Cyclotomic polynomial Phi_M as dense integer coefficients, low degree first.
std::vector<i64> cyclotomic_polynomial(u64 modulus);

inline ComplexAP embed_complex(const CycloNumber& a, unsigned digits) { return a.embed(digits); }

}  // namespace rankin
