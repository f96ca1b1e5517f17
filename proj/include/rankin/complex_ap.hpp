#pragma once

// Arbitrary-precision complex numbers on top of MPFR.
//
// Every value carries the number of significant decimal digits it was
// computed at. Binary operations round both operands to the smaller of the
// two precisions first, so precision only ever decreases along a
// computation.

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include <string>

namespace rankin {

using BigFloat = boost::multiprecision::mpfr_float;

class ComplexAP {
 public:
  explicit ComplexAP(unsigned digits = 30);
  ComplexAP(const BigFloat& re, const BigFloat& im, unsigned digits);

  static ComplexAP from_rational(const mpq_class& q, unsigned digits);
  /// Parses a real decimal literal such as "1.0353e-6".
  static ComplexAP from_decimal(const std::string& text, unsigned digits);
  /// exp(2 pi i num / den).
  static ComplexAP root_of_unity(long long num, unsigned long long den, unsigned digits);
  static ComplexAP pi(unsigned digits);

  [[nodiscard]] unsigned digits() const { return digits_; }
  [[nodiscard]] const BigFloat& real() const { return re_; }
  [[nodiscard]] const BigFloat& imag() const { return im_; }

  [[nodiscard]] ComplexAP at_digits(unsigned digits) const;
  [[nodiscard]] ComplexAP conj() const;
  [[nodiscard]] BigFloat norm() const;  // |z|^2
  [[nodiscard]] BigFloat abs() const;
  [[nodiscard]] ComplexAP sqrt() const;  // principal branch
  [[nodiscard]] ComplexAP pow(long long e) const;
  [[nodiscard]] bool is_zero() const;

  ComplexAP& operator+=(const ComplexAP& o);
  ComplexAP& operator-=(const ComplexAP& o);
  ComplexAP& operator*=(const ComplexAP& o);
  ComplexAP& operator/=(const ComplexAP& o);

  friend ComplexAP operator+(ComplexAP a, const ComplexAP& b) { return a += b; }
  friend ComplexAP operator-(ComplexAP a, const ComplexAP& b) { return a -= b; }
  friend ComplexAP operator*(ComplexAP a, const ComplexAP& b) { return a *= b; }
  friend ComplexAP operator/(ComplexAP a, const ComplexAP& b) { return a /= b; }
  friend ComplexAP operator-(const ComplexAP& a);

  /// Decimal string in scientific notation with the value's own precision.
  [[nodiscard]] std::string real_string() const;
  [[nodiscard]] std::string imag_string() const;
  [[nodiscard]] std::string to_string() const;

 private:
  BigFloat re_;
  BigFloat im_;
  unsigned digits_;
};

/// |a - b| as a BigFloat at the smaller precision.
BigFloat distance(const ComplexAP& a, const ComplexAP& b);

/// 10^(-k) at the given precision.
BigFloat ten_to_minus(int k, unsigned digits);

std::string format_float(const BigFloat& x, unsigned digits);

}  // namespace rankin
