#pragma once

// Cyclotomic numbers with adjoined roots of quadratic polynomials.
//
// Roots of Hecke polynomials X^2 - a_p X + p^(k-1) eps(p) are generally
// not in a cyclotomic field of manageable size (for Delta at p = 5 the
// splitting field is Q(sqrt(-429959))). An AlgNumber is an element of
//
//     K[X_1, ..., X_r] / (X_i^2 - s_i X_i + t_i),    K = Q(zeta_M),
//
// stored as 2^r cyclotomic components indexed by squarefree monomials.
// The algebra is a free K-module on those monomials, so the
// representation is canonical and an identity that holds in it holds for
// every choice of roots. Each adjoined root also fixes one complex value
// (the "+" branch (s + sqrt(s^2 - 4t))/2 with principal square root), used
// only by the numeric embedding.

#include "rankin/cyclo.hpp"

#include <memory>
#include <string>
#include <vector>

namespace rankin {

struct QuadraticRoot {
  u64 id;
  CycloNumber trace;  // s
  CycloNumber norm;   // t
};

using RootPtr = std::shared_ptr<const QuadraticRoot>;

class AlgNumber {
 public:
  AlgNumber() : AlgNumber(CycloNumber()) {}
  AlgNumber(const CycloNumber& c);  // NOLINT(google-explicit-constructor)
  AlgNumber(long v) : AlgNumber(CycloNumber(v)) {}  // NOLINT(google-explicit-constructor)
  AlgNumber(const mpq_class& v) : AlgNumber(CycloNumber(v)) {}  // NOLINT(google-explicit-constructor)

  /// A root of X^2 - trace X + norm. The polynomial is interned, so two calls
  /// with equal data refer to the same adjoined root; the "-" branch is
  /// returned as trace - X. When the discriminant is a rational square (or
  /// norm is 0) the roots are returned as exact cyclotomic numbers.
  static AlgNumber quadratic_root(const CycloNumber& trace, const CycloNumber& norm, bool plus_branch = true);

  [[nodiscard]] bool is_cyclotomic() const { return roots_.empty(); }
  /// Throws DomainError when the value involves an adjoined root.
  [[nodiscard]] const CycloNumber& as_cyclotomic() const;
  [[nodiscard]] const std::vector<RootPtr>& roots() const { return roots_; }
  [[nodiscard]] const std::vector<CycloNumber>& components() const { return comps_; }
  [[nodiscard]] bool is_zero() const;

  [[nodiscard]] AlgNumber inv() const;
  [[nodiscard]] AlgNumber pow(i64 e) const;

  AlgNumber& operator+=(const AlgNumber& o);
  AlgNumber& operator-=(const AlgNumber& o);
  AlgNumber& operator*=(const AlgNumber& o);
  AlgNumber& operator/=(const AlgNumber& o) { return *this *= o.inv(); }

  friend AlgNumber operator+(AlgNumber a, const AlgNumber& b) { return a += b; }
  friend AlgNumber operator-(AlgNumber a, const AlgNumber& b) { return a -= b; }
  friend AlgNumber operator*(const AlgNumber& a, const AlgNumber& b);
  friend AlgNumber operator/(const AlgNumber& a, const AlgNumber& b) { return a * b.inv(); }
  friend AlgNumber operator-(AlgNumber a);
  friend bool operator==(const AlgNumber& a, const AlgNumber& b);

  [[nodiscard]] ComplexAP embed(unsigned digits) const;
  [[nodiscard]] std::string to_string() const;

  /// Builds a value from explicit root list and components (size 2^r).
  static AlgNumber from_components(std::vector<RootPtr> roots, std::vector<CycloNumber> comps);

 private:
  AlgNumber with_roots(const std::vector<RootPtr>& roots) const;
  void normalize();

  std::vector<RootPtr> roots_;  // sorted by id
  std::vector<CycloNumber> comps_;
};

/// The "+" branch numeric value of an adjoined root.
ComplexAP root_value(const QuadraticRoot& root, unsigned digits);

}  // namespace rankin
