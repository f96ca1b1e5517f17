#pragma once

// Dirichlet characters, Gauss sums and locally algebraic characters of Z_p^x.

#include "rankin/cyclo.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rankin {

/// The unit group (Z/MZ)^x with a fixed generating set: for each prime power
/// q || M one generator (two, -1 and 5, for 2^e with e >= 3), lifted by CRT
/// to be 1 modulo M/q. Instances are shared per modulus.
class DirichletGroup {
 public:
  static std::shared_ptr<const DirichletGroup> of(u64 modulus);

  [[nodiscard]] u64 modulus() const { return modulus_; }
  [[nodiscard]] const std::vector<u64>& generators() const { return gens_; }
  [[nodiscard]] const std::vector<u64>& orders() const { return orders_; }
  /// Least common multiple of the generator orders.
  [[nodiscard]] u64 exponent() const { return exponent_; }
  [[nodiscard]] u64 size() const { return size_; }
  /// Exponent vector of a over the generators, or nullopt if gcd(a, M) > 1.
  [[nodiscard]] std::optional<std::vector<u64>> dlog(i64 a) const;

  explicit DirichletGroup(u64 modulus);

 private:
  u64 modulus_;
  std::vector<u64> gens_;
  std::vector<u64> orders_;
  u64 exponent_ = 1;
  u64 size_ = 1;
  std::vector<u64> index_;  // residue -> mixed-radix index of its dlog, or kNonUnit
};

class DirichletCharacter {
 public:
  /// Trivial character modulo 1.
  DirichletCharacter() : DirichletCharacter(trivial(1)) {}

  static DirichletCharacter trivial(u64 modulus);
  /// Legendre symbol modulo an odd prime.
  static DirichletCharacter quadratic(u64 p);
  /// chi(g_i) = zeta_order^(exps[i]) on the canonical generators.
  static DirichletCharacter from_generator_values(u64 modulus, u64 order, std::vector<u64> exps);
  /// Images chi(g) = zeta_order^e on an arbitrary generating set; the
  /// assignment is checked for consistency over the whole group.
  static DirichletCharacter from_images(u64 modulus, u64 order, const std::vector<std::pair<u64, u64>>& images);
  /// Every character modulo M.
  static std::vector<DirichletCharacter> all(u64 modulus);
  /// Every primitive character of the given conductor.
  static std::vector<DirichletCharacter> primitive_of_conductor(u64 conductor);

  [[nodiscard]] u64 modulus() const { return group_->modulus(); }
  /// Values are order-th roots of unity; order is minimal.
  [[nodiscard]] u64 order() const { return order_; }
  [[nodiscard]] const std::vector<u64>& exponents() const { return exps_; }
  [[nodiscard]] const DirichletGroup& group() const { return *group_; }

  /// chi(a) = zeta_order^e, or nullopt when gcd(a, M) > 1.
  [[nodiscard]] std::optional<u64> exponent_at(i64 a) const;
  [[nodiscard]] CycloNumber operator()(i64 a) const;
  /// chi(-1) as +1 or -1.
  [[nodiscard]] int parity() const;

  [[nodiscard]] bool is_trivial() const { return order_ == 1; }
  [[nodiscard]] u64 conductor() const;
  [[nodiscard]] bool is_primitive() const { return conductor() == modulus(); }
  [[nodiscard]] DirichletCharacter primitive_part() const;
  /// The induced character modulo a multiple of the modulus.
  [[nodiscard]] DirichletCharacter lift(u64 target) const;

  [[nodiscard]] DirichletCharacter inv() const;
  [[nodiscard]] DirichletCharacter pow(i64 e) const;
  friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b);
  /// Same modulus and same values.
  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b);

  [[nodiscard]] std::string to_string() const;

 private:
  DirichletCharacter(std::shared_ptr<const DirichletGroup> group, u64 order, std::vector<u64> exps);

  std::shared_ptr<const DirichletGroup> group_;
  u64 order_;
  std::vector<u64> exps_;
};

/// sum over a in (Z/MZ)^x of chi(a) zeta_M^a, M the modulus of chi.
CycloNumber gauss_sum(const DirichletCharacter& chi);

/// The character x -> x^n chi(x) of Z_p^x, written additively "n + chi".
/// The finite part is stored primitive, so equality is equality of
/// characters of Z_p^x.
class LocAlgChar {
 public:
  LocAlgChar(i64 n, u64 p);
  LocAlgChar(i64 n, const DirichletCharacter& chi, u64 p);

  [[nodiscard]] i64 weight() const { return n_; }
  [[nodiscard]] const DirichletCharacter& finite_part() const { return chi_; }
  [[nodiscard]] u64 prime() const { return p_; }
  [[nodiscard]] bool is_crystalline() const { return chi_.is_trivial(); }

  /// u^n chi(u); throws DomainError when p | u.
  [[nodiscard]] CycloNumber operator()(i64 u) const;
  /// Value at -1, i.e. (-1)^n chi(-1).
  [[nodiscard]] int sign() const;

  LocAlgChar& operator+=(const LocAlgChar& o);
  LocAlgChar& operator-=(const LocAlgChar& o);
  friend LocAlgChar operator+(LocAlgChar a, const LocAlgChar& b) { return a += b; }
  friend LocAlgChar operator-(LocAlgChar a, const LocAlgChar& b) { return a -= b; }
  friend LocAlgChar operator+(LocAlgChar a, i64 n) { return a += LocAlgChar(n, a.p_); }
  friend LocAlgChar operator-(LocAlgChar a, i64 n) { return a -= LocAlgChar(n, a.p_); }
  friend LocAlgChar operator-(const LocAlgChar& a);
  friend LocAlgChar operator*(i64 k, const LocAlgChar& a);
  friend bool operator==(const LocAlgChar& a, const LocAlgChar& b);

  [[nodiscard]] std::string to_string() const;

 private:
  void check_same_prime(const LocAlgChar& o) const;

  i64 n_;
  DirichletCharacter chi_;
  u64 p_;
};

/// kappa(u) = u^n chi(u).
inline CycloNumber char_eval(const LocAlgChar& kappa, i64 u) { return kappa(u); }

/// w(kappa), the integer part of a locally algebraic character.
inline i64 w(const LocAlgChar& kappa) { return kappa.weight(); }

// ---------------------------------------------------------------------------
// Weight-space slices.

enum class Slice { spade, diamond };

struct SlicePoint {
  LocAlgChar kappa1;
  LocAlgChar kappa2;
  LocAlgChar sigma;
};

/// spade: sigma = kappa1 - 1 - tau; diamond: sigma = kappa2 + tau.
bool slice_membership(const SlicePoint& point, Slice flavor, const LocAlgChar& tau);

/// The second weight coordinate kappa1 - (1 + tau + tau') of the point of
/// W^spade(tau) and W^diamond(tau') above kappa1.
LocAlgChar slice_intersection(const LocAlgChar& tau, const LocAlgChar& tau_prime, const LocAlgChar& kappa1);

std::string to_string(Slice flavor);

}  // namespace rankin
