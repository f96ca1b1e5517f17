#pragma once

// Truncated q-expansions and Hecke eigenforms given by eigenvalue data.

#include "rankin/algebraic.hpp"
#include "rankin/characters.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rankin {

/// sum_{n < prec} a_n q^n with optional weight-character and tame level.
/// C is CycloNumber or AlgNumber.
template <class C>
class BasicQExpansion {
 public:
  BasicQExpansion() = default;
  explicit BasicQExpansion(std::vector<C> coeffs, std::optional<LocAlgChar> weight = std::nullopt,
                           std::optional<u64> level = std::nullopt)
      : coeffs_(std::move(coeffs)), weight_(std::move(weight)), level_(level) {}

  [[nodiscard]] std::size_t prec() const { return coeffs_.size(); }
  [[nodiscard]] const C& operator[](std::size_t n) const {
    if (n >= coeffs_.size()) {
      throw DomainError("coefficient of q^" + std::to_string(n) + " requested at precision " +
                        std::to_string(coeffs_.size()));
    }
    return coeffs_[n];
  }
  [[nodiscard]] const std::vector<C>& coeffs() const { return coeffs_; }
  [[nodiscard]] const std::optional<LocAlgChar>& weight() const { return weight_; }
  [[nodiscard]] const std::optional<u64>& level() const { return level_; }
  void set_weight(std::optional<LocAlgChar> w) { weight_ = std::move(w); }
  void set_level(std::optional<u64> n) { level_ = n; }

  /// Same precision and equal coefficients; metadata is not compared.
  [[nodiscard]] bool same_coefficients(const BasicQExpansion& o) const { return coeffs_ == o.coeffs_; }
  /// First index below min precision where the coefficients differ.
  [[nodiscard]] std::optional<std::size_t> first_mismatch(const BasicQExpansion& o) const {
    const std::size_t n = std::min(prec(), o.prec());
    for (std::size_t i = 0; i < n; ++i) {
      if (!(coeffs_[i] == o.coeffs_[i])) return i;
    }
    return std::nullopt;
  }
  [[nodiscard]] BasicQExpansion truncate(std::size_t prec) const {
    BasicQExpansion out = *this;
    if (prec < out.coeffs_.size()) out.coeffs_.resize(prec);
    return out;
  }

  BasicQExpansion& operator*=(const C& c) {
    for (auto& a : coeffs_) a *= c;
    return *this;
  }

  friend BasicQExpansion operator+(const BasicQExpansion& a, const BasicQExpansion& b) { return combine(a, b, 1); }
  friend BasicQExpansion operator-(const BasicQExpansion& a, const BasicQExpansion& b) { return combine(a, b, -1); }
  friend BasicQExpansion operator*(const BasicQExpansion& a, const BasicQExpansion& b) {
    const std::size_t n = std::min(a.prec(), b.prec());
    std::vector<C> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < n; ++j) {
        if (b.coeffs_[j].is_zero()) continue;
        out[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    std::optional<LocAlgChar> w;
    if (a.weight_ && b.weight_) w = *a.weight_ + *b.weight_;
    return BasicQExpansion(std::move(out), std::move(w), merged_level(a, b));
  }
  friend BasicQExpansion operator*(const C& c, BasicQExpansion a) { return a *= c; }
  friend bool operator==(const BasicQExpansion& a, const BasicQExpansion& b) { return a.coeffs_ == b.coeffs_; }

 private:
  static std::optional<u64> merged_level(const BasicQExpansion& a, const BasicQExpansion& b) {
    if (a.level_ && b.level_) return lcm(*a.level_, *b.level_);
    return std::nullopt;
  }
  static BasicQExpansion combine(const BasicQExpansion& a, const BasicQExpansion& b, int sign) {
    const std::size_t n = std::min(a.prec(), b.prec());
    std::vector<C> out(a.coeffs_.begin(), a.coeffs_.begin() + static_cast<std::ptrdiff_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (sign > 0) out[i] += b.coeffs_[i];
      else out[i] -= b.coeffs_[i];
    }
    std::optional<LocAlgChar> w;
    if (a.weight_ && b.weight_ && *a.weight_ == *b.weight_) w = a.weight_;
    return BasicQExpansion(std::move(out), std::move(w), merged_level(a, b));
  }

  std::vector<C> coeffs_;
  std::optional<LocAlgChar> weight_;
  std::optional<u64> level_;
};

using QExpansion = BasicQExpansion<CycloNumber>;
using HeckeExpansion = BasicQExpansion<AlgNumber>;

/// sum a_{pn} q^n at precision floor(prec/p).
template <class C>
BasicQExpansion<C> u_p(const BasicQExpansion<C>& f, u64 p) {
  if (f.prec() < p) {
    throw DomainError("U_" + std::to_string(p) + " needs precision >= p, have " + std::to_string(f.prec()));
  }
  std::vector<C> out(f.prec() / p);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = f[n * p];
  return BasicQExpansion<C>(std::move(out), f.weight(), f.level());
}

/// sum a_n q^{pn} at precision p * prec, or cap if smaller.
template <class C>
BasicQExpansion<C> v_p(const BasicQExpansion<C>& f, u64 p, std::optional<std::size_t> cap = std::nullopt) {
  std::size_t prec = f.prec() * p;
  if (cap && *cap < prec) prec = *cap;
  std::vector<C> out(prec);
  for (std::size_t n = 0; n * p < prec; ++n) out[n * p] = f[n];
  std::optional<u64> level;
  if (f.level()) level = *f.level() * p;
  return BasicQExpansion<C>(std::move(out), f.weight(), level);
}

/// Zero the coefficients at multiples of p.
template <class C>
BasicQExpansion<C> deplete(const BasicQExpansion<C>& f, u64 p) {
  std::vector<C> out = f.coeffs();
  for (std::size_t n = 0; n < out.size(); n += p) out[n] = C();
  return BasicQExpansion<C>(std::move(out), f.weight(), f.level());
}

/// a_n -> tau(n) a_n for p not dividing n, 0 otherwise; weight += 2 tau.
template <class C>
BasicQExpansion<C> theta_twist(const BasicQExpansion<C>& f, const LocAlgChar& tau) {
  const u64 p = tau.prime();
  std::vector<C> out(f.prec());
  for (std::size_t n = 1; n < out.size(); ++n) {
    if (n % p == 0 || f[n].is_zero()) continue;
    out[n] = C(tau(static_cast<i64>(n))) * f[n];
  }
  std::optional<LocAlgChar> w;
  if (f.weight()) w = *f.weight() + 2 * tau;
  return BasicQExpansion<C>(std::move(out), std::move(w), f.level());
}

/// Converts to cyclotomic coefficients; DomainError if some coefficient
/// involves an adjoined root.
QExpansion to_cyclotomic(const HeckeExpansion& f);
HeckeExpansion to_hecke(const QExpansion& f);

/// A normalised eigenform given by its Hecke eigenvalues. ap holds the
/// eigenvalues of the newform f (for l | N_f the bad-prime eigenvalues;
/// at p the eigenvalue of the level-N_f form when p does not divide the
/// level of f). When alpha is set the form is the U_p-eigenform with
/// eigenvalue alpha: the p-stabilisation of f in the crystalline case, and
/// f itself (alpha = a_p) when eps_p is non-trivial.
struct Eigenform {
  std::string label;
  int k = 0;
  u64 level = 1;                  // N_f, prime to p
  DirichletCharacter eps_N;       // modulo N_f
  DirichletCharacter eps_p;       // modulo a power of p
  u64 p = 0;                      // 0 when no prime is distinguished
  std::map<u64, CycloNumber> ap;  // prime -> eigenvalue
  std::optional<AlgNumber> alpha;
  std::optional<AlgNumber> beta;
  bool crystalline = true;
  std::optional<std::string> petersson_norm;  // <f, f> as a decimal string

  [[nodiscard]] LocAlgChar weight_character() const { return LocAlgChar(k, eps_p, p); }
  /// eps_N eps_p as a character modulo N_f p^s.
  [[nodiscard]] DirichletCharacter nebentypus() const { return eps_N * eps_p; }
  [[nodiscard]] bool is_stabilised() const { return alpha.has_value(); }
  /// Eigenvalue a_l of the newform; DataError if absent.
  [[nodiscard]] const CycloNumber& a(u64 l) const;
  /// l^(k-1) eps(l) for l prime to N_f p (eps_N only when l = p and the form
  /// is crystalline).
  [[nodiscard]] CycloNumber hecke_norm(u64 l) const;
  /// The newform underlying a stabilisation (alpha, beta cleared).
  [[nodiscard]] Eigenform newform() const;

  /// Checks the structural invariants (characters, Hecke polynomial at p).
  void validate() const;
};

/// q-expansion to precision prec (coefficients of q^0..q^{prec-1}).
HeckeExpansion expand(const Eigenform& f, std::size_t prec);

/// The p-stabilisation with U_p-eigenvalue alpha. strict rejects alpha = beta.
Eigenform stabilise(const Eigenform& f, const AlgNumber& alpha, bool strict = false);
/// Same, with alpha the "+" or "-" root of X^2 - a_p X + p^(k-1) eps_N(p).
Eigenform stabilise(const Eigenform& f, bool plus_branch, bool strict = false);

/// expand(f) - beta V_p expand(f), the q-expansion realisation of a
/// stabilisation. Defined for any beta.
HeckeExpansion stabilised_expansion(const Eigenform& f, const AlgNumber& beta, std::size_t prec);

/// a_l(f^c) = eps_N(l)^{-1} a_l(f) for l prime to N_f, including p.
Eigenform conjugate_form(const Eigenform& f);

}  // namespace rankin
