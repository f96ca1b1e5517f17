#pragma once

// The imprimitive Rankin-Selberg L-function
//
//   L^imp(f1, f2, chi, s) = L_(M)(psi, 2s + 2 - k1 - k2) sum_n a_n(f1) a_n(f2) chi(n) n^-s,
//
// psi = eps1 eps2 chi^2, M the product of the primes dividing N1 N2 N_chi.
// Since L_(M)(psi, 2s + 2 - k1 - k2) = sum_{(m, M) = 1} psi(m) m^(k1+k2-2) (m^2)^-s,
// L^imp is an ordinary Dirichlet series whose n-th coefficient is
//
//   c_n = sum_{m^2 k = n, (m, M) = 1} psi(m) m^(k1+k2-2) a_k(f1) a_k(f2) chi(k).
//
// Numerical evaluation is by direct summation in the region of absolute
// convergence s > (k1+k2)/2 + 1, with tail bounds from Deligne's bound
// |a_n(f)| <= d(n) n^((k-1)/2):
//   - d(n)^2 <= 3n gives |a_n(f1) a_n(f2)| <= 3 n^(w/2 + 1), w = k1 + k2 - 2;
//   - |c_n| <= d_4(n) n^(w/2) and d_4(n) <= (10/3) n.

#include "rankin/qseries.hpp"

#include <optional>
#include <vector>

namespace rankin {

class RankinSeries {
 public:
  /// Uses the newforms underlying f1, f2 and the primitive character
  /// attached to chi.
  RankinSeries(const Eigenform& f1, const Eigenform& f2, const DirichletCharacter& chi = DirichletCharacter());

  [[nodiscard]] const Eigenform& f1() const { return f1_; }
  [[nodiscard]] const Eigenform& f2() const { return f2_; }
  [[nodiscard]] const DirichletCharacter& chi() const { return chi_; }
  /// eps1 eps2 chi^2.
  [[nodiscard]] const DirichletCharacter& psi() const { return psi_; }
  /// k1 + k2 - 2.
  [[nodiscard]] i64 w() const { return f1_.k + f2_.k - 2; }
  /// Primes dividing N1 N2 N_chi (levels including p-power parts).
  [[nodiscard]] const std::vector<u64>& bad_primes() const { return bad_; }
  [[nodiscard]] bool is_bad(u64 l) const;
  /// Heuristic check of f2 = f1 (x) eps1^-1 chi^-1 on small good primes
  /// (the case with a pole at s = k1).
  [[nodiscard]] bool pole_condition() const;

 private:
  Eigenform f1_, f2_;
  DirichletCharacter chi_, psi_;
  std::vector<u64> bad_;
};

/// Coefficients [1, P1, P2, P3, P4] of
/// P_l(X) = (1 - a1 a2 X)(1 - a1 b2 X)(1 - b1 a2 X)(1 - b1 b2 X)
/// in terms of a_l(f_i) and n_i = l^(k_i - 1) eps_i(l).
std::vector<CycloNumber> local_factor(const Eigenform& f1, const Eigenform& f2, u64 l);
/// Same, rejecting primes bad for the series.
std::vector<CycloNumber> local_factor(const RankinSeries& series, u64 l);

/// First `terms` coefficients of 1/P for a polynomial with P(0) = 1.
std::vector<CycloNumber> inverse_power_series(const std::vector<CycloNumber>& poly, std::size_t terms);

/// a_n(f1) a_n(f2) chi(n) for 0 <= n <= n_max (index 0 is 0).
std::vector<CycloNumber> main_coefficients(const RankinSeries& series, std::size_t n_max);
/// c_n for 0 <= n <= n_max by Dirichlet convolution with the auxiliary factor.
std::vector<CycloNumber> dirichlet_coefficients(const RankinSeries& series, std::size_t n_max);
/// c_n assembled multiplicatively: 1/P_l(chi(l) X) at good primes, the
/// sequence a_{l^r}(f1) a_{l^r}(f2) chi(l^r) at bad primes.
std::vector<CycloNumber> euler_coefficients(const RankinSeries& series, std::size_t n_max);

struct LEvaluation {
  ComplexAP value;
  BigFloat tail_bound;  // |L - value| <= tail_bound (summation tails only)
  std::size_t n_max = 0;
  bool pole_warning = false;
};

enum class LRoute {
  factored,  // L_(M)(psi, .) and the main sum evaluated separately
  euler,     // direct sum of euler_coefficients
};

/// L^imp(f1, f2, chi, s) for integer s > (k1 + k2)/2 + 1. When tolerance is
/// given and the certified tail exceeds it, throws DomainError.
LEvaluation evaluate_L(const RankinSeries& series, i64 s, unsigned digits, std::size_t n_max,
                       LRoute route = LRoute::factored, std::optional<BigFloat> tolerance = std::nullopt);

/// sum_{n >= 1} table[n] n^-s over the given finite table.
ComplexAP dirichlet_sum(const std::vector<CycloNumber>& table, i64 s, unsigned digits);

}  // namespace rankin
