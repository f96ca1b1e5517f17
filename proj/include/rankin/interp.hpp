#pragma once

// Interpolation factors at p and the explicit predicted values
//
//   I(f1, f2, j + chi) = E(f1, f2, j + chi) / (E(f1) E*(f1)) * A(j) * L^imp(f1, f2, chi^-1, j)
//
// (crystalline f2), and the analogue with the Gauss-sum block
// (p^(j-1)/(a1 a2))^r G(chi) (p^(j-1)/(a1 b2))^r' G(chi') when f2 has a
// non-trivial character at p. Here
//
//   A(j) = (j-1)! (j-k2)! i^(k1-k2) / (pi^(2j+1-k2) 2^(2j+k1-k2) <f1, f1>).
//
// The Atkin-Lehner pseudo-eigenvalue of f1 enters the derivation twice, once
// conjugated in the normalisation of the linear functional and once in the
// unfolded integral, and cancels; it is not an input.

#include "rankin/lfunc.hpp"

#include <optional>
#include <string>

namespace rankin {

/// 1 - beta1 / (p alpha1).
AlgNumber euler_E(const AlgNumber& alpha1, const AlgNumber& beta1, u64 p);
AlgNumber euler_E(const Eigenform& f1);
/// 1 - beta1 / alpha1.
AlgNumber euler_Estar(const AlgNumber& alpha1, const AlgNumber& beta1);
AlgNumber euler_Estar(const Eigenform& f1);

/// Roots at p of the two forms.
struct PData {
  u64 p;
  AlgNumber alpha1, beta1, alpha2, beta2;
};

/// E(f1, f2, j + chi): the four brackets when chi is trivial, and
/// G(chi)^2 (p^(2j-2) / (alpha1^2 alpha2 beta2))^r when chi has conductor p^r > 1.
AlgNumber euler_E_pair(const PData& d, i64 j, const DirichletCharacter& chi);
AlgNumber euler_E_pair(const Eigenform& f1, const Eigenform& f2, i64 j, const DirichletCharacter& chi);

/// (p^(j-1)/(alpha1 alpha2))^r G(chi) (p^(j-1)/(alpha1 beta2))^r' G(chi'), r, r' the
/// conductor exponents of chi and chi'. No regime checks.
AlgNumber gauss_block_twisted(const PData& d, i64 j, const DirichletCharacter& chi, const DirichletCharacter& chi_prime);

/// Conductor exponent r of a character of p-power conductor.
int conductor_exponent(const DirichletCharacter& chi, u64 p);

/// (j-1)! (j-k2)! i^(k1-k2) / (pi^(2j+1-k2) 2^(2j+k1-k2) norm).
ComplexAP archimedean_factor(i64 k1, i64 k2, i64 j, const ComplexAP& petersson_norm, unsigned digits);

struct InterpInput {
  Eigenform f1;  // crystalline p-stabilisation
  Eigenform f2;  // crystalline p-stabilisation, or a form with eps_p non-trivial and alpha = a_p
  i64 j = 0;
  DirichletCharacter chi;               // conductor p^r
  std::optional<ComplexAP> lvalue;      // L^imp(f1, f2, chi^-1, j) if supplied
  std::size_t n_max = 100000;           // summation length when computing it
};

struct Prediction {
  std::string regime;  // "crystalline" or "noncrystalline"
  ComplexAP euler_ratio;
  ComplexAP archimedean;
  ComplexAP gauss_block;
  ComplexAP lvalue;
  ComplexAP total;
  std::optional<BigFloat> lvalue_tail_bound;  // set when the L-value was computed
  AlgNumber gauss_block_exact;
  AlgNumber euler_product_exact;  // E(f1) E*(f1)
};

Prediction predicted_I_crystalline(const InterpInput& in, unsigned digits);
Prediction predicted_I_noncrystalline(const InterpInput& in, unsigned digits);
/// Dispatches on whether f2 is crystalline.
Prediction predicted_I(const InterpInput& in, unsigned digits);

}  // namespace rankin
