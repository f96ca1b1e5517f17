#include "doctest.h"

#include "oracles.hpp"
#include "rankin/interp.hpp"

using namespace rankin;

namespace {

const char* kDeltaNorm = "1.0353620568043209223478168122e-6";

bool close(const ComplexAP& a, const ComplexAP& b, int digits) {
  return distance(a, b) < ten_to_minus(digits, std::min(a.digits(), b.digits()));
}

// Independent archimedean constant from BigFloat primitives.
ComplexAP archimedean_oracle(long k1, long k2, long j, const BigFloat& norm, unsigned d) {
  BigFloat::default_precision(d + 10);
  BigFloat fact(1);
  for (long i = 2; i <= j - 1; ++i) fact *= i;
  for (long i = 2; i <= j - k2; ++i) fact *= i;
  const BigFloat pi = boost::multiprecision::atan(BigFloat(1)) * 4;
  const BigFloat mag = fact / (boost::multiprecision::pow(pi, 2 * j + 1 - k2) * boost::multiprecision::pow(BigFloat(2), 2 * j + k1 - k2) * norm);
  const long q = ((k1 - k2) % 4 + 4) % 4;
  const BigFloat re = q == 0 ? mag : (q == 2 ? BigFloat(-mag) : BigFloat(0));
  const BigFloat im = q == 1 ? mag : (q == 3 ? BigFloat(-mag) : BigFloat(0));
  return ComplexAP(re, im, d);
}

Eigenform delta_at(u64 p, bool branch = true) {
  auto f = stabilise(oracle::delta_form(400, p), branch);
  f.petersson_norm = kDeltaNorm;
  return f;
}

Eigenform f11_at(u64 p, bool branch = true) { return stabilise(oracle::f11_form(400, p), branch); }

// A weight-2 form of level 9 with an even character of order 3 at p = 3;
// only the eigenvalue at p matters here.
Eigenform noncrystalline_f2() {
  Eigenform g;
  g.label = "synthetic-9";
  g.k = 2;
  g.level = 1;
  g.p = 3;
  for (const auto& c : DirichletCharacter::primitive_of_conductor(9)) {
    if (c.parity() == 1 && c.order() == 3) g.eps_p = c;
  }
  g.crystalline = false;
  const CycloNumber a3 = CycloNumber(1) + CycloNumber::zeta(3);
  g.ap[3] = a3;
  g.alpha = AlgNumber(a3);
  g.beta = AlgNumber(CycloNumber(3) / a3);
  return g;
}

}  // namespace

TEST_CASE("single-form Euler factors") {
  CHECK(euler_E(AlgNumber(7), AlgNumber(0), 5) == AlgNumber(1));
  CHECK(euler_Estar(AlgNumber(7), AlgNumber(0)) == AlgNumber(1));
  CHECK(euler_Estar(AlgNumber(7), AlgNumber(7)).is_zero());
  CHECK_THROWS_AS(euler_E(AlgNumber(0), AlgNumber(1), 5), DomainError);
  // Delta at 5 against numerically extracted roots.
  const auto f = delta_at(5);
  const unsigned d = 50;
  BigFloat::default_precision(d + 10);
  const ComplexAP s = ComplexAP::from_rational(4830, d);
  const ComplexAP t = ComplexAP::from_rational(mpq_class(mpz_class("48828125")), d);
  const ComplexAP disc = (s * s - ComplexAP::from_rational(4, d) * t).sqrt();
  const ComplexAP a = (s + disc) / ComplexAP::from_rational(2, d);
  const ComplexAP b = (s - disc) / ComplexAP::from_rational(2, d);
  const ComplexAP one = ComplexAP::from_rational(1, d), five = ComplexAP::from_rational(5, d);
  const ComplexAP numeric = (one - b / (five * a)) * (one - b / a);
  CHECK(close((euler_E(f) * euler_Estar(f)).embed(d), numeric, 20));
}

TEST_CASE("paired Euler factor") {
  const u64 p = 3;
  const i64 j = 4;
  // alpha1 alpha2 = p^(j-1) with beta1 = beta2 = 0 kills the first bracket.
  const PData v{p, AlgNumber(9), AlgNumber(0), AlgNumber(3), AlgNumber(0)};
  CHECK(euler_E_pair(v, j, DirichletCharacter()).is_zero());
  const auto f1 = delta_at(p), f2 = f11_at(p);
  const PData d{p, *f1.alpha, *f1.beta, *f2.alpha, *f2.beta};
  const PData swapped{p, *f1.alpha, *f1.beta, *f2.beta, *f2.alpha};
  for (i64 jj = 2; jj <= 11; ++jj) CHECK(euler_E_pair(d, jj, DirichletCharacter()) == euler_E_pair(swapped, jj, DirichletCharacter()));
  // Quadratic chi mod 3, j = 10: G^2 3^18 / (alpha1^2 alpha2 beta2), with alpha2 beta2 = 3.
  const auto chi = DirichletCharacter::quadratic(3);
  const CycloNumber g = CycloNumber::zeta(3) - CycloNumber::zeta(3, 2);
  CHECK(g * g == CycloNumber(-3));
  mpz_class p18;
  mpz_ui_pow_ui(p18.get_mpz_t(), 3, 18);
  const AlgNumber expect = AlgNumber(CycloNumber(-3) * CycloNumber(p18)) / (*f1.alpha * *f1.alpha * AlgNumber(3));
  CHECK(euler_E_pair(f1, f2, 10, chi) == expect);
  CHECK(*f2.alpha * *f2.beta == AlgNumber(3));
}

TEST_CASE("crystalline and Gauss-block prefactors agree in the overlap") {
  const u64 p = 3;
  const auto f1 = delta_at(p), f2 = f11_at(p, false);
  const PData d{p, *f1.alpha, *f1.beta, *f2.alpha, *f2.beta};
  std::vector<DirichletCharacter> chars{DirichletCharacter::quadratic(3)};
  for (const auto& c : DirichletCharacter::primitive_of_conductor(9)) chars.push_back(c);
  for (const auto& chi : chars) {
    for (i64 j = 2; j <= 11; ++j) CHECK(euler_E_pair(d, j, chi) == gauss_block_twisted(d, j, chi, chi));
  }
}

TEST_CASE("Gauss block with r = 1 and r' = 2") {
  const u64 p = 3;
  const auto f1 = delta_at(p);
  const auto f2 = noncrystalline_f2();
  CHECK_NOTHROW(f2.validate());
  const auto chi = DirichletCharacter::quadratic(3);
  const auto chi_prime = (chi * f2.eps_p.inv()).primitive_part();
  CHECK(chi_prime.conductor() == 9);
  const i64 j = 5;
  const PData d{p, *f1.alpha, *f1.beta, *f2.alpha, *f2.beta};
  const AlgNumber pj1(CycloNumber(81));
  const AlgNumber expect = (pj1 / (*f1.alpha * *f2.alpha)) * AlgNumber(gauss_sum(chi)) *
                           (pj1 / (*f1.alpha * *f2.beta)).pow(2) * AlgNumber(gauss_sum(chi_prime));
  CHECK(gauss_block_twisted(d, j, chi, chi_prime) == expect);

  InterpInput in{f1, f2, j, chi, ComplexAP::from_rational(2, 40)};
  const auto pred = predicted_I_noncrystalline(in, 40);
  CHECK(pred.regime == "noncrystalline");
  CHECK(pred.gauss_block_exact == expect);
  InterpInput twice = in;
  twice.lvalue = ComplexAP::from_rational(4, 40);
  CHECK(close(predicted_I(twice, 40).total, pred.total * ComplexAP::from_rational(2, 40), 30));
  // chi = chi' would need eps_2p trivial.
  InterpInput bad = in;
  bad.chi = f2.eps_p;
  CHECK_THROWS_AS(predicted_I_noncrystalline(bad, 40), DomainError);
  InterpInput cryst = in;
  cryst.f2 = f11_at(p);
  CHECK_THROWS_AS(predicted_I_noncrystalline(cryst, 40), DomainError);
}

TEST_CASE("crystalline prediction") {
  const u64 p = 5;
  const unsigned d = 40;
  InterpInput in{delta_at(p), f11_at(p), 10, DirichletCharacter(), ComplexAP::from_rational(mpq_class(3, 7), d)};
  const auto pred = predicted_I_crystalline(in, d);
  // Product of the dissected factors is the total.
  CHECK(close(pred.euler_ratio * pred.gauss_block * pred.archimedean * pred.lvalue, pred.total, 35));
  // Hand assembly with an independent archimedean constant.
  const ComplexAP arch = archimedean_oracle(12, 2, 10, BigFloat(kDeltaNorm), d);
  CHECK(close(arch, pred.archimedean, 30));
  const auto& f1 = in.f1;
  const ComplexAP hand = euler_E_pair(in.f1, in.f2, 10, in.chi).embed(d) /
                         (euler_E(f1) * euler_Estar(f1)).embed(d) * arch * ComplexAP::from_rational(mpq_class(3, 7), d);
  CHECK(distance(hand, pred.total) < ten_to_minus(20, d) * pred.total.abs());
  // Linearity in the L-value and homogeneity in the Petersson norm.
  InterpInput zero = in;
  zero.lvalue = ComplexAP(d);
  CHECK(predicted_I_crystalline(zero, d).total.is_zero());
  InterpInput scaled = in;
  scaled.f1.petersson_norm = "3.1060861704129627670434504366e-6";  // 3 <f, f>
  const auto ps = predicted_I_crystalline(scaled, d);
  CHECK(distance(ps.total * ComplexAP::from_rational(3, d), pred.total) < ten_to_minus(25, d) * pred.total.abs());
}

TEST_CASE("prediction errors") {
  const u64 p = 5;
  InterpInput in{delta_at(p), f11_at(p), 10, DirichletCharacter(), ComplexAP::from_rational(1, 30)};
  InterpInput no_norm = in;
  no_norm.f1.petersson_norm.reset();
  CHECK_THROWS_AS(predicted_I_crystalline(no_norm, 30), DataError);
  InterpInput out_of_range = in;
  out_of_range.j = 12;
  CHECK_THROWS_AS(predicted_I_crystalline(out_of_range, 30), DomainError);
  // alpha = 1, beta = p makes E(f1) vanish.
  Eigenform g;
  g.label = "synthetic";
  g.k = 2;
  g.level = 1;
  g.p = p;
  g.ap[p] = CycloNumber(static_cast<long>(p) + 1);
  g = stabilise(g, AlgNumber(1));
  g.petersson_norm = "1";
  InterpInput irregular = in;
  irregular.f1 = g;
  irregular.f2 = f11_at(p);
  irregular.j = 1;
  irregular.f2.k = 1;
  CHECK_THROWS_AS(predicted_I_crystalline(irregular, 30), DomainError);
}

TEST_CASE("computed L-value feeds the prediction") {
  const u64 p = 5;
  InterpInput in{delta_at(p), f11_at(p), 10, DirichletCharacter(), std::nullopt, 399};
  const auto pred = predicted_I_crystalline(in, 30);
  CHECK(pred.lvalue_tail_bound.has_value());
  const RankinSeries s(in.f1, in.f2);
  CHECK(close(pred.lvalue, evaluate_L(s, 10, 30, 399).value, 28));
}
