#include "doctest.h"

#include "rankin/cyclo.hpp"

#include <random>

using namespace rankin;

namespace {

// Phi_M by repeated exact division of x^M - 1 by Phi_d for d | M, d < M.
std::vector<i64> phi_by_division(u64 m) {
  std::vector<i64> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (u64 d : divisors(m)) {
    if (d == m) continue;
    const auto den = phi_by_division(d);
    std::vector<i64> q(num.size() - den.size() + 1, 0);
    for (std::size_t i = q.size(); i-- > 0;) {
      q[i] = num[i + den.size() - 1];
      for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= q[i] * den[j];
    }
    num = q;
  }
  return num;
}

CycloNumber random_element(std::mt19937_64& rng, u64 m) {
  std::uniform_int_distribution<int> dist(-5, 5);
  std::vector<mpq_class> c(m);
  for (auto& x : c) x = mpq_class(dist(rng), 1 + std::abs(dist(rng)));
  return CycloNumber::from_root_sum(m, c);
}

bool close(const ComplexAP& a, const ComplexAP& b, int digits) {
  return distance(a, b) < ten_to_minus(digits, a.digits());
}

}  // namespace

TEST_CASE("cyclotomic polynomials match exact division") {
  for (u64 m = 1; m <= 60; ++m) CHECK(cyclotomic_polynomial(m) == phi_by_division(m));
}

TEST_CASE("basic identities in cyclotomic fields") {
  CHECK(CycloNumber::zeta(4).pow(2) == CycloNumber(-1));
  CHECK(CycloNumber::zeta(3) + CycloNumber::zeta(3, 2) == CycloNumber(-1));
  const CycloNumber a = CycloNumber(1) + CycloNumber::zeta(5);
  CHECK(a.inv() * a == CycloNumber(1));
  CHECK(CycloNumber::zeta(12).pow(12).is_one());
  CHECK(CycloNumber::zeta(6) == CycloNumber::zeta(12, 2));
}

TEST_CASE("embeddings of roots of unity") {
  const unsigned d = 50;
  BigFloat::default_precision(60);
  CHECK(close(CycloNumber::zeta(4).embed(d), ComplexAP::root_of_unity(1, 4, d), 45));
  ComplexAP i = ComplexAP::root_of_unity(1, 4, d);
  CHECK(abs(i.real()) < ten_to_minus(45, d));
  CHECK(abs(i.imag() - 1) < ten_to_minus(45, d));
  const auto z3 = CycloNumber::zeta(3).embed(d);
  CHECK(abs(z3.real() + BigFloat(0.5)) < ten_to_minus(45, d));
  CHECK(abs(z3.imag() - sqrt(BigFloat(3)) / 2) < ten_to_minus(45, d));
  const auto r2 = (CycloNumber::zeta(8) + CycloNumber::zeta(8, -1)).embed(d);
  CHECK(abs(r2.real() - sqrt(BigFloat(2))) < ten_to_minus(45, d));
  CHECK(abs(r2.imag()) < ten_to_minus(45, d));
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(7);
  for (u64 m : {3, 4, 5, 7, 8, 9, 12, 15, 20}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_element(rng, m);
      const auto b = random_element(rng, m);
      const auto c = random_element(rng, m);
      CHECK((a + b) * c == a * c + b * c);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      if (!a.is_zero()) CHECK(a * a.inv() == CycloNumber(1));
      CHECK(a - a == CycloNumber());
      CHECK(close((a * b).embed(40), a.embed(40) * b.embed(40), 30));
      CHECK(close(a.conj().embed(40), a.embed(40).conj(), 30));
    }
  }
}

TEST_CASE("mixed moduli lift to the lcm and results are minimal") {
  const auto s = CycloNumber::zeta(3) * CycloNumber::zeta(4);
  CHECK(s == CycloNumber::zeta(12, 4 + 3));
  const auto r = CycloNumber::zeta(3).lift(15);
  CHECK(r.project(3) == CycloNumber::zeta(3));
  CHECK(r == CycloNumber::zeta(3));
  CHECK((CycloNumber::zeta(5) - CycloNumber::zeta(5) + CycloNumber(2)).is_rational());
}

TEST_CASE("galois action is a field automorphism") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_element(rng, 7);
    const auto b = random_element(rng, 7);
    for (i64 t : {1, 2, 3, 6}) {
      CHECK((a * b).galois(t) == a.galois(t) * b.galois(t));
      CHECK((a + b).galois(t) == a.galois(t) + b.galois(t));
    }
  }
}

TEST_CASE("modulus cap is enforced") {
  const u64 old = modulus_cap();
  set_modulus_cap(100);
  CHECK_THROWS_AS((void)CycloNumber::zeta(101), ArithmeticError);
  set_modulus_cap(old);
  CHECK_NOTHROW((void)CycloNumber::zeta(101));
}

TEST_CASE("inverse of zero is an error") {
  CHECK_THROWS_AS((void)CycloNumber().inv(), ArithmeticError);
}
