#include "doctest.h"

#include "oracles.hpp"
#include "rankin/lfunc.hpp"

using namespace rankin;

namespace {

const std::size_t kPrec = 1200;

const Eigenform& delta() {
  static const Eigenform f = oracle::delta_form(kPrec, 5);
  return f;
}

const Eigenform& f11() {
  static const Eigenform f = oracle::f11_form(kPrec, 3);
  return f;
}

// Roots of X^2 - a X + n, multiplied out numerically as four linear factors.
std::vector<ComplexAP> numeric_factor(const CycloNumber& a1, const CycloNumber& n1, const CycloNumber& a2,
                                      const CycloNumber& n2, unsigned d) {
  auto roots = [d](const CycloNumber& a, const CycloNumber& n) {
    const auto ae = a.embed(d);
    const auto disc = (ae * ae - ComplexAP::from_rational(4, d) * n.embed(d)).sqrt();
    const auto two = ComplexAP::from_rational(2, d);
    return std::pair{(ae + disc) / two, (ae - disc) / two};
  };
  const auto [x1, y1] = roots(a1, n1);
  const auto [x2, y2] = roots(a2, n2);
  std::vector<ComplexAP> poly{ComplexAP::from_rational(1, d)};
  for (const auto& g : {x1 * x2, x1 * y2, y1 * x2, y1 * y2}) {
    std::vector<ComplexAP> next(poly.size() + 1, ComplexAP(d));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] -= poly[i] * g;
    }
    poly = next;
  }
  return poly;
}

bool close(const ComplexAP& a, const ComplexAP& b, int digits) {
  return distance(a, b) < ten_to_minus(digits, std::min(a.digits(), b.digits()));
}

Eigenform weight1_synthetic() {
  // Eigenvalue data with a_l = 0 at l = 5, level 4, odd character.
  Eigenform g;
  g.label = "synthetic";
  g.k = 1;
  g.level = 4;
  g.eps_N = DirichletCharacter::from_generator_values(4, 2, {1});
  for (u64 l : primes_up_to(60)) g.ap[l] = CycloNumber(0);
  return g;
}

}  // namespace

TEST_CASE("local factor symmetric expansion") {
  const auto P = local_factor(delta(), f11(), 2);
  CHECK(P[1] == -(delta().a(2) * f11().a(2)));
  CHECK(P[1] == CycloNumber(-48));
  for (const auto& [f, g] : {std::pair{delta(), f11()}, std::pair{delta(), delta()}, std::pair{f11(), f11()}}) {
    for (u64 l : {2, 3, 7}) {
      const auto Pl = local_factor(f, g, l);
      const auto num = numeric_factor(f.a(l), f.hecke_norm(l), g.a(l), g.hecke_norm(l), 60);
      for (std::size_t i = 0; i < 5; ++i) CHECK(close(Pl[i].embed(60), num[i], 20));
    }
  }
  CHECK_THROWS_AS(local_factor(delta(), f11(), 11), DomainError);
}

TEST_CASE("local factor when both eigenvalues vanish") {
  const auto g = weight1_synthetic();
  const u64 l = 5;
  const auto P = local_factor(g, g, l);
  const CycloNumber n = g.hecke_norm(l);
  CHECK(n == CycloNumber(1));
  // alpha = -beta for both forms: P = (1 - n1 n2 X^2)^2.
  const CycloNumber n12 = n * n;
  CHECK(P[0] == CycloNumber(1));
  CHECK(P[1].is_zero());
  CHECK(P[2] == CycloNumber(-2) * n12);
  CHECK(P[3].is_zero());
  CHECK(P[4] == n12 * n12);
  const auto num = numeric_factor(CycloNumber(), n, CycloNumber(), n, 40);
  for (std::size_t i = 0; i < 5; ++i) CHECK(close(P[i].embed(40), num[i], 20));
}

TEST_CASE("Dirichlet table basics") {
  const RankinSeries s(delta(), f11());
  const auto c = dirichlet_coefficients(s, 200);
  CHECK(c[1] == CycloNumber(1));
  for (u64 l : primes_up_to(200)) CHECK(c[l] == delta().a(l) * f11().a(l));
  const auto chi = DirichletCharacter::quadratic(3);
  const RankinSeries t(delta(), f11(), chi);
  const auto ct = dirichlet_coefficients(t, 200);
  for (u64 l : primes_up_to(200)) CHECK(ct[l] == delta().a(l) * f11().a(l) * chi(static_cast<i64>(l)));
  CHECK(s.bad_primes() == std::vector<u64>{11});
  CHECK(t.bad_primes() == std::vector<u64>{3, 11});
}

TEST_CASE("Euler product and Dirichlet convolution agree") {
  std::vector<DirichletCharacter> chars{DirichletCharacter(), DirichletCharacter::quadratic(3)};
  for (const auto& c : DirichletCharacter::primitive_of_conductor(9)) chars.push_back(c);
  for (const auto& chi : chars) {
    for (const auto& [f, g] : {std::pair{f11(), f11()}, std::pair{delta(), f11()}}) {
      const RankinSeries s(f, g, chi);
      const std::size_t n_max = 1000;
      const auto table = dirichlet_coefficients(s, n_max);
      CHECK(table == euler_coefficients(s, n_max));
      // Prime powers against 1/P_l at X = chi(l) l^-s.
      for (u64 l : primes_up_to(31)) {
        if (s.is_bad(l)) continue;
        const auto inv = inverse_power_series(local_factor(s, l), 12);
        u64 q = 1;
        for (std::size_t r = 1; q * l <= n_max; ++r) {
          q *= l;
          CHECK(table[q] == inv[r] * chi(static_cast<i64>(l)).pow(static_cast<i64>(r)));
        }
      }
    }
  }
}

TEST_CASE("twisted table from the untwisted one") {
  const auto chi = DirichletCharacter::primitive_of_conductor(9).back();
  const RankinSeries plain(delta(), f11()), twisted(delta(), f11(), chi);
  const auto a = main_coefficients(plain, 500);
  const auto b = main_coefficients(twisted, 500);
  for (std::size_t n = 1; n <= 500; ++n) CHECK(b[n] == a[n] * chi(static_cast<i64>(n)));
  // Auxiliary factor now uses eps1 eps2 chi^2 and omits m divisible by 3.
  const auto c = dirichlet_coefficients(twisted, 500);
  std::vector<CycloNumber> expect(501);
  for (u64 m = 1; m * m <= 500; ++m) {
    if (m % 3 == 0 || m % 11 == 0) continue;
    for (u64 k = 1; k * m * m <= 500; ++k) {
      mpz_class mw;
      mpz_ui_pow_ui(mw.get_mpz_t(), m, 12);
      expect[k * m * m] += chi.pow(2)(static_cast<i64>(m)) * CycloNumber(mw) * b[k];
    }
  }
  for (std::size_t n = 1; n <= 500; ++n) CHECK(c[n] == expect[n]);
}

TEST_CASE("symmetry in the two forms") {
  const RankinSeries a(delta(), f11()), b(f11(), delta());
  CHECK(main_coefficients(a, 300) == main_coefficients(b, 300));
  CHECK(dirichlet_coefficients(a, 300) == dirichlet_coefficients(b, 300));
  const auto la = evaluate_L(a, 10, 30, 1000);
  const auto lb = evaluate_L(b, 10, 30, 1000);
  CHECK(close(la.value, lb.value, 28));
}

TEST_CASE("evaluation") {
  std::vector<CycloNumber> unit(50);
  unit[1] = CycloNumber(1);
  CHECK(close(dirichlet_sum(unit, 10, 30), ComplexAP::from_rational(1, 30), 29));
  const RankinSeries s(delta(), f11());
  CHECK_THROWS_AS(evaluate_L(s, 6, 25, 1000), DomainError);
  CHECK_THROWS_AS(evaluate_L(s, 8, 25, 1000), DomainError);
  const auto l25 = evaluate_L(s, 10, 25, 1000);
  const auto l50 = evaluate_L(s, 10, 50, 1000);
  CHECK(close(l25.value, l50.value.at_digits(25), 20));
  // Two routes agree within the sum of their certified tails.
  const auto le = evaluate_L(s, 10, 50, 1000, LRoute::euler);
  CHECK(distance(le.value, l50.value) <= le.tail_bound + l50.tail_bound);
  // Tails shrink as n_max grows and the value stays inside the bound.
  const auto big = evaluate_L(s, 10, 50, kPrec - 1);
  CHECK(big.tail_bound < l50.tail_bound);
  CHECK(distance(big.value, l50.value) <= l50.tail_bound + big.tail_bound);
  CHECK_THROWS_AS(evaluate_L(s, 10, 25, 100, LRoute::factored, BigFloat("1e-20")), DomainError);
  CHECK_FALSE(l50.pole_warning);
  const RankinSeries self(f11(), f11());
  CHECK(self.pole_condition());
}
