#include "rankin/lfunc.hpp"

#include <map>

namespace rankin {
namespace {

DirichletCharacter char_product(const DirichletCharacter& a, const DirichletCharacter& b) {
  return a * b;  // lifts to the lcm of the moduli
}

std::vector<u64> prime_support(u64 n) {
  std::vector<u64> out;
  for (auto [q, e] : factorize(n)) out.push_back(q);
  return out;
}

// Full level of a newform, including the p-power part of its nebentypus.
u64 full_level(const Eigenform& f) { return f.level * f.eps_p.modulus(); }

mpz_class pow_ui(u64 b, u64 e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), b, e);
  return out;
}

// a_{l^r}(f) for r = 0..R straight from the eigenvalue at l.
std::vector<CycloNumber> prime_power_coefficients(const Eigenform& f, u64 l, std::size_t R) {
  std::vector<CycloNumber> out(R + 1);
  out[0] = CycloNumber(1);
  if (R == 0) return out;
  const CycloNumber& al = f.a(l);
  out[1] = al;
  const bool bad = f.level % l == 0 || (l == f.p && !f.eps_p.is_trivial());
  const CycloNumber norm = bad ? CycloNumber() : f.hecke_norm(l);
  for (std::size_t r = 2; r <= R; ++r) out[r] = al * out[r - 1] - norm * out[r - 2];
  return out;
}

// Embeds cyclotomic numbers with cached root-of-unity values.
class Embedder {
 public:
  explicit Embedder(unsigned digits) : digits_(digits) {}

  ComplexAP operator()(const CycloNumber& c) {
    if (c.is_rational()) return ComplexAP::from_rational(c.rational_value(), digits_);
    const auto& roots = roots_for(c.modulus());
    ComplexAP acc(digits_);
    const auto& num = c.numerators();
    for (std::size_t i = 0; i < num.size(); ++i) {
      if (num[i] != 0) acc += ComplexAP::from_rational(mpq_class(num[i]), digits_) * roots[i];
    }
    return acc / ComplexAP::from_rational(mpq_class(c.denominator()), digits_);
  }

 private:
  const std::vector<ComplexAP>& roots_for(u64 m) {
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
    std::vector<ComplexAP> roots;
    for (u64 i = 0; i < m; ++i) roots.push_back(ComplexAP::root_of_unity(static_cast<long long>(i), m, digits_));
    return cache_.emplace(m, std::move(roots)).first->second;
  }

  unsigned digits_;
  std::map<u64, std::vector<ComplexAP>> cache_;
};

// sum_{1 <= n < table.size()} table[n] n^-s at the given working precision.
ComplexAP sum_table(const std::vector<CycloNumber>& table, i64 s, unsigned work) {
  Embedder embed(work);
  ComplexAP acc(work);
  for (std::size_t n = 1; n < table.size(); ++n) {
    const auto& c = table[n];
    if (c.is_zero()) continue;
    mpq_class scale = s >= 0 ? mpq_class(mpz_class(1), pow_ui(n, static_cast<u64>(s)))
                             : mpq_class(pow_ui(n, static_cast<u64>(-s)));
    scale.canonicalize();
    if (c.is_rational()) {
      mpq_class v = c.rational_value() * scale;
      acc += ComplexAP::from_rational(v, work);
    } else {
      acc += embed(c) * ComplexAP::from_rational(scale, work);
    }
  }
  return acc;
}

// sum_{n > X} n^-a <= X^(1-a) / (a - 1), a > 1 given as a rational.
BigFloat power_tail(std::size_t X, const mpq_class& a, unsigned work) {
  const BigFloat ab = BigFloat(a.get_num().get_si(), work) / BigFloat(a.get_den().get_si(), work);
  return boost::multiprecision::pow(BigFloat(X, work), BigFloat(1, work) - ab) / (ab - BigFloat(1, work));
}

}  // namespace

// ---------------------------------------------------------------------------
// RankinSeries

RankinSeries::RankinSeries(const Eigenform& f1, const Eigenform& f2, const DirichletCharacter& chi)
    : f1_(f1.newform()), f2_(f2.newform()), chi_(chi.primitive_part()) {
  f1_.validate();
  f2_.validate();
  psi_ = char_product(char_product(f1_.nebentypus(), f2_.nebentypus()), chi_.pow(2));
  const u64 m = lcm(lcm(full_level(f1_), full_level(f2_)), chi_.modulus());
  bad_ = prime_support(m);
}

bool RankinSeries::is_bad(u64 l) const { return std::find(bad_.begin(), bad_.end(), l) != bad_.end(); }

bool RankinSeries::pole_condition() const {
  if (f1_.k != f2_.k) return false;
  bool compared = false;
  for (u64 l : primes_up_to(50)) {
    if (is_bad(l) || !f1_.ap.count(l) || !f2_.ap.count(l)) continue;
    const CycloNumber twisted = f1_.a(l) * f1_.nebentypus()(static_cast<i64>(l)).inv() *
                                chi_(static_cast<i64>(l)).inv();
    if (!(twisted == f2_.a(l))) return false;
    compared = true;
  }
  return compared;
}

// ---------------------------------------------------------------------------
// Local factors

std::vector<CycloNumber> local_factor(const Eigenform& f1, const Eigenform& f2, u64 l) {
  if (!is_prime(l)) throw DomainError(std::to_string(l) + " is not prime");
  for (const Eigenform* f : {&f1, &f2}) {
    if (f->level % l == 0 || (l == f->p && !f->eps_p.is_trivial())) {
      throw DomainError("l = " + std::to_string(l) + " divides the level of " + f->label +
                        "; bad primes enter only through the imprimitive Dirichlet coefficients");
    }
  }
  const CycloNumber& a = f1.a(l);
  const CycloNumber& b = f2.a(l);
  const CycloNumber n1 = f1.hecke_norm(l);
  const CycloNumber n2 = f2.hecke_norm(l);
  const CycloNumber ab = a * b;
  const CycloNumber n12 = n1 * n2;
  return {CycloNumber(1), -ab, n2 * a * a + n1 * b * b - CycloNumber(2) * n12, -(n12 * ab), n12 * n12};
}

std::vector<CycloNumber> local_factor(const RankinSeries& series, u64 l) {
  if (series.is_bad(l)) {
    throw DomainError("l = " + std::to_string(l) +
                      " divides N1 N2 N_chi; bad primes enter only through the imprimitive Dirichlet coefficients");
  }
  return local_factor(series.f1(), series.f2(), l);
}

std::vector<CycloNumber> inverse_power_series(const std::vector<CycloNumber>& poly, std::size_t terms) {
  if (poly.empty() || !poly[0].is_one()) throw DomainError("inverse_power_series needs constant term 1");
  std::vector<CycloNumber> out(terms);
  for (std::size_t r = 0; r < terms; ++r) {
    CycloNumber v = r == 0 ? CycloNumber(1) : CycloNumber();
    for (std::size_t i = 1; i < poly.size() && i <= r; ++i) {
      if (!poly[i].is_zero()) v -= poly[i] * out[r - i];
    }
    out[r] = std::move(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coefficient tables

std::vector<CycloNumber> main_coefficients(const RankinSeries& series, std::size_t n_max) {
  const auto e1 = expand(series.f1(), n_max + 1);
  const auto e2 = expand(series.f2(), n_max + 1);
  std::vector<CycloNumber> out(n_max + 1);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto chi = series.chi()(static_cast<i64>(n));
    if (chi.is_zero() || e1[n].is_zero() || e2[n].is_zero()) continue;
    out[n] = e1[n].as_cyclotomic() * e2[n].as_cyclotomic() * chi;
  }
  return out;
}

std::vector<CycloNumber> dirichlet_coefficients(const RankinSeries& series, std::size_t n_max) {
  const auto main = main_coefficients(series, n_max);
  std::vector<CycloNumber> out(n_max + 1);
  for (u64 m = 1; m * m <= n_max; ++m) {
    bool coprime = true;
    for (u64 q : series.bad_primes()) coprime = coprime && m % q != 0;
    if (!coprime) continue;
    CycloNumber aux = series.psi()(static_cast<i64>(m));
    aux *= mpq_class(pow_ui(m, static_cast<u64>(series.w())));
    const u64 m2 = m * m;
    for (u64 k = 1; k * m2 <= n_max; ++k) {
      if (!main[k].is_zero()) out[k * m2] += m == 1 ? main[k] : aux * main[k];
    }
  }
  return out;
}

std::vector<CycloNumber> euler_coefficients(const RankinSeries& series, std::size_t n_max) {
  std::vector<CycloNumber> c(n_max + 1);
  if (n_max >= 1) c[1] = CycloNumber(1);
  for (u64 l : primes_up_to(n_max)) {
    std::size_t R = 0;
    for (u64 q = l; q <= n_max; q *= l) {
      ++R;
      if (q > n_max / l) break;
    }
    std::vector<CycloNumber> local;
    const CycloNumber chi_l = series.chi()(static_cast<i64>(l));
    if (series.is_bad(l)) {
      const auto a1 = prime_power_coefficients(series.f1(), l, R);
      const auto a2 = prime_power_coefficients(series.f2(), l, R);
      local.resize(R + 1);
      for (std::size_t r = 0; r <= R; ++r) local[r] = a1[r] * a2[r] * chi_l.pow(static_cast<i64>(r));
    } else {
      local = inverse_power_series(local_factor(series, l), R + 1);
      CycloNumber x(1);
      for (std::size_t r = 1; r <= R; ++r) {
        x *= chi_l;
        local[r] *= x;
      }
    }
    u64 q = 1;
    for (std::size_t r = 1; r <= R; ++r) {
      q *= l;
      c[q] = local[r];
    }
  }
  const auto spf = smallest_prime_factors(n_max + 1);
  for (u64 n = 2; n <= n_max; ++n) {
    const u64 l = spf[n];
    u64 m = n, q = 1;
    while (m % l == 0) {
      m /= l;
      q *= l;
    }
    if (m != 1) c[n] = c[q] * c[m];
  }
  return c;
}

// ---------------------------------------------------------------------------
// Evaluation

ComplexAP dirichlet_sum(const std::vector<CycloNumber>& table, i64 s, unsigned digits) {
  return sum_table(table, s, digits + 10).at_digits(digits);
}

LEvaluation evaluate_L(const RankinSeries& series, i64 s, unsigned digits, std::size_t n_max, LRoute route,
                       std::optional<BigFloat> tolerance) {
  const i64 w = series.w();
  // s > w/2 + 2, i.e. 2s > w + 4.
  if (2 * s <= w + 4) {
    throw DomainError("s = " + std::to_string(s) + " is outside the region of absolute convergence s > (k1+k2)/2 + 1 = " +
                      mpq_class(w + 4, 2).get_str() + "; analytic continuation not implemented");
  }
  if (n_max < 1) throw DomainError("n_max must be positive");
  const unsigned work = digits + 10;
  // Majorant exponent a = s - w/2 - 1 for the sums of n^(w/2 + 1 - s).
  const mpq_class a(2 * s - w - 2, 2);
  LEvaluation out{ComplexAP(digits), BigFloat(0, digits), n_max, series.pole_condition()};
  if (route == LRoute::euler) {
    const auto table = euler_coefficients(series, n_max);
    out.value = sum_table(table, s, work).at_digits(digits);
    out.tail_bound = BigFloat(BigFloat(10, work) / 3 * power_tail(n_max, a, work), digits);
  } else {
    const auto main = main_coefficients(series, n_max);
    const ComplexAP S = sum_table(main, s, work);
    std::vector<CycloNumber> aux(n_max + 1);
    for (u64 m = 1; m <= n_max; ++m) {
      bool coprime = true;
      for (u64 q : series.bad_primes()) coprime = coprime && m % q != 0;
      if (coprime) aux[m] = series.psi()(static_cast<i64>(m)) * CycloNumber(pow_ui(m, static_cast<u64>(w)));
    }
    // L_(M)(psi, 2s - w) = sum aux[m] m^(-2s).
    const ComplexAP A = sum_table(aux, 2 * s, work);
    const BigFloat tS = 3 * power_tail(n_max, a, work);
    const BigFloat tA = power_tail(n_max, mpq_class(2 * s - w), work);
    out.value = (A * S).at_digits(digits);
    out.tail_bound = BigFloat(A.abs() * tS + tA * (S.abs() + tS), digits);
  }
  if (tolerance && out.tail_bound > *tolerance) {
    throw DomainError("certified tail bound " + format_float(out.tail_bound, 6) + " exceeds the requested accuracy " +
                      format_float(*tolerance, 6) + "; increase n_max");
  }
  return out;
}

}  // namespace rankin
