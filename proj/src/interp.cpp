#include "rankin/interp.hpp"

namespace rankin {
namespace {

AlgNumber power_of(u64 p, i64 e) {
  mpz_class z;
  mpz_ui_pow_ui(z.get_mpz_t(), p, static_cast<unsigned long>(e < 0 ? -e : e));
  mpq_class q = e < 0 ? mpq_class(mpz_class(1), z) : mpq_class(z);
  q.canonicalize();
  return AlgNumber(q);
}

const AlgNumber& require_alpha(const Eigenform& f) {
  if (!f.alpha || !f.beta) throw DomainError(f.label + ": U_p-eigenvalue data (alpha, beta) missing");
  return *f.alpha;
}

PData pdata(const Eigenform& f1, const Eigenform& f2) {
  if (f1.p == 0 || f1.p != f2.p) throw DomainError("the two forms must be stabilised at the same prime");
  require_alpha(f1);
  require_alpha(f2);
  return {f1.p, *f1.alpha, *f1.beta, *f2.alpha, *f2.beta};
}

void check_range(const InterpInput& in) {
  if (!(1 <= in.f2.k && in.f2.k <= in.j && in.j <= in.f1.k - 1)) {
    throw DomainError("j = " + std::to_string(in.j) + " is outside the critical range " + std::to_string(in.f2.k) +
                      " <= j <= " + std::to_string(in.f1.k - 1));
  }
  if (!in.f1.crystalline) throw DomainError(in.f1.label + ": f1 must be crystalline");
}

ComplexAP petersson(const Eigenform& f1, unsigned digits) {
  if (!f1.petersson_norm) throw DataError(f1.label + ": Petersson norm not available");
  return ComplexAP::from_decimal(*f1.petersson_norm, digits);
}

Prediction assemble(const InterpInput& in, const AlgNumber& block, const char* regime, unsigned digits) {
  const unsigned work = digits + 10;
  const AlgNumber ee = euler_E(in.f1) * euler_Estar(in.f1);
  if (ee.is_zero()) throw DomainError("non-regular stabilisation: E(f1) E*(f1) = 0");
  Prediction out{regime,
                 ComplexAP(digits),
                 ComplexAP(digits),
                 ComplexAP(digits),
                 ComplexAP(digits),
                 ComplexAP(digits),
                 std::nullopt,
                 block,
                 ee};
  out.euler_ratio = (ComplexAP::from_rational(1, work) / ee.embed(work)).at_digits(digits);
  out.archimedean = archimedean_factor(in.f1.k, in.f2.k, in.j, petersson(in.f1, work), digits);
  out.gauss_block = block.embed(digits);
  if (in.lvalue) {
    out.lvalue = in.lvalue->at_digits(digits);
  } else {
    const RankinSeries series(in.f1, in.f2, in.chi.inv());
    const auto l = evaluate_L(series, in.j, digits, in.n_max);
    out.lvalue = l.value;
    out.lvalue_tail_bound = l.tail_bound;
  }
  out.total = out.euler_ratio * out.gauss_block * out.archimedean * out.lvalue;
  return out;
}

}  // namespace

AlgNumber euler_E(const AlgNumber& alpha1, const AlgNumber& beta1, u64 p) {
  if (alpha1.is_zero()) throw DomainError("alpha1 = 0");
  return AlgNumber(1) - beta1 / (power_of(p, 1) * alpha1);
}

AlgNumber euler_E(const Eigenform& f1) { return euler_E(require_alpha(f1), *f1.beta, f1.p); }

AlgNumber euler_Estar(const AlgNumber& alpha1, const AlgNumber& beta1) {
  if (alpha1.is_zero()) throw DomainError("alpha1 = 0");
  return AlgNumber(1) - beta1 / alpha1;
}

AlgNumber euler_Estar(const Eigenform& f1) { return euler_Estar(require_alpha(f1), *f1.beta); }

int conductor_exponent(const DirichletCharacter& chi, u64 p) {
  const auto [q, e] = prime_power(chi.conductor());
  if (e < 0 || (e > 0 && q != p)) {
    throw DomainError("character conductor " + std::to_string(chi.conductor()) + " is not a power of " +
                      std::to_string(p));
  }
  return e;
}

AlgNumber euler_E_pair(const PData& d, i64 j, const DirichletCharacter& chi) {
  const int r = conductor_exponent(chi, d.p);
  if (r == 0) {
    const AlgNumber pj1 = power_of(d.p, j - 1), pj = power_of(d.p, j);
    // 1 - num/den per bracket. A vanishing bracket gives 0 even when another
    // bracket has a zero denominator.
    const std::pair<AlgNumber, AlgNumber> brackets[] = {{pj1, d.alpha1 * d.alpha2},
                                                        {pj1, d.alpha1 * d.beta2},
                                                        {d.beta1 * d.alpha2, pj},
                                                        {d.beta1 * d.beta2, pj}};
    bool undefined = false;
    AlgNumber out(1);
    for (const auto& [num, den] : brackets) {
      if (den.is_zero()) {
        undefined = true;
        continue;
      }
      if (num == den) return AlgNumber();
      out *= AlgNumber(1) - num / den;
    }
    if (undefined) throw DomainError("Euler factor E(f1, f2, j): division by zero");
    return out;
  }
  const AlgNumber g(gauss_sum(chi.primitive_part()));
  const AlgNumber ratio = power_of(d.p, 2 * j - 2) / (d.alpha1 * d.alpha1 * d.alpha2 * d.beta2);
  return g * g * ratio.pow(r);
}

AlgNumber euler_E_pair(const Eigenform& f1, const Eigenform& f2, i64 j, const DirichletCharacter& chi) {
  return euler_E_pair(pdata(f1, f2), j, chi);
}

AlgNumber gauss_block_twisted(const PData& d, i64 j, const DirichletCharacter& chi, const DirichletCharacter& chi_prime) {
  const int r = conductor_exponent(chi, d.p);
  const int rp = conductor_exponent(chi_prime, d.p);
  const AlgNumber pj1 = power_of(d.p, j - 1);
  return (pj1 / (d.alpha1 * d.alpha2)).pow(r) * AlgNumber(gauss_sum(chi.primitive_part())) *
         (pj1 / (d.alpha1 * d.beta2)).pow(rp) * AlgNumber(gauss_sum(chi_prime.primitive_part()));
}

ComplexAP archimedean_factor(i64 k1, i64 k2, i64 j, const ComplexAP& petersson_norm, unsigned digits) {
  if (j < 1 || j < k2) throw DomainError("archimedean factor needs j >= max(1, k2)");
  const unsigned work = digits + 10;
  mpz_class f1, f2;
  mpz_fac_ui(f1.get_mpz_t(), static_cast<unsigned long>(j - 1));
  mpz_fac_ui(f2.get_mpz_t(), static_cast<unsigned long>(j - k2));
  mpz_class two;
  mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(2 * j + k1 - k2));
  const ComplexAP num = ComplexAP::from_rational(mpq_class(f1 * f2), work) *
                        ComplexAP::root_of_unity(static_cast<long long>(mod(k1 - k2, 4)), 4, work);
  const ComplexAP den = ComplexAP::pi(work).pow(2 * j + 1 - k2) * ComplexAP::from_rational(mpq_class(two), work) *
                        petersson_norm.at_digits(work);
  return (num / den).at_digits(digits);
}

Prediction predicted_I_crystalline(const InterpInput& in, unsigned digits) {
  check_range(in);
  if (!in.f2.crystalline) throw DomainError(in.f2.label + ": f2 is not crystalline; use the non-crystalline formula");
  return assemble(in, euler_E_pair(in.f1, in.f2, in.j, in.chi), "crystalline", digits);
}

Prediction predicted_I_noncrystalline(const InterpInput& in, unsigned digits) {
  check_range(in);
  if (in.f2.crystalline || in.f2.eps_p.is_trivial()) {
    throw DomainError("outside the non-crystalline regime: f2 has trivial character at p");
  }
  const DirichletCharacter chi = in.chi.primitive_part();
  const DirichletCharacter chi_prime = (chi * in.f2.eps_p.inv()).primitive_part();
  if (chi.is_trivial() || chi_prime.is_trivial()) {
    throw DomainError("outside the non-crystalline regime: chi and chi * eps_2p^-1 must both be non-trivial");
  }
  return assemble(in, gauss_block_twisted(pdata(in.f1, in.f2), in.j, chi, chi_prime), "noncrystalline", digits);
}

Prediction predicted_I(const InterpInput& in, unsigned digits) {
  return in.f2.crystalline ? predicted_I_crystalline(in, digits) : predicted_I_noncrystalline(in, digits);
}

}  // namespace rankin
