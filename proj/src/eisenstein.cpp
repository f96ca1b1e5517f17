#include "rankin/eisenstein.hpp"

namespace rankin {
namespace {

// u -> u^w psi(u). psi trivial modulo 1 allows evaluation at any u.
struct PowerChar {
  i64 w = 0;
  DirichletCharacter psi;
};

PowerChar from_loc(const LocAlgChar& k) { return {k.weight(), k.finite_part()}; }

mpq_class rational_power(u64 u, i64 w) {
  mpz_class z;
  mpz_ui_pow_ui(z.get_mpz_t(), u, static_cast<unsigned long>(w < 0 ? -w : w));
  if (w >= 0) return mpq_class(z);
  mpq_class q(mpz_class(1), z);
  q.canonicalize();
  return q;
}

enum class Support { prime_to_p, cofactor_prime_to_p };

// a_n = sum_{d m = n} A(d) B(m) (zeta_N^d + s zeta_N^-d) under the support rule.
QExpansion divisor_series(const PowerChar& a, const PowerChar& b, int s, u64 N, u64 p, std::size_t prec,
                          Support support) {
  if (N == 0) throw DomainError("Eisenstein series needs N >= 1");
  if (!is_prime(p)) throw DomainError("Eisenstein series needs a prime p, got " + std::to_string(p));
  if (gcd(N, p) != 1) {
    throw DomainError("N = " + std::to_string(N) + " must be prime to p = " + std::to_string(p));
  }
  const u64 L = lcm(lcm(N, a.psi.order()), lcm(b.psi.order(), 2));
  const u64 step_a = L / a.psi.order(), step_b = L / b.psi.order(), step_n = L / N;
  std::vector<std::vector<mpq_class>> buckets(prec);
  std::vector<mpq_class> pow_a(prec), pow_b(prec);
  for (u64 u = 1; u < prec; ++u) {
    pow_a[u] = rational_power(u, a.w);
    pow_b[u] = rational_power(u, b.w);
  }
  for (u64 d = 1; d < prec; ++d) {
    const auto ea = a.psi.exponent_at(static_cast<i64>(d));
    if (!ea) continue;
    for (u64 m = 1; d * m < prec; ++m) {
      const u64 n = d * m;
      if (support == Support::prime_to_p ? n % p == 0 : m % p == 0) continue;
      const auto eb = b.psi.exponent_at(static_cast<i64>(m));
      if (!eb) continue;
      auto& bucket = buckets[n];
      if (bucket.empty()) bucket.assign(L, mpq_class(0));
      const mpq_class r = pow_a[d] * pow_b[m];
      const u64 base = (*ea * step_a + *eb * step_b) % L;
      const u64 twist = (d % N) * step_n % L;
      bucket[(base + twist) % L] += r;
      bucket[(base + L - twist) % L] += s > 0 ? r : mpq_class(-r);
    }
  }
  std::vector<CycloNumber> coeffs(prec);
  for (std::size_t n = 1; n < prec; ++n) {
    if (!buckets[n].empty()) coeffs[n] = CycloNumber::from_root_sum(L, buckets[n]);
  }
  return QExpansion(std::move(coeffs), std::nullopt, N);
}

void check_prime(const LocAlgChar& a, const LocAlgChar& b) {
  if (a.prime() != b.prime()) {
    throw DomainError("weight characters at different primes " + std::to_string(a.prime()) + " and " +
                      std::to_string(b.prime()));
  }
}

IdentityCheck compare(const QExpansion& lhs, const QExpansion& rhs) {
  IdentityCheck out;
  out.first_mismatch = lhs.first_mismatch(rhs);
  out.holds = !out.first_mismatch && lhs.prec() == rhs.prec();
  return out;
}

}  // namespace

QExpansion eis_E(const LocAlgChar& k, u64 N, std::size_t prec) {
  auto out = divisor_series(from_loc(k - 1), PowerChar{}, k.sign(), N, k.prime(), prec, Support::prime_to_p);
  out.set_weight(k);
  return out;
}

QExpansion eis_E(i64 k, u64 N, u64 p, std::size_t prec) { return eis_E(LocAlgChar(k, p), N, prec); }

QExpansion eis_F(const LocAlgChar& k, u64 N, std::size_t prec) {
  auto out = divisor_series(PowerChar{}, from_loc(k - 1), k.sign(), N, k.prime(), prec, Support::prime_to_p);
  out.set_weight(k);
  return out;
}

QExpansion eis_F(i64 k, u64 N, u64 p, std::size_t prec) { return eis_F(LocAlgChar(k, p), N, prec); }

QExpansion eis_script(const LocAlgChar& kappa1, const LocAlgChar& kappa2, const LocAlgChar& sigma, u64 N,
                      std::size_t prec) {
  check_prime(kappa1, kappa2);
  check_prime(kappa1, sigma);
  const LocAlgChar diff = kappa1 - kappa2;
  auto out = divisor_series(from_loc(sigma - kappa2), from_loc(kappa1 - sigma - 1), diff.sign(), N, kappa1.prime(),
                            prec, Support::prime_to_p);
  out.set_weight(diff);
  return out;
}

QExpansion eis_tilde(i64 k1, i64 k2, i64 j, const DirichletCharacter& chi, u64 N, u64 p, std::size_t prec) {
  if (chi.is_trivial()) throw DomainError("eis_tilde needs a non-trivial character");
  const LocAlgChar chi_p(0, chi, p);  // checks the conductor is a power of p
  const int s = (k1 - k2) % 2 == 0 ? 1 : -1;
  auto out = divisor_series(PowerChar{j - k2, DirichletCharacter()},
                            PowerChar{k1 - 1 - j, chi_p.finite_part().pow(-2)}, s, N, p, prec,
                            Support::cofactor_prime_to_p);
  out.set_weight(LocAlgChar(k1 - k2, p) - 2 * chi_p);
  return out;
}

IdentityCheck verify_slice_identity(Slice flavor, const LocAlgChar& kappa1, const LocAlgChar& kappa2,
                                    const LocAlgChar& tau, u64 N, u64 p, std::size_t prec,
                                    const std::optional<LocAlgChar>& sigma) {
  check_prime(kappa1, kappa2);
  check_prime(kappa1, tau);
  if (kappa1.prime() != p) throw DomainError("weight characters are not at p = " + std::to_string(p));
  const LocAlgChar weight = kappa1 - kappa2 - 2 * tau;
  QExpansion lhs;
  LocAlgChar third = kappa1;
  if (flavor == Slice::spade) {
    lhs = theta_twist(eis_E(weight, N, prec), tau);
    third = kappa1 - 1 - tau;
  } else {
    lhs = theta_twist(eis_F(weight, N, prec), tau);
    third = kappa2 + tau;
  }
  return compare(lhs, eis_script(kappa1, kappa2, sigma.value_or(third), N, prec));
}

IdentityCheck verify_twist_identity(i64 k1, i64 k2, i64 j, const DirichletCharacter& chi, u64 N, u64 p,
                                    std::size_t prec) {
  const LocAlgChar chi_p(0, chi, p);
  const auto lhs = eis_script(LocAlgChar(k1, p), LocAlgChar(k2, p), LocAlgChar(j, p) + chi_p, N, prec);
  const auto rhs = theta_twist(eis_tilde(k1, k2, j, chi, N, p, prec), chi_p);
  return compare(lhs, rhs);
}

HeckeExpansion xi(Slice flavor, const HeckeExpansion& f2, const LocAlgChar& kappa1, const LocAlgChar& kappa2,
                  const LocAlgChar& tau, u64 N) {
  const LocAlgChar weight = kappa1 - kappa2 - 2 * tau;
  const auto e = flavor == Slice::spade ? eis_E(weight, N, f2.prec()) : eis_F(weight, N, f2.prec());
  return f2 * to_hecke(theta_twist(e, tau));
}

}  // namespace rankin
