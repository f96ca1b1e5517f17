#include "rankin/qseries.hpp"

#include <sstream>

namespace rankin {

QExpansion to_cyclotomic(const HeckeExpansion& f) {
  std::vector<CycloNumber> out;
  out.reserve(f.prec());
  for (const auto& a : f.coeffs()) out.push_back(a.as_cyclotomic());
  return QExpansion(std::move(out), f.weight(), f.level());
}

HeckeExpansion to_hecke(const QExpansion& f) {
  std::vector<AlgNumber> out(f.coeffs().begin(), f.coeffs().end());
  return HeckeExpansion(std::move(out), f.weight(), f.level());
}

// ---------------------------------------------------------------------------
// Eigenform

const CycloNumber& Eigenform::a(u64 l) const {
  const auto it = ap.find(l);
  if (it == ap.end()) throw DataError(label + ": no eigenvalue a_" + std::to_string(l));
  return it->second;
}

CycloNumber Eigenform::hecke_norm(u64 l) const {
  mpz_class lk;
  mpz_ui_pow_ui(lk.get_mpz_t(), l, static_cast<unsigned long>(k - 1));
  CycloNumber out = eps_N(static_cast<i64>(l));
  if (l != p) out *= eps_p(static_cast<i64>(l));
  out *= mpq_class(lk);
  return out;
}

Eigenform Eigenform::newform() const {
  Eigenform out = *this;
  if (crystalline) {
    out.alpha.reset();
    out.beta.reset();
  }
  return out;
}

void Eigenform::validate() const {
  const std::string who = label.empty() ? std::string("eigenform") : label;
  if (k < 1) throw DataError(who + ": weight must be >= 1");
  if (level == 0 || level % eps_N.modulus() != 0) {
    throw DataError(who + ": eps_N modulus " + std::to_string(eps_N.modulus()) + " does not divide the level " +
                    std::to_string(level));
  }
  if (p != 0) {
    if (!is_prime(p)) throw DataError(who + ": p = " + std::to_string(p) + " is not prime");
    if (level % p == 0) throw DataError(who + ": level must be prime to p");
    const auto [q, e] = prime_power(eps_p.modulus());
    if (e < 0 || (e > 0 && q != p)) throw DataError(who + ": eps_p must have p-power modulus");
  } else if (!eps_p.is_trivial() || alpha) {
    throw DataError(who + ": p-data given without a prime p");
  }
  if (crystalline != eps_p.is_trivial()) {
    throw DataError(who + ": crystalline flag disagrees with eps_p");
  }
  if (nebentypus().parity() != (k % 2 == 0 ? 1 : -1)) {
    throw DataError(who + ": nebentypus parity does not match the weight");
  }
  if (const auto it = ap.find(1); it != ap.end() && !it->second.is_one()) {
    throw DataError(who + ": a_1 must be 1");
  }
  if (alpha.has_value() != beta.has_value()) throw DataError(who + ": alpha and beta must be given together");
  if (!alpha) return;
  if (crystalline) {
    const auto& apv = a(p);
    if (!(*alpha + *beta == AlgNumber(apv)) || !(*alpha * *beta == AlgNumber(hecke_norm(p)))) {
      throw DataError(who + ": alpha, beta are not the roots of X^2 - a_p X + p^(k-1) eps_N(p)");
    }
  } else {
    if (const auto it = ap.find(p); it != ap.end() && !(*alpha == AlgNumber(it->second))) {
      throw DataError(who + ": alpha must equal a_p for a form of p-power level");
    }
    if (!(*alpha * *beta == AlgNumber(hecke_norm(p)))) {
      throw DataError(who + ": beta must equal p^(k-1) eps_N(p) / alpha");
    }
  }
}

HeckeExpansion expand(const Eigenform& f, std::size_t prec) {
  f.validate();
  const bool stabilised_p = f.is_stabilised();
  std::vector<u64> missing;
  for (u64 l : primes_up_to(prec == 0 ? 0 : prec - 1)) {
    if (stabilised_p && l == f.p) continue;
    if (f.ap.find(l) == f.ap.end()) missing.push_back(l);
  }
  if (!missing.empty()) {
    std::ostringstream os;
    os << f.label << ": missing eigenvalues for " << missing.size() << " prime(s) below " << prec << ":";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) os << " " << missing[i];
    if (missing.size() > 20) os << " ...";
    throw DataError(os.str());
  }

  std::vector<AlgNumber> a(prec);
  if (prec > 1) a[1] = AlgNumber(1);
  const auto spf = smallest_prime_factors(prec);
  for (u64 l = 2; l < prec; ++l) {
    if (spf[l] != l) continue;
    AlgNumber al;
    bool multiplicative_powers = false;
    if (stabilised_p && l == f.p) {
      al = *f.alpha;
      multiplicative_powers = true;
    } else {
      al = AlgNumber(f.a(l));
      multiplicative_powers = f.level % l == 0 || (l == f.p && !f.eps_p.is_trivial());
    }
    a[l] = al;
    if (l * l >= prec) continue;
    const AlgNumber norm = multiplicative_powers ? AlgNumber() : AlgNumber(f.hecke_norm(l));
    u64 prev = 1, cur = l;
    while (cur <= (prec - 1) / l) {
      const u64 next = cur * l;
      a[next] = multiplicative_powers ? al * a[cur] : al * a[cur] - norm * a[prev];
      prev = cur;
      cur = next;
    }
  }
  for (u64 n = 2; n < prec; ++n) {
    const u64 l = spf[n];
    u64 m = n, q = 1;
    while (m % l == 0) {
      m /= l;
      q *= l;
    }
    if (m != 1) a[n] = a[q] * a[m];
  }
  std::optional<LocAlgChar> weight;
  if (f.p != 0) weight = f.weight_character();
  return HeckeExpansion(std::move(a), std::move(weight), f.level);
}

Eigenform stabilise(const Eigenform& f, const AlgNumber& alpha, bool strict) {
  if (f.p == 0) throw DomainError(f.label + ": no prime p to stabilise at");
  if (f.is_stabilised()) throw DomainError(f.label + ": already a U_p-eigenform");
  if (!f.eps_p.is_trivial()) throw DomainError(f.label + ": p divides the level, nothing to stabilise");
  const AlgNumber ap(f.a(f.p));
  const AlgNumber norm(f.hecke_norm(f.p));
  if (!(alpha * alpha - ap * alpha + norm).is_zero()) {
    throw DomainError(f.label + ": " + alpha.to_string() + " is not a root of the Hecke polynomial at " +
                      std::to_string(f.p));
  }
  const AlgNumber beta = ap - alpha;
  if (strict && alpha == beta) throw DomainError(f.label + ": alpha = beta at p = " + std::to_string(f.p));
  Eigenform out = f;
  out.alpha = alpha;
  out.beta = beta;
  out.crystalline = true;
  return out;
}

Eigenform stabilise(const Eigenform& f, bool plus_branch, bool strict) {
  if (f.p == 0) throw DomainError(f.label + ": no prime p to stabilise at");
  return stabilise(f, AlgNumber::quadratic_root(f.a(f.p), f.hecke_norm(f.p), plus_branch), strict);
}

HeckeExpansion stabilised_expansion(const Eigenform& f, const AlgNumber& beta, std::size_t prec) {
  const auto base = expand(f.newform(), prec);
  auto shifted = v_p(base, f.p, prec);
  shifted *= beta;
  auto out = base - shifted;
  out.set_weight(base.weight());
  out.set_level(f.level);
  return out;
}

Eigenform conjugate_form(const Eigenform& f) {
  Eigenform out = f;
  for (auto& [l, a] : out.ap) {
    if (f.level % l != 0) a *= f.eps_N(static_cast<i64>(l)).inv();
  }
  if (f.p != 0 && !f.eps_N.is_trivial()) {
    const AlgNumber scale(f.eps_N(static_cast<i64>(f.p)).inv());
    if (out.alpha) *out.alpha *= scale;
    if (out.beta) *out.beta *= scale;
  }
  out.eps_N = f.eps_N.inv();
  return out;
}

}  // namespace rankin
