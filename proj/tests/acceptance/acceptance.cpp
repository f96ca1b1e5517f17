// Acceptance checks: one line per criterion.

#include "rankin/io.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

using namespace rankin;

namespace {

struct Outcome {
  bool pass = true;
  std::size_t checks = 0;
  std::string detail;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok && pass) {
      pass = false;
      detail = "first failure: " + what;
    }
  }
};

int failures = 0;

void criterion(const char* id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    out.pass = false;
    std::ostringstream os;
    os << "over the time limit of " << limit_seconds << " s";
    out.detail += (out.detail.empty() ? "" : "; ") + os.str();
  }
  if (!out.pass) ++failures;
  std::printf("%s %s %s: %zu checks, %.2f s%s%s\n", id, out.pass ? "PASS" : "FAIL", title, out.checks, secs,
              out.detail.empty() ? "" : "; ", out.detail.c_str());
  std::fflush(stdout);
}

std::string describe(const char* what, const LocAlgChar& a, const LocAlgChar& b, const LocAlgChar& t) {
  return std::string(what) + " kappa1=" + a.to_string() + " kappa2=" + b.to_string() + " tau=" + t.to_string();
}

Outcome slice_identities() {
  Outcome out;
  const u64 N = 4;
  const std::size_t prec = 200;
  auto both = [&](const LocAlgChar& k1, const LocAlgChar& k2, const LocAlgChar& tau, u64 p) {
    for (Slice fl : {Slice::spade, Slice::diamond}) {
      out.check(verify_slice_identity(fl, k1, k2, tau, N, p, prec).holds, describe(to_string(fl).c_str(), k1, k2, tau));
    }
  };
  for (u64 p : {3, 5}) {
    for (i64 k1 = 4; k1 <= 14; ++k1) {
      for (i64 k2 = 1; k2 <= k1 - 2; ++k2) {
        for (i64 tau = 0; tau <= std::min<i64>(5, k1 - k2); ++tau) both(LocAlgChar(k1, p), LocAlgChar(k2, p), LocAlgChar(tau, p), p);
      }
    }
  }
  // Finite parts of conductor 3, 9 and 5 on each coordinate.
  for (u64 c : {3, 9, 5}) {
    const u64 p = c == 5 ? 5 : 3;
    const DirichletCharacter one = DirichletCharacter::trivial(1);
    for (const auto& chi : DirichletCharacter::primitive_of_conductor(c)) {
      const std::vector<std::array<DirichletCharacter, 3>> parts{
          {chi, one, one}, {one, chi, one}, {one, one, chi}, {chi, chi, chi}, {chi, chi.inv(), one}, {chi, one, chi.inv()}};
      for (const auto& [a, b, t] : parts) {
        for (const auto& [k1, k2] : {std::pair<i64, i64>{12, 2}, {8, 3}, {6, 1}}) {
          for (i64 tau = 0; tau <= 3; ++tau) both(LocAlgChar(k1, a, p), LocAlgChar(k2, b, p), LocAlgChar(tau, t, p), p);
        }
      }
    }
  }
  return out;
}

Outcome twist_identity() {
  Outcome out;
  std::vector<DirichletCharacter> chars = DirichletCharacter::primitive_of_conductor(3);
  for (const auto& c : DirichletCharacter::primitive_of_conductor(9)) chars.push_back(c);
  for (const auto& [k1, k2] : {std::pair<i64, i64>{12, 2}, {8, 3}}) {
    for (i64 j = k2; j <= k1 - 1; ++j) {
      for (const auto& chi : chars) {
        const auto r = verify_twist_identity(k1, k2, j, chi, 4, 3, 100);
        out.check(r.holds, "k1=" + std::to_string(k1) + " k2=" + std::to_string(k2) + " j=" + std::to_string(j) +
                               " chi=" + chi.to_string());
      }
    }
  }
  return out;
}

Outcome euler_consistency(FormDatabase& db) {
  Outcome out;
  const std::size_t bound = 10000;
  for (const auto& [a, b] : {std::pair<const char*, const char*>{"11.2.a.a", "11.2.a.a"}, {"1.12.a.a", "11.2.a.a"}}) {
    for (const auto& chi : {DirichletCharacter::trivial(1), DirichletCharacter::quadratic(3)}) {
      const RankinSeries series(db.get(a), db.get(b), chi);
      const auto table = dirichlet_coefficients(series, bound);
      for (u64 l : primes_up_to(97)) {
        if (series.is_bad(l)) continue;
        const auto inv = inverse_power_series(local_factor(series, l), 16);
        const CycloNumber cl = chi(static_cast<i64>(l));
        CycloNumber cr(1);
        u64 q = 1;
        for (std::size_t r = 1; q <= bound / l; ++r) {
          q *= l;
          cr *= cl;
          out.check(table[q] == inv[r] * cr, std::string(a) + " x " + b + " chi=" + chi.to_string() +
                                                 " n=" + std::to_string(q));
        }
      }
    }
  }
  return out;
}

Outcome gauss_sums() {
  Outcome out;
  const unsigned digits = 50;
  const BigFloat tol = ten_to_minus(40, digits);
  for (u64 c : {3, 5, 7, 9, 11, 13, 25, 27}) {
    for (const auto& chi : DirichletCharacter::primitive_of_conductor(c)) {
      const auto g = gauss_sum(chi);
      const BigFloat n2 = g.embed(digits).norm();
      out.check(abs(n2 - BigFloat(c)) < tol, "|G|^2 for " + chi.to_string());
      out.check(g * gauss_sum(chi.inv()) == CycloNumber(chi.parity() * static_cast<long>(c)),
                "G(chi) G(chi^-1) for " + chi.to_string());
    }
  }
  return out;
}

// L^imp(Delta, f11, 1, 10) from the factored and the Euler-assembled routes at
// n_max = 10^5, where both agree to 1e-20.
const char* const kFrozenL = "1.0445638331333963085092417863634678525199660712562";

Outcome lvalue_oracle(FormDatabase& db) {
  Outcome out;
  const RankinSeries series(db.get("1.12.a.a"), db.get("11.2.a.a"));
  const std::size_t n_max = 100000;
  const auto raw = evaluate_L(series, 10, 50, n_max, LRoute::factored);
  const auto assembled = evaluate_L(series, 10, 50, n_max, LRoute::euler);
  const BigFloat gap = distance(raw.value, assembled.value);
  out.check(gap < ten_to_minus(8, 50), "routes differ by " + format_float(gap, 6));
  for (unsigned digits : {25U, 50U}) {
    const auto v = evaluate_L(series, 10, digits, n_max, LRoute::factored);
    const auto frozen = ComplexAP::from_decimal(kFrozenL, digits + 10);
    const BigFloat d = distance(v.value, frozen);
    out.check(d <= v.tail_bound, "frozen constant at " + std::to_string(digits) + " digits: off by " + format_float(d, 6));
  }
  const std::string summary = "route gap " + format_float(gap, 3) + ", tail bound " + format_float(raw.tail_bound, 3);
  out.detail = out.pass ? summary : out.detail + "; " + summary;
  return out;
}

Outcome regime_consistency(FormDatabase& db) {
  Outcome out;
  const Eigenform& f1 = db.get("1.12.a.a@3+");
  const Eigenform& f2 = db.get("11.2.a.a@3+");
  const PData d{3, *f1.alpha, *f1.beta, *f2.alpha, *f2.beta};
  std::vector<DirichletCharacter> chars = DirichletCharacter::primitive_of_conductor(3);
  for (const auto& c : DirichletCharacter::primitive_of_conductor(9)) chars.push_back(c);
  for (const auto& chi : chars) {
    for (i64 j = 2; j <= 11; ++j) {
      const AlgNumber twisted = gauss_block_twisted(d, j, chi, chi);
      out.check(euler_E_pair(d, j, chi) == twisted, "j=" + std::to_string(j) + " chi=" + chi.to_string());
      InterpInput in{f1, f2, j, chi, ComplexAP::from_rational(1, 30)};
      out.check(predicted_I_crystalline(in, 30).gauss_block_exact == twisted,
                "assembled j=" + std::to_string(j) + " chi=" + chi.to_string());
    }
  }
  return out;
}

AlgNumber power(u64 p, i64 e) {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), p, static_cast<unsigned long>(e));
  return AlgNumber(CycloNumber(v));
}

Outcome vanishing_locus() {
  Outcome out;
  std::mt19937_64 rng(20240611);
  const u64 primes[] = {3, 5, 7, 11, 13};
  std::uniform_int_distribution<int> pick_p(0, 4), pick_j(1, 12), small(-40, 40), kind(0, 2);
  auto nonzero = [&] {
    int v = 0;
    while (v == 0) v = small(rng);
    return v;
  };
  auto random_value = [&](u64 p) -> AlgNumber {
    switch (kind(rng)) {
      case 0:
        return AlgNumber(mpq_class(nonzero(), std::abs(nonzero())));
      case 1:
        return AlgNumber(CycloNumber(nonzero()) + CycloNumber(small(rng)) * CycloNumber::zeta(3));
      default: {
        // A root of X^2 - a X + p^e, like a Hecke eigenvalue at p.
        return AlgNumber::quadratic_root(CycloNumber(small(rng)), CycloNumber(power(p, 1 + kind(rng)).as_cyclotomic()));
      }
    }
  };
  std::size_t forced[4] = {0, 0, 0, 0}, vanishing = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const u64 p = primes[pick_p(rng)];
    const i64 j = pick_j(rng);
    AlgNumber a1 = random_value(p), b1 = random_value(p), a2 = random_value(p), b2 = random_value(p);
    const AlgNumber pj1 = power(p, j - 1), pj = power(p, j);
    const int force = trial % 5 - 1;  // -1: nothing forced
    switch (force) {
      case 0: a2 = pj1 / a1; break;
      case 1: b2 = pj1 / a1; break;
      case 2: a2 = pj / b1; break;
      case 3: b2 = pj / b1; break;
      default: break;
    }
    if (force >= 0) ++forced[force];
    const bool expected = a1 * a2 == pj1 || a1 * b2 == pj1 || b1 * a2 == pj || b1 * b2 == pj;
    if (expected) ++vanishing;
    const PData d{p, a1, b1, a2, b2};
    out.check(euler_E_pair(d, j, DirichletCharacter()).is_zero() == expected,
              "trial " + std::to_string(trial) + " p=" + std::to_string(p) + " j=" + std::to_string(j));
  }
  std::ostringstream os;
  os << "forced per bracket " << forced[0] << "/" << forced[1] << "/" << forced[2] << "/" << forced[3] << ", "
     << vanishing << " vanishing";
  out.detail = out.pass ? os.str() : out.detail + "; " + os.str();
  return out;
}

}  // namespace

int main() {
  FormDatabase db(RANKIN_ACCEPTANCE_DATA_DIR);
  criterion("AC1", "slice identities exact to q^200, N=4 (integer grid at p=3,5 and finite parts of conductor 3, 9, 5)",
            300, slice_identities);
  criterion("AC2", "twist identity exact to q^100 for (12,2), (8,3), chi of conductor 3 and 9", 0, twist_identity);
  criterion("AC3", "Dirichlet table = 1/P_l at good l <= 97, l^r <= 10^4, f11 x f11 and Delta x f11, chi trivial and quad3",
            0, [&] { return euler_consistency(db); });
  criterion("AC4", "Gauss sums |G|^2 = cond to 1e-40 and G(chi)G(chi^-1) = chi(-1) cond exactly", 0, gauss_sums);
  criterion("AC5", "L^imp(Delta, f11, 1, 10): factored vs Euler route at n_max 1e5, frozen constant at 25 and 50 digits",
            120, [&] { return lvalue_oracle(db); });
  criterion("AC6", "crystalline and Gauss-block prefactors agree exactly in the overlap, p=3, chi of conductor 3 and 9, j=2..11", 0,
            [&] { return regime_consistency(db); });
  criterion("AC7", "euler_E_pair(chi=1) = 0 iff a bracket vanishes, 100 random exact configurations", 0,
            vanishing_locus);
  std::printf(
      "AC8 INFO the end-to-end interpolation theorem needs overconvergent projectors and Euler-system input and is not "
      "reproduced; the q-expansion identities its proof rests on are AC1 and AC2\n");
  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", failures);
  return failures == 0 ? 0 : 1;
}
