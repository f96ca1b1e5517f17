#pragma once

// Eisenstein q-expansions and the exact identities among them.

#include "rankin/qseries.hpp"

#include <optional>

namespace rankin {

/// sum_{p not | n} sum_{d | n} d^(k-1) (zeta_N^d + (-1)^k zeta_N^-d) q^n.
QExpansion eis_E(const LocAlgChar& k, u64 N, std::size_t prec);
QExpansion eis_E(i64 k, u64 N, u64 p, std::size_t prec);
/// As eis_E with the exponent on n/d.
QExpansion eis_F(const LocAlgChar& k, u64 N, std::size_t prec);
QExpansion eis_F(i64 k, u64 N, u64 p, std::size_t prec);
/// sum_{p not | n} sum_{d | n} d^(sigma - kappa2) (n/d)^(kappa1 - sigma - 1)
///   (zeta_N^d + (-1)^(kappa1 - kappa2) zeta_N^-d) q^n,
/// the sign being the value of kappa1 - kappa2 at -1.
QExpansion eis_script(const LocAlgChar& kappa1, const LocAlgChar& kappa2, const LocAlgChar& sigma, u64 N,
                      std::size_t prec);
/// sum_{n >= 1} sum_{d | n, p not | n/d} d^(j-k2) (n/d)^(k1-1-j) chi(n/d)^-2
///   (zeta_N^d + (-1)^(k1-k2) zeta_N^-d) q^n, chi non-trivial of p-power conductor.
QExpansion eis_tilde(i64 k1, i64 k2, i64 j, const DirichletCharacter& chi, u64 N, u64 p, std::size_t prec);

struct IdentityCheck {
  bool holds = false;
  std::optional<std::size_t> first_mismatch;
};

/// spade: theta^tau E_{kappa1-kappa2-2tau} against eis_script(kappa1, kappa2, kappa1-1-tau);
/// diamond: theta^tau F_{kappa1-kappa2-2tau} against eis_script(kappa1, kappa2, kappa2+tau).
/// sigma replaces the slice value of the third argument when given.
IdentityCheck verify_slice_identity(Slice flavor, const LocAlgChar& kappa1, const LocAlgChar& kappa2,
                                    const LocAlgChar& tau, u64 N, u64 p, std::size_t prec,
                                    const std::optional<LocAlgChar>& sigma = std::nullopt);

/// eis_script(k1, k2, j + chi) against theta^chi eis_tilde(k1, k2, j, chi).
IdentityCheck verify_twist_identity(i64 k1, i64 k2, i64 j, const DirichletCharacter& chi, u64 N, u64 p,
                                    std::size_t prec);

/// F2 * theta^tau(E or F of weight kappa1 - kappa2 - 2 tau); no projection.
HeckeExpansion xi(Slice flavor, const HeckeExpansion& f2, const LocAlgChar& kappa1, const LocAlgChar& kappa2,
                  const LocAlgChar& tau, u64 N);

}  // namespace rankin
