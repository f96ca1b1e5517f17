#include "rankin/characters.hpp"

#include <deque>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

namespace rankin {
namespace {

constexpr u64 kNonUnit = std::numeric_limits<u64>::max();

// Inverse of a modulo m, gcd(a, m) = 1, m >= 1.
u64 inverse_mod(u64 a, u64 m) {
  if (m == 1) return 0;
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
  while (new_r != 0) {
    const i64 q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw ArithmeticError("inverse_mod: not a unit");
  return static_cast<u64>(mod(t, static_cast<i64>(m)));
}

}  // namespace

// ---------------------------------------------------------------------------
// DirichletGroup

std::shared_ptr<const DirichletGroup> DirichletGroup::of(u64 modulus) {
  static std::mutex mu;
  static std::map<u64, std::shared_ptr<const DirichletGroup>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(modulus); it != cache.end()) return it->second;
  }
  auto group = std::make_shared<const DirichletGroup>(modulus);
  std::lock_guard lock(mu);
  return cache.emplace(modulus, std::move(group)).first->second;
}

DirichletGroup::DirichletGroup(u64 modulus) : modulus_(modulus) {
  if (modulus == 0) throw DomainError("Dirichlet group of modulus 0");
  if (modulus > modulus_cap()) {
    throw ArithmeticError("character modulus " + std::to_string(modulus) + " exceeds the configured cap");
  }
  for (auto [q, e] : factorize(modulus)) {
    u64 qe = 1;
    for (int i = 0; i < e; ++i) qe *= q;
    const u64 rest = modulus / qe;
    std::vector<std::pair<u64, u64>> local;
    if (q == 2) {
      if (e == 2) local.emplace_back(3, 2);
      if (e >= 3) {
        local.emplace_back(qe - 1, 2);
        local.emplace_back(5, qe / 4);
      }
    } else {
      u64 g = primitive_root(q);
      if (e >= 2 && powmod(g, q - 1, q * q) == 1) g += q;
      local.emplace_back(g, qe / q * (q - 1));
    }
    for (auto [g, ord] : local) {
      // x = g mod qe, x = 1 mod rest.
      u64 x = g % qe;
      if (rest > 1) {
        const u64 t = mulmod(static_cast<u64>(mod(1 - static_cast<i64>(g), static_cast<i64>(rest))),
                             inverse_mod(qe % rest, rest), rest);
        x = (g + qe * t) % modulus;
      }
      gens_.push_back(x);
      orders_.push_back(ord);
      exponent_ = lcm(exponent_, ord);
      size_ *= ord;
    }
  }
  index_.assign(modulus, kNonUnit);
  std::vector<u64> digits(gens_.size(), 0);
  u64 value = 1 % modulus;
  for (u64 idx = 0; idx < size_; ++idx) {
    index_[value] = idx;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      value = mulmod(value, gens_[i], modulus);
      if (++digits[i] < orders_[i]) break;
      digits[i] = 0;
    }
  }
}

std::optional<std::vector<u64>> DirichletGroup::dlog(i64 a) const {
  const u64 r = static_cast<u64>(mod(a, static_cast<i64>(modulus_)));
  u64 idx = index_[r];
  if (idx == kNonUnit) return std::nullopt;
  std::vector<u64> out(gens_.size());
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    out[i] = idx % orders_[i];
    idx /= orders_[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// DirichletCharacter

DirichletCharacter::DirichletCharacter(std::shared_ptr<const DirichletGroup> group, u64 order, std::vector<u64> exps)
    : group_(std::move(group)), order_(order), exps_(std::move(exps)) {
  if (order_ == 0) throw DomainError("character order must be positive");
  u64 g = order_;
  for (auto& e : exps_) {
    e %= order_;
    g = gcd(g, e);
  }
  if (g == 0) g = order_;
  order_ /= g;
  for (auto& e : exps_) e /= g;
}

DirichletCharacter DirichletCharacter::trivial(u64 modulus) {
  auto group = DirichletGroup::of(modulus);
  std::vector<u64> exps(group->generators().size(), 0);
  return DirichletCharacter(std::move(group), 1, std::move(exps));
}

DirichletCharacter DirichletCharacter::quadratic(u64 p) {
  if (p == 2 || !is_prime(p)) throw DomainError("quadratic character needs an odd prime, got " + std::to_string(p));
  return from_generator_values(p, 2, {1});
}

DirichletCharacter DirichletCharacter::from_generator_values(u64 modulus, u64 order, std::vector<u64> exps) {
  auto group = DirichletGroup::of(modulus);
  if (exps.size() != group->generators().size()) {
    throw DomainError("modulus " + std::to_string(modulus) + " has " + std::to_string(group->generators().size()) +
                      " generators, got " + std::to_string(exps.size()) + " values");
  }
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (mulmod(exps[i] % order, group->orders()[i], order) != 0) {
      throw DomainError("value at generator " + std::to_string(group->generators()[i]) +
                        " has order not dividing the generator's order");
    }
  }
  return DirichletCharacter(std::move(group), order, std::move(exps));
}

DirichletCharacter DirichletCharacter::from_images(u64 modulus, u64 order,
                                                   const std::vector<std::pair<u64, u64>>& images) {
  if (order == 0) throw DataError("character order must be positive");
  auto group = DirichletGroup::of(modulus);
  std::vector<i64> table(modulus, -1);
  for (auto [g, e] : images) {
    if (gcd(g % modulus, modulus) != 1) {
      throw DataError("character image given at non-unit " + std::to_string(g) + " mod " + std::to_string(modulus));
    }
  }
  std::deque<u64> queue{1 % modulus};
  table[1 % modulus] = 0;
  u64 reached = 1;
  while (!queue.empty()) {
    const u64 x = queue.front();
    queue.pop_front();
    for (auto [g, e] : images) {
      const u64 y = mulmod(x, g % modulus, modulus);
      const auto ey = static_cast<i64>((static_cast<u64>(table[x]) + e) % order);
      if (table[y] < 0) {
        table[y] = ey;
        ++reached;
        queue.push_back(y);
      } else if (table[y] != ey) {
        throw DataError("character images are inconsistent (conflict at residue " + std::to_string(y) + ")");
      }
    }
  }
  if (reached != group->size()) {
    throw DataError("character images do not cover (Z/" + std::to_string(modulus) + "Z)^x");
  }
  std::vector<u64> exps;
  for (u64 g : group->generators()) exps.push_back(static_cast<u64>(table[g]));
  return DirichletCharacter(std::move(group), order, std::move(exps));
}

std::vector<DirichletCharacter> DirichletCharacter::all(u64 modulus) {
  auto group = DirichletGroup::of(modulus);
  const auto& ords = group->orders();
  const u64 exponent = group->exponent();
  std::vector<DirichletCharacter> out;
  std::vector<u64> t(ords.size(), 0);
  for (u64 idx = 0; idx < group->size(); ++idx) {
    std::vector<u64> exps(ords.size());
    for (std::size_t i = 0; i < ords.size(); ++i) exps[i] = t[i] * (exponent / ords[i]);
    out.push_back(DirichletCharacter(group, exponent, std::move(exps)));
    for (std::size_t i = 0; i < ords.size(); ++i) {
      if (++t[i] < ords[i]) break;
      t[i] = 0;
    }
  }
  return out;
}

std::vector<DirichletCharacter> DirichletCharacter::primitive_of_conductor(u64 conductor) {
  std::vector<DirichletCharacter> out;
  for (auto& chi : all(conductor)) {
    if (chi.is_primitive()) out.push_back(std::move(chi));
  }
  return out;
}

std::optional<u64> DirichletCharacter::exponent_at(i64 a) const {
  const auto logs = group_->dlog(a);
  if (!logs) return std::nullopt;
  u64 e = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i) e = (e + mulmod((*logs)[i], exps_[i], order_)) % order_;
  return e;
}

CycloNumber DirichletCharacter::operator()(i64 a) const {
  const auto e = exponent_at(a);
  if (!e) return CycloNumber();
  if (order_ == 1) return CycloNumber(1);
  return CycloNumber::zeta(order_, static_cast<i64>(*e));
}

int DirichletCharacter::parity() const {
  const auto e = exponent_at(-1);
  return *e == 0 ? 1 : -1;
}

u64 DirichletCharacter::conductor() const {
  if (order_ == 1) return 1;
  const u64 m = modulus();
  for (u64 d : divisors(m)) {
    bool trivial_on_kernel = true;
    for (u64 a = 1 % m; a < m + (m == 1 ? 1 : 0); a += d) {
      if (gcd(a, m) != 1) continue;
      if (*exponent_at(static_cast<i64>(a)) != 0) {
        trivial_on_kernel = false;
        break;
      }
    }
    if (trivial_on_kernel) return d;
  }
  return m;
}

DirichletCharacter DirichletCharacter::primitive_part() const {
  const u64 c = conductor();
  if (c == modulus()) return *this;
  auto target = DirichletGroup::of(c);
  std::vector<u64> exps;
  for (u64 h : target->generators()) {
    u64 a = h;
    while (gcd(a, modulus()) != 1) a += c;
    exps.push_back(*exponent_at(static_cast<i64>(a)));
  }
  return DirichletCharacter(std::move(target), order_, std::move(exps));
}

DirichletCharacter DirichletCharacter::lift(u64 target) const {
  if (target == modulus()) return *this;
  if (target % modulus() != 0) {
    throw DomainError("cannot lift a character mod " + std::to_string(modulus()) + " to modulus " +
                      std::to_string(target));
  }
  auto group = DirichletGroup::of(target);
  std::vector<u64> exps;
  for (u64 g : group->generators()) exps.push_back(*exponent_at(static_cast<i64>(g)));
  return DirichletCharacter(std::move(group), order_, std::move(exps));
}

DirichletCharacter DirichletCharacter::inv() const {
  std::vector<u64> exps = exps_;
  for (auto& e : exps) e = (order_ - e) % order_;
  return DirichletCharacter(group_, order_, std::move(exps));
}

DirichletCharacter DirichletCharacter::pow(i64 e) const {
  const auto k = static_cast<u64>(mod(e, static_cast<i64>(order_)));
  std::vector<u64> exps = exps_;
  for (auto& x : exps) x = mulmod(x, k, order_);
  return DirichletCharacter(group_, order_, std::move(exps));
}

DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b) {
  if (a.modulus() != b.modulus()) {
    const u64 m = lcm(a.modulus(), b.modulus());
    return a.lift(m) * b.lift(m);
  }
  const u64 order = lcm(a.order_, b.order_);
  std::vector<u64> exps(a.exps_.size());
  for (std::size_t i = 0; i < exps.size(); ++i) {
    exps[i] = (a.exps_[i] * (order / a.order_) + b.exps_[i] * (order / b.order_)) % order;
  }
  return DirichletCharacter(a.group_, order, std::move(exps));
}

bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
  return a.modulus() == b.modulus() && a.order_ == b.order_ && a.exps_ == b.exps_;
}

std::string DirichletCharacter::to_string() const {
  std::ostringstream os;
  os << "chi mod " << modulus() << " of order " << order_ << " {";
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (i > 0) os << ", ";
    os << group_->generators()[i] << ":" << exps_[i];
  }
  os << "}";
  return os.str();
}

CycloNumber gauss_sum(const DirichletCharacter& chi) {
  const u64 m = chi.modulus();
  const u64 l = lcm(m, chi.order());
  std::vector<mpq_class> by_exp(l, mpq_class(0));
  for (u64 a = 0; a < m; ++a) {
    const auto e = chi.exponent_at(static_cast<i64>(a));
    if (!e) continue;
    by_exp[(*e * (l / chi.order()) + a * (l / m)) % l] += 1;
  }
  return CycloNumber::from_root_sum(l, by_exp);
}

// ---------------------------------------------------------------------------
// LocAlgChar

LocAlgChar::LocAlgChar(i64 n, u64 p) : LocAlgChar(n, DirichletCharacter::trivial(1), p) {}

LocAlgChar::LocAlgChar(i64 n, const DirichletCharacter& chi, u64 p) : n_(n), p_(p) {
  if (!is_prime(p)) throw DomainError("locally algebraic character needs a prime, got " + std::to_string(p));
  const auto [q, e] = prime_power(chi.modulus());
  if (e < 0 || (e > 0 && q != p)) {
    throw DomainError("finite part must have " + std::to_string(p) + "-power modulus, got modulus " +
                      std::to_string(chi.modulus()));
  }
  chi_ = chi.primitive_part();
}

CycloNumber LocAlgChar::operator()(i64 u) const {
  if (u % static_cast<i64>(p_) == 0) {
    throw DomainError("character undefined at non-unit " + std::to_string(u) + " (p = " + std::to_string(p_) + ")");
  }
  mpz_class base(static_cast<long>(u));
  mpz_class power;
  mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(n_ < 0 ? -n_ : n_));
  mpq_class algebraic = n_ < 0 ? mpq_class(mpz_class(1), power) : mpq_class(power);
  algebraic.canonicalize();
  if (chi_.is_trivial()) return CycloNumber(algebraic);
  CycloNumber v = chi_(u);
  v *= algebraic;
  return v;
}

int LocAlgChar::sign() const { return ((n_ % 2 == 0) ? 1 : -1) * chi_.parity(); }

void LocAlgChar::check_same_prime(const LocAlgChar& o) const {
  if (p_ != o.p_) {
    throw DomainError("characters of Z_" + std::to_string(p_) + "^x and Z_" + std::to_string(o.p_) +
                      "^x cannot be combined");
  }
}

LocAlgChar& LocAlgChar::operator+=(const LocAlgChar& o) {
  check_same_prime(o);
  n_ += o.n_;
  chi_ = (chi_ * o.chi_).primitive_part();
  return *this;
}

LocAlgChar& LocAlgChar::operator-=(const LocAlgChar& o) { return *this += -o; }

LocAlgChar operator-(const LocAlgChar& a) { return LocAlgChar(-a.n_, a.chi_.inv(), a.p_); }

LocAlgChar operator*(i64 k, const LocAlgChar& a) { return LocAlgChar(k * a.n_, a.chi_.pow(k), a.p_); }

bool operator==(const LocAlgChar& a, const LocAlgChar& b) {
  return a.p_ == b.p_ && a.n_ == b.n_ && a.chi_ == b.chi_;
}

std::string LocAlgChar::to_string() const {
  if (chi_.is_trivial()) return std::to_string(n_);
  return std::to_string(n_) + " + [" + chi_.to_string() + "]";
}

// ---------------------------------------------------------------------------
// Slices

bool slice_membership(const SlicePoint& point, Slice flavor, const LocAlgChar& tau) {
  const u64 p = point.kappa1.prime();
  if (point.kappa2.prime() != p || point.sigma.prime() != p || tau.prime() != p) return false;
  if (flavor == Slice::spade) return point.sigma == point.kappa1 - 1 - tau;
  return point.sigma == point.kappa2 + tau;
}

LocAlgChar slice_intersection(const LocAlgChar& tau, const LocAlgChar& tau_prime, const LocAlgChar& kappa1) {
  return kappa1 - (tau + tau_prime + 1);
}

std::string to_string(Slice flavor) { return flavor == Slice::spade ? "spade" : "diamond"; }

}  // namespace rankin
