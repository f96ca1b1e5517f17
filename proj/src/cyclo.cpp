#include "rankin/cyclo.hpp"

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace rankin {
namespace {

std::atomic<u64> g_modulus_cap{1000000};

// Phi_M = x^phi + sum of low_terms (degree, coefficient).
struct PhiData {
  u64 phi = 0;
  std::vector<std::pair<u64, i64>> low_terms;
};

std::vector<i64> squarefree_cyclotomic(u64 m) {
  // Phi_m(x) = prod_{d | m} (x^d - 1)^mu(m/d); multiply first, divide after.
  std::vector<i64> poly{1};
  std::vector<u64> dividers;
  for (u64 d : divisors(m)) {
    const int mu = moebius(m / d);
    if (mu == 1) {
      std::vector<i64> next(poly.size() + d, 0);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i + d] += poly[i];
        next[i] -= poly[i];
      }
      poly = std::move(next);
    } else if (mu == -1) {
      dividers.push_back(d);
    }
  }
  for (u64 d : dividers) {
    // p_m = q_{m-d} - q_m, solved from the top.
    const std::size_t n = poly.size() - 1;
    std::vector<i64> q(n - d + 1, 0);
    for (std::size_t m2 = n; m2 >= d; --m2) {
      const i64 upper = m2 <= n - d ? q[m2] : 0;
      q[m2 - d] = poly[m2] + upper;
      if (m2 == d) break;
    }
    poly = std::move(q);
  }
  return poly;
}

std::shared_ptr<const PhiData> phi_data(u64 modulus) {
  static std::mutex mu;
  static std::map<u64, std::shared_ptr<const PhiData>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(modulus); it != cache.end()) return it->second;
  }
  const auto poly = cyclotomic_polynomial(modulus);
  auto data = std::make_shared<PhiData>();
  data->phi = poly.size() - 1;
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    if (poly[i] != 0) data->low_terms.emplace_back(i, poly[i]);
  }
  std::lock_guard lock(mu);
  return cache.emplace(modulus, std::move(data)).first->second;
}

void check_modulus(u64 modulus) {
  if (modulus == 0) throw DomainError("cyclotomic modulus must be positive");
  if (modulus > g_modulus_cap.load()) {
    throw ArithmeticError("cyclotomic modulus " + std::to_string(modulus) + " exceeds the configured cap " +
                          std::to_string(g_modulus_cap.load()));
  }
}

// Reduces an integer polynomial in zeta_M to the power basis.
std::vector<mpz_class> reduce(std::vector<mpz_class> c, u64 modulus) {
  const auto data = phi_data(modulus);
  if (c.size() > modulus) {
    for (std::size_t i = modulus; i < c.size(); ++i) c[i % modulus] += c[i];
    c.resize(modulus);
  }
  const u64 phi = data->phi;
  for (std::size_t i = c.size(); i-- > phi;) {
    if (c[i] == 0) continue;
    const mpz_class t = c[i];
    for (const auto& [e, a] : data->low_terms) c[i - phi + e] -= t * a;
    c[i] = 0;
  }
  c.resize(phi);
  return c;
}

using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Inverse of a modulo m in Q[x], m irreducible; a nonzero of lower degree.
QPoly inverse_mod(QPoly a, QPoly m) {
  trim(a);
  trim(m);
  QPoly r0 = m, r1 = a;
  QPoly s0{}, s1{mpq_class(1)};
  while (r1.size() > 1) {
    QPoly q(r0.size() - r1.size() + 1);
    QPoly r = r0;
    const mpq_class lead = r1.back();
    const std::size_t dr = r1.size() - 1;
    for (std::size_t i = r.size(); i-- > dr;) {
      if (r[i] == 0) continue;
      const mpq_class f = r[i] / lead;
      q[i - dr] = f;
      for (std::size_t j = 0; j < r1.size(); ++j) r[i - dr + j] -= f * r1[j];
    }
    trim(r);
    QPoly s2(std::max(s0.size(), q.size() + s1.size()), mpq_class(0));
    for (std::size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
    }
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw ArithmeticError("cyclotomic element is not invertible");
  for (auto& c : s1) c /= r1[0];
  return s1;
}

}  // namespace

u64 modulus_cap() { return g_modulus_cap.load(); }

void set_modulus_cap(u64 cap) {
  if (cap == 0) throw DomainError("modulus cap must be positive");
  g_modulus_cap.store(cap);
}

std::vector<i64> cyclotomic_polynomial(u64 modulus) {
  check_modulus(modulus);
  u64 rad = 1;
  for (auto [q, e] : factorize(modulus)) rad *= q;
  const u64 stretch = modulus / rad;
  const auto base = squarefree_cyclotomic(rad);
  std::vector<i64> out((base.size() - 1) * stretch + 1, 0);
  for (std::size_t i = 0; i < base.size(); ++i) out[i * stretch] = base[i];
  return out;
}

CycloNumber::CycloNumber() : CycloNumber(mpq_class(0)) {}
CycloNumber::CycloNumber(long value) : CycloNumber(mpq_class(value)) {}
CycloNumber::CycloNumber(const mpz_class& value) : CycloNumber(mpq_class(value)) {}

CycloNumber::CycloNumber(const mpq_class& value)
    : modulus_(1), num_{value.get_num()}, den_(value.get_den()) {}

CycloNumber::CycloNumber(u64 modulus, std::vector<mpz_class> num, mpz_class den)
    : modulus_(modulus), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void CycloNumber::normalize() {
  if (den_ == 0) throw ArithmeticError("zero denominator");
  mpz_class g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (den_ < 0) g = -g;
  if (g != 1) {
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
  if (is_zero()) den_ = 1;
}

CycloNumber CycloNumber::zeta(u64 modulus, i64 e) {
  check_modulus(modulus);
  std::vector<mpz_class> c(modulus, 0);
  c[mod(e, static_cast<i64>(modulus))] = 1;
  return CycloNumber(modulus, reduce(std::move(c), modulus), 1);
}

CycloNumber CycloNumber::from_coeffs(u64 modulus, std::span<const mpq_class> coeffs) {
  check_modulus(modulus);
  mpz_class den = 1;
  for (const auto& q : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> c(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
  return CycloNumber(modulus, reduce(std::move(c), modulus), den);
}

CycloNumber CycloNumber::from_root_sum(u64 modulus, std::span<const mpq_class> by_exponent) {
  if (by_exponent.size() > modulus) throw DomainError("from_root_sum: more exponents than the modulus");
  return from_coeffs(modulus, by_exponent);
}

mpq_class CycloNumber::coeff(std::size_t i) const {
  mpq_class q(num_.at(i), den_);
  q.canonicalize();
  return q;
}

std::vector<mpq_class> CycloNumber::coeffs() const {
  std::vector<mpq_class> out;
  out.reserve(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) out.push_back(coeff(i));
  return out;
}

bool CycloNumber::is_zero() const {
  for (const auto& c : num_) {
    if (c != 0) return false;
  }
  return true;
}

bool CycloNumber::is_rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i) {
    if (num_[i] != 0) return false;
  }
  return true;
}

bool CycloNumber::is_one() const { return is_rational() && num_[0] == den_; }

mpq_class CycloNumber::rational_value() const {
  if (!is_rational()) throw DomainError("cyclotomic value " + to_string() + " is not rational");
  return coeff(0);
}

CycloNumber CycloNumber::lift(u64 target) const {
  if (target == modulus_) return *this;
  if (target % modulus_ != 0) {
    throw DomainError("cannot lift Q(zeta_" + std::to_string(modulus_) + ") into Q(zeta_" +
                      std::to_string(target) + ")");
  }
  check_modulus(target);
  if (is_rational()) {
    std::vector<mpz_class> c(euler_phi(target), 0);
    c[0] = num_[0];
    return CycloNumber(target, std::move(c), den_);
  }
  const u64 k = target / modulus_;
  std::vector<mpz_class> c((num_.size() - 1) * k + 1, 0);
  for (std::size_t i = 0; i < num_.size(); ++i) c[i * k] = num_[i];
  return CycloNumber(target, reduce(std::move(c), target), den_);
}

CycloNumber CycloNumber::project(u64 target) const {
  if (target == modulus_) return *this;
  if (target == 0 || modulus_ % target != 0) {
    throw DomainError("Q(zeta_" + std::to_string(target) + ") is not a subfield of Q(zeta_" +
                      std::to_string(modulus_) + ")");
  }
  const std::size_t rows = num_.size();
  const std::size_t cols = euler_phi(target);
  const u64 k = modulus_ / target;
  // Columns are the images of zeta_target^i; the last column is the target.
  std::vector<std::vector<mpq_class>> m(rows, std::vector<mpq_class>(cols + 1, mpq_class(0)));
  for (std::size_t i = 0; i < cols; ++i) {
    const auto img = zeta(modulus_, static_cast<i64>(i * k));
    for (std::size_t r = 0; r < rows; ++r) m[r][i] = img.coeff(r);
  }
  for (std::size_t r = 0; r < rows; ++r) m[r][cols] = coeff(r);
  std::vector<std::size_t> pivot_row(cols, rows);
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t sel = row;
    while (sel < rows && m[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[row]);
    const mpq_class lead = m[row][col];
    for (auto& v : m[row]) v /= lead;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      const mpq_class f = m[r][col];
      for (std::size_t c = col; c <= cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivot_row[col] = row;
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r) {
    if (m[r][cols] != 0) {
      throw DomainError(to_string() + " does not lie in Q(zeta_" + std::to_string(target) + ")");
    }
  }
  std::vector<mpq_class> x(cols, mpq_class(0));
  for (std::size_t col = 0; col < cols; ++col) {
    if (pivot_row[col] < rows) x[col] = m[pivot_row[col]][cols];
  }
  return from_coeffs(target, x);
}

CycloNumber CycloNumber::minimal() const {
  if (is_rational()) return CycloNumber(rational_value());
  for (u64 d : divisors(modulus_)) {
    if (d == modulus_) break;
    try {
      return project(d);
    } catch (const DomainError&) {
    }
  }
  return *this;
}

CycloNumber CycloNumber::galois(i64 t) const {
  const auto m = static_cast<i64>(modulus_);
  if (gcd(static_cast<u64>(mod(t, m)), modulus_) != 1) {
    throw DomainError("galois: " + std::to_string(t) + " is not a unit modulo " + std::to_string(modulus_));
  }
  std::vector<mpz_class> c(modulus_, 0);
  for (std::size_t i = 0; i < num_.size(); ++i) c[mod(static_cast<i64>(i) * t, m)] += num_[i];
  return CycloNumber(modulus_, reduce(std::move(c), modulus_), den_);
}

CycloNumber CycloNumber::inv() const {
  if (is_zero()) throw ArithmeticError("division by zero in Q(zeta_" + std::to_string(modulus_) + ")");
  if (is_rational()) {
    std::vector<mpz_class> c(num_.size(), 0);
    c[0] = den_;
    return CycloNumber(modulus_, std::move(c), num_[0]);
  }
  const auto phi_poly = cyclotomic_polynomial(modulus_);
  QPoly m(phi_poly.size());
  for (std::size_t i = 0; i < phi_poly.size(); ++i) m[i] = phi_poly[i];
  QPoly a(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) a[i] = num_[i];
  QPoly s = inverse_mod(std::move(a), std::move(m));
  for (auto& c : s) c *= den_;
  return from_coeffs(modulus_, s);
}

CycloNumber CycloNumber::pow(i64 e) const {
  CycloNumber base = e < 0 ? inv() : *this;
  u64 n = e < 0 ? static_cast<u64>(-e) : static_cast<u64>(e);
  CycloNumber out = CycloNumber(1).lift(modulus_);
  while (n > 0) {
    if (n & 1U) out *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return out;
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& o) {
  if (modulus_ != o.modulus_) {
    const u64 l = lcm(modulus_, o.modulus_);
    *this = lift(l);
    return *this += o.lift(l);
  }
  if (den_ == o.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
  } else {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * o.den_ + o.num_[i] * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& o) { return *this += -o; }

CycloNumber& CycloNumber::operator*=(const mpq_class& q) {
  for (auto& c : num_) c *= q.get_num();
  den_ *= q.get_den();
  normalize();
  return *this;
}

CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
  if (a.modulus_ != b.modulus_) {
    if (b.modulus_ == 1) {
      CycloNumber out = a;
      return out *= b.rational_value();
    }
    if (a.modulus_ == 1) {
      CycloNumber out = b;
      return out *= a.rational_value();
    }
    const u64 l = lcm(a.modulus_, b.modulus_);
    return a.lift(l) * b.lift(l);
  }
  if (a.is_rational()) {
    CycloNumber out = b;
    return out *= a.rational_value();
  }
  if (b.is_rational()) {
    CycloNumber out = a;
    return out *= b.rational_value();
  }
  const std::size_t n = a.num_.size();
  std::vector<mpz_class> c(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.num_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b.num_[j] == 0) continue;
      mpz_addmul(c[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
    }
  }
  return CycloNumber(a.modulus_, reduce(std::move(c), a.modulus_), a.den_ * b.den_);
}

CycloNumber& CycloNumber::operator*=(const CycloNumber& o) { return *this = *this * o; }
CycloNumber& CycloNumber::operator/=(const CycloNumber& o) { return *this = *this / o; }

CycloNumber operator-(CycloNumber a) {
  for (auto& c : a.num_) c = -c;
  return a;
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
  if (a.modulus_ != b.modulus_) {
    if (a.is_rational() && b.is_rational()) return a.rational_value() == b.rational_value();
    const u64 l = lcm(a.modulus_, b.modulus_);
    return a.lift(l) == b.lift(l);
  }
  return a.den_ == b.den_ && a.num_ == b.num_;
}

ComplexAP CycloNumber::embed(unsigned digits) const {
  const unsigned work = digits + 10;
  ComplexAP acc(work);
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    acc += ComplexAP::from_rational(mpq_class(num_[i]), work) *
           ComplexAP::root_of_unity(static_cast<long long>(i), modulus_, work);
  }
  acc /= ComplexAP::from_rational(mpq_class(den_), work);
  return acc.at_digits(digits);
}

std::string CycloNumber::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    mpq_class c = coeff(i);
    const bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      os << "z" << modulus_;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace rankin
