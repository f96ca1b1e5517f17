#include "rankin/algebraic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace rankin {
namespace {

std::vector<RootPtr> merge_roots(const std::vector<RootPtr>& a, const std::vector<RootPtr>& b) {
  std::vector<RootPtr> out;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out),
             [](const RootPtr& x, const RootPtr& y) { return x->id < y->id; });
  out.erase(std::unique(out.begin(), out.end(), [](const RootPtr& x, const RootPtr& y) { return x->id == y->id; }),
            out.end());
  return out;
}

RootPtr intern_root(const CycloNumber& trace, const CycloNumber& norm) {
  static std::mutex mu;
  static std::map<std::string, RootPtr> table;
  static u64 next_id = 1;
  const auto s = trace.minimal();
  const auto t = norm.minimal();
  const std::string key = std::to_string(s.modulus()) + ":" + s.to_string() + "|" + std::to_string(t.modulus()) +
                          ":" + t.to_string();
  std::lock_guard lock(mu);
  if (auto it = table.find(key); it != table.end()) return it->second;
  auto root = std::make_shared<const QuadraticRoot>(QuadraticRoot{next_id++, s, t});
  table.emplace(key, root);
  return root;
}

bool rational_sqrt(const mpq_class& q, mpq_class& out) {
  if (q < 0) return false;
  mpz_class n = q.get_num(), d = q.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0) return false;
  mpz_sqrt(n.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(d.get_mpz_t(), d.get_mpz_t());
  out = mpq_class(n, d);
  out.canonicalize();
  return true;
}

}  // namespace

ComplexAP root_value(const QuadraticRoot& root, unsigned digits) {
  const unsigned work = digits + 10;
  const ComplexAP s = root.trace.embed(work);
  const ComplexAP t = root.norm.embed(work);
  const ComplexAP four = ComplexAP::from_rational(4, work);
  const ComplexAP two = ComplexAP::from_rational(2, work);
  return ((s + (s * s - four * t).sqrt()) / two).at_digits(digits);
}

AlgNumber::AlgNumber(const CycloNumber& c) : comps_{c} {}

AlgNumber AlgNumber::from_components(std::vector<RootPtr> roots, std::vector<CycloNumber> comps) {
  if (comps.size() != (std::size_t{1} << roots.size())) {
    throw DomainError("AlgNumber: expected 2^r components");
  }
  std::vector<std::size_t> order(roots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return roots[a]->id < roots[b]->id; });
  AlgNumber out;
  out.roots_.clear();
  for (std::size_t i : order) out.roots_.push_back(roots[i]);
  out.comps_.assign(comps.size(), CycloNumber());
  for (std::size_t mask = 0; mask < comps.size(); ++mask) {
    std::size_t target = 0;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      if ((mask >> order[pos]) & 1U) target |= std::size_t{1} << pos;
    }
    out.comps_[target] = comps[mask];
  }
  out.normalize();
  return out;
}

AlgNumber AlgNumber::quadratic_root(const CycloNumber& trace, const CycloNumber& norm, bool plus_branch) {
  if (trace.is_rational() && norm.is_rational()) {
    const mpq_class s = trace.rational_value();
    const mpq_class disc = s * s - 4 * norm.rational_value();
    mpq_class r;
    if (rational_sqrt(disc, r)) {
      mpq_class v = plus_branch ? mpq_class((s + r) / 2) : mpq_class((s - r) / 2);
      v.canonicalize();
      return AlgNumber(CycloNumber(v));
    }
  }
  if (norm.is_zero()) {
    // Roots trace and 0; decide which one the principal square root selects.
    const auto st = trace.embed(40);
    const auto plus = (st + (st * st).sqrt()) / ComplexAP::from_rational(2, 40);
    const bool plus_is_trace = distance(plus, st) < distance(plus, ComplexAP(40));
    return AlgNumber(plus_branch == plus_is_trace ? trace : CycloNumber());
  }
  const RootPtr root = intern_root(trace, norm);
  AlgNumber x;
  x.roots_ = {root};
  x.comps_ = {CycloNumber(), CycloNumber(1)};
  if (plus_branch) return x;
  return AlgNumber(root->trace) - x;
}

const CycloNumber& AlgNumber::as_cyclotomic() const {
  if (!is_cyclotomic()) throw DomainError("value " + to_string() + " involves an adjoined quadratic root");
  return comps_.front();
}

bool AlgNumber::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const CycloNumber& c) { return c.is_zero(); });
}

AlgNumber AlgNumber::with_roots(const std::vector<RootPtr>& roots) const {
  if (roots.size() == roots_.size()) return *this;
  std::vector<std::size_t> pos(roots_.size());
  for (std::size_t i = 0, j = 0; i < roots_.size(); ++i) {
    while (roots[j]->id != roots_[i]->id) ++j;
    pos[i] = j;
  }
  AlgNumber out;
  out.roots_ = roots;
  out.comps_.assign(std::size_t{1} << roots.size(), CycloNumber());
  for (std::size_t mask = 0; mask < comps_.size(); ++mask) {
    std::size_t target = 0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if ((mask >> i) & 1U) target |= std::size_t{1} << pos[i];
    }
    out.comps_[target] = comps_[mask];
  }
  return out;
}

void AlgNumber::normalize() {
  for (std::size_t i = roots_.size(); i-- > 0;) {
    const std::size_t bit = std::size_t{1} << i;
    bool used = false;
    for (std::size_t mask = 0; mask < comps_.size() && !used; ++mask) {
      if ((mask & bit) != 0 && !comps_[mask].is_zero()) used = true;
    }
    if (used) continue;
    std::vector<CycloNumber> next;
    next.reserve(comps_.size() / 2);
    for (std::size_t mask = 0; mask < comps_.size(); ++mask) {
      if ((mask & bit) == 0) next.push_back(comps_[mask]);
    }
    comps_ = std::move(next);
    roots_.erase(roots_.begin() + static_cast<std::ptrdiff_t>(i));
  }
}

AlgNumber& AlgNumber::operator+=(const AlgNumber& o) {
  if (roots_.size() == o.roots_.size() &&
      std::equal(roots_.begin(), roots_.end(), o.roots_.begin(),
                 [](const RootPtr& a, const RootPtr& b) { return a->id == b->id; })) {
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    normalize();
    return *this;
  }
  const auto all = merge_roots(roots_, o.roots_);
  *this = with_roots(all);
  const AlgNumber rhs = o.with_roots(all);
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += rhs.comps_[i];
  normalize();
  return *this;
}

AlgNumber& AlgNumber::operator-=(const AlgNumber& o) { return *this += -o; }

AlgNumber operator-(AlgNumber a) {
  for (auto& c : a.comps_) c = -c;
  return a;
}

AlgNumber operator*(const AlgNumber& a, const AlgNumber& b) {
  if (a.is_cyclotomic() && b.is_cyclotomic()) return AlgNumber(a.comps_[0] * b.comps_[0]);
  if (b.is_cyclotomic()) {
    AlgNumber out = a;
    for (auto& c : out.comps_) c = c * b.comps_[0];
    out.normalize();
    return out;
  }
  if (a.is_cyclotomic()) return b * a;
  const auto all = merge_roots(a.roots_, b.roots_);
  const AlgNumber x = a.with_roots(all);
  const AlgNumber y = b.with_roots(all);
  AlgNumber out;
  out.roots_ = all;
  out.comps_.assign(x.comps_.size(), CycloNumber());
  for (std::size_t ma = 0; ma < x.comps_.size(); ++ma) {
    if (x.comps_[ma].is_zero()) continue;
    for (std::size_t mb = 0; mb < y.comps_.size(); ++mb) {
      if (y.comps_[mb].is_zero()) continue;
      const CycloNumber c = x.comps_[ma] * y.comps_[mb];
      const std::size_t base = ma ^ mb;
      const std::size_t both = ma & mb;
      // X_i^2 = s_i X_i - t_i for every i in both.
      for (std::size_t d = both;; d = (d - 1) & both) {
        CycloNumber term = c;
        for (std::size_t i = 0; i < all.size(); ++i) {
          const std::size_t bit = std::size_t{1} << i;
          if ((both & bit) == 0) continue;
          term = term * ((d & bit) != 0 ? all[i]->trace : -all[i]->norm);
        }
        out.comps_[base | d] += term;
        if (d == 0) break;
      }
    }
  }
  out.normalize();
  return out;
}

AlgNumber& AlgNumber::operator*=(const AlgNumber& o) { return *this = *this * o; }

AlgNumber AlgNumber::inv() const {
  if (is_zero()) throw ArithmeticError("division by zero");
  if (is_cyclotomic()) return AlgNumber(comps_[0].inv());
  // Split off the last root X: value = A + B X.
  const std::size_t half = comps_.size() / 2;
  std::vector<RootPtr> rest(roots_.begin(), roots_.end() - 1);
  const RootPtr& root = roots_.back();
  const AlgNumber a = from_components(rest, std::vector<CycloNumber>(comps_.begin(), comps_.begin() + static_cast<std::ptrdiff_t>(half)));
  const AlgNumber b = from_components(rest, std::vector<CycloNumber>(comps_.begin() + static_cast<std::ptrdiff_t>(half), comps_.end()));
  const AlgNumber s(root->trace);
  const AlgNumber t(root->norm);
  const AlgNumber relative_norm = a * a + s * a * b + t * b * b;
  if (relative_norm.is_zero()) {
    throw ArithmeticError("value " + to_string() + " is a zero divisor (reducible Hecke polynomial)");
  }
  AlgNumber x;
  x.roots_ = {root};
  x.comps_ = {CycloNumber(), CycloNumber(1)};
  return (a + s * b - b * x) * relative_norm.inv();
}

AlgNumber AlgNumber::pow(i64 e) const {
  AlgNumber base = e < 0 ? inv() : *this;
  u64 n = e < 0 ? static_cast<u64>(-e) : static_cast<u64>(e);
  AlgNumber out(1);
  while (n > 0) {
    if (n & 1U) out *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return out;
}

bool operator==(const AlgNumber& a, const AlgNumber& b) {
  const auto all = merge_roots(a.roots_, b.roots_);
  const AlgNumber x = a.with_roots(all);
  const AlgNumber y = b.with_roots(all);
  for (std::size_t i = 0; i < x.comps_.size(); ++i) {
    if (!(x.comps_[i] == y.comps_[i])) return false;
  }
  return true;
}

ComplexAP AlgNumber::embed(unsigned digits) const {
  if (is_cyclotomic()) return comps_[0].embed(digits);
  const unsigned work = digits + 10;
  std::vector<ComplexAP> values;
  values.reserve(roots_.size());
  for (const auto& r : roots_) values.push_back(root_value(*r, work));
  ComplexAP acc(work);
  for (std::size_t mask = 0; mask < comps_.size(); ++mask) {
    if (comps_[mask].is_zero()) continue;
    ComplexAP term = comps_[mask].embed(work);
    for (std::size_t i = 0; i < roots_.size(); ++i) {
      if ((mask >> i) & 1U) term *= values[i];
    }
    acc += term;
  }
  return acc.at_digits(digits);
}

std::string AlgNumber::to_string() const {
  if (is_cyclotomic()) return comps_[0].to_string();
  std::ostringstream os;
  bool first = true;
  for (std::size_t mask = 0; mask < comps_.size(); ++mask) {
    if (comps_[mask].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << comps_[mask].to_string() << ")";
    for (std::size_t i = 0; i < roots_.size(); ++i) {
      if ((mask >> i) & 1U) os << "*X" << roots_[i]->id;
    }
  }
  if (first) os << "0";
  os << "  where";
  for (const auto& r : roots_) {
    os << " X" << r->id << "^2 - (" << r->trace.to_string() << ")X" << r->id << " + (" << r->norm.to_string()
       << ") = 0;";
  }
  return os.str();
}

}  // namespace rankin
