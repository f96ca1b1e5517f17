#include "rankin/complex_ap.hpp"

#include "rankin/arith.hpp"

#include <algorithm>
#include <sstream>

namespace rankin {
namespace {

BigFloat at(const BigFloat& x, unsigned digits) { return BigFloat(x, digits); }

BigFloat from_mpq(const mpq_class& q, unsigned digits) {
  BigFloat num(0, digits);
  BigFloat den(0, digits);
  mpfr_set_z(num.backend().data(), q.get_num_mpz_t(), MPFR_RNDN);
  mpfr_set_z(den.backend().data(), q.get_den_mpz_t(), MPFR_RNDN);
  return num / den;
}

}  // namespace

ComplexAP::ComplexAP(unsigned digits) : re_(0, digits), im_(0, digits), digits_(digits) {
  if (digits == 0) throw DomainError("ComplexAP: precision must be at least one digit");
}

ComplexAP::ComplexAP(const BigFloat& re, const BigFloat& im, unsigned digits)
    : re_(at(re, digits)), im_(at(im, digits)), digits_(digits) {
  if (digits == 0) throw DomainError("ComplexAP: precision must be at least one digit");
}

ComplexAP ComplexAP::from_rational(const mpq_class& q, unsigned digits) {
  return ComplexAP(from_mpq(q, digits), BigFloat(0, digits), digits);
}

ComplexAP ComplexAP::from_decimal(const std::string& text, unsigned digits) {
  BigFloat v(0, digits);
  if (mpfr_set_str(v.backend().data(), text.c_str(), 10, MPFR_RNDN) != 0) {
    throw DataError("not a decimal number: '" + text + "'");
  }
  return ComplexAP(v, BigFloat(0, digits), digits);
}

ComplexAP ComplexAP::pi(unsigned digits) {
  BigFloat v(0, digits);
  mpfr_const_pi(v.backend().data(), MPFR_RNDN);
  return ComplexAP(v, BigFloat(0, digits), digits);
}

ComplexAP ComplexAP::root_of_unity(long long num, unsigned long long den, unsigned digits) {
  if (den == 0) throw DomainError("root_of_unity: zero order");
  const long long r = mod(num, static_cast<long long>(den));
  // Exact values at the quarter turns keep embeddings of i and -1 clean.
  if ((4 * static_cast<unsigned long long>(r)) % den == 0) {
    const auto quarter = 4 * static_cast<unsigned long long>(r) / den;
    static constexpr int kRe[4] = {1, 0, -1, 0};
    static constexpr int kIm[4] = {0, 1, 0, -1};
    return ComplexAP(BigFloat(kRe[quarter], digits), BigFloat(kIm[quarter], digits), digits);
  }
  const unsigned work = digits + 10;
  BigFloat angle(0, work);
  mpfr_const_pi(angle.backend().data(), MPFR_RNDN);
  angle *= 2 * r;
  angle /= BigFloat(den, work);
  return ComplexAP(boost::multiprecision::cos(angle), boost::multiprecision::sin(angle), digits);
}

ComplexAP ComplexAP::at_digits(unsigned digits) const { return ComplexAP(re_, im_, digits); }

ComplexAP ComplexAP::conj() const { return ComplexAP(re_, -im_, digits_); }

BigFloat ComplexAP::norm() const { return re_ * re_ + im_ * im_; }

BigFloat ComplexAP::abs() const { return boost::multiprecision::sqrt(norm()); }

bool ComplexAP::is_zero() const { return re_ == 0 && im_ == 0; }

ComplexAP ComplexAP::sqrt() const {
  const BigFloat r = abs();
  if (r == 0) return ComplexAP(digits_);
  BigFloat a = boost::multiprecision::sqrt((r + re_) / 2);
  BigFloat b = boost::multiprecision::sqrt((r - re_) / 2);
  if (im_ < 0) b = -b;
  return ComplexAP(a, b, digits_);
}

ComplexAP ComplexAP::pow(long long e) const {
  ComplexAP base = *this;
  if (e < 0) {
    base = ComplexAP(BigFloat(1, digits_), BigFloat(0, digits_), digits_) / base;
    e = -e;
  }
  ComplexAP out(BigFloat(1, digits_), BigFloat(0, digits_), digits_);
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

ComplexAP& ComplexAP::operator+=(const ComplexAP& o) {
  const unsigned d = std::min(digits_, o.digits_);
  re_ = at(re_, d) + at(o.re_, d);
  im_ = at(im_, d) + at(o.im_, d);
  digits_ = d;
  return *this;
}

ComplexAP& ComplexAP::operator-=(const ComplexAP& o) {
  const unsigned d = std::min(digits_, o.digits_);
  re_ = at(re_, d) - at(o.re_, d);
  im_ = at(im_, d) - at(o.im_, d);
  digits_ = d;
  return *this;
}

ComplexAP& ComplexAP::operator*=(const ComplexAP& o) {
  const unsigned d = std::min(digits_, o.digits_);
  const BigFloat a = at(re_, d);
  const BigFloat b = at(im_, d);
  const BigFloat c = at(o.re_, d);
  const BigFloat e = at(o.im_, d);
  re_ = a * c - b * e;
  im_ = a * e + b * c;
  digits_ = d;
  return *this;
}

ComplexAP& ComplexAP::operator/=(const ComplexAP& o) {
  if (o.is_zero()) throw ArithmeticError("ComplexAP: division by zero");
  const unsigned d = std::min(digits_, o.digits_);
  const BigFloat a = at(re_, d);
  const BigFloat b = at(im_, d);
  const BigFloat c = at(o.re_, d);
  const BigFloat e = at(o.im_, d);
  const BigFloat den = c * c + e * e;
  re_ = (a * c + b * e) / den;
  im_ = (b * c - a * e) / den;
  digits_ = d;
  return *this;
}

ComplexAP operator-(const ComplexAP& a) { return ComplexAP(-a.re_, -a.im_, a.digits_); }

BigFloat distance(const ComplexAP& a, const ComplexAP& b) { return (a - b).abs(); }

BigFloat ten_to_minus(int k, unsigned digits) {
  BigFloat ten(10, digits);
  return boost::multiprecision::pow(ten, BigFloat(-k, digits));
}

std::string format_float(const BigFloat& x, unsigned digits) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(static_cast<int>(digits) - 1) << x;
  return os.str();
}

std::string ComplexAP::real_string() const { return format_float(re_, digits_); }
std::string ComplexAP::imag_string() const { return format_float(im_, digits_); }

std::string ComplexAP::to_string() const {
  return real_string() + (im_ < 0 ? " - " : " + ") + format_float(boost::multiprecision::abs(im_), digits_) +
         "i";
}

}  // namespace rankin
