// rankin: q-expansions, identity checks, L-values and interpolation factors.

#include "rankin/io.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

using namespace rankin;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kFailed = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool g_pretty = false;

void emit(const Json& j, const std::string& pretty) {
  if (g_pretty) {
    std::cout << pretty << '\n';
  } else {
    std::cout << j.dump() << '\n';
  }
}

i64 parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const i64 v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(what + ": expected an integer, got '" + s + "'");
}

u64 parse_positive(const std::string& s, const std::string& what) {
  const i64 v = parse_int(s, what);
  if (v <= 0) throw UsageError(what + " must be positive");
  return static_cast<u64>(v);
}

/// "a..b" or "a".
std::vector<i64> parse_range(const std::string& s, const std::string& what) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) return {parse_int(s, what)};
  const i64 lo = parse_int(s.substr(0, dots), what);
  const i64 hi = parse_int(s.substr(dots + 2), what);
  if (hi < lo) throw UsageError(what + ": empty range " + s);
  std::vector<i64> out;
  for (i64 v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

/// The prime p when chi has conductor a power of p, 0 for trivial chi.
u64 prime_of(const DirichletCharacter& chi) {
  const u64 c = chi.conductor();
  if (c == 1) return 0;
  const auto [q, e] = prime_power(c);
  if (e < 1) throw UsageError("character of conductor " + std::to_string(c) + " is not of prime-power conductor");
  return q;
}

u64 resolve_prime(std::optional<u64> given, const std::vector<DirichletCharacter>& chars) {
  u64 p = given.value_or(0);
  for (const auto& c : chars) {
    const u64 q = prime_of(c);
    if (q == 0) continue;
    if (p == 0) p = q;
    if (q != p) throw UsageError("character conductor is not a power of p = " + std::to_string(p));
  }
  if (p == 0) throw UsageError("no prime p given and none implied by a character");
  if (!is_prime(p)) throw UsageError("p = " + std::to_string(p) + " is not prime");
  return p;
}

DirichletCharacter finite_part(const DirichletCharacter& chi) { return chi.primitive_part(); }

Json value_strings(const std::vector<CycloNumber>& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(c.to_string());
  return out;
}

Json value_strings(const std::vector<AlgNumber>& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(c.to_string());
  return out;
}

template <class C>
std::string pretty_series(const std::string& head, const std::vector<C>& v) {
  std::ostringstream os;
  os << head;
  for (std::size_t n = 0; n < v.size(); ++n) os << "\n  q^" << n << ": " << v[n].to_string();
  return os.str();
}

// ---------------------------------------------------------------------------
// qexp

class KeyValues {
 public:
  explicit KeyValues(const std::vector<std::string>& tokens) {
    for (const auto& t : tokens) {
      const auto eq = t.find('=');
      if (eq == std::string::npos || eq == 0) {
        bare_.push_back(t);
        continue;
      }
      if (!kv_.emplace(t.substr(0, eq), t.substr(eq + 1)).second) throw UsageError("duplicate key " + t.substr(0, eq));
    }
  }
  std::optional<std::string> get(const std::string& key) {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return std::nullopt;
    used_.push_back(key);
    return it->second;
  }
  std::string need(const std::string& key) {
    auto v = get(key);
    if (!v) throw UsageError("missing " + key + "=...");
    return *v;
  }
  std::optional<i64> get_int(const std::string& key) {
    auto v = get(key);
    if (!v) return std::nullopt;
    return parse_int(*v, key);
  }
  i64 need_int(const std::string& key) { return parse_int(need(key), key); }
  std::optional<u64> get_positive(const std::string& key) {
    auto v = get(key);
    if (!v) return std::nullopt;
    return parse_positive(*v, key);
  }
  DirichletCharacter character(const std::string& key) {
    auto v = get(key);
    if (!v) return DirichletCharacter::trivial(1);
    return finite_part(resolve_character(*v));
  }
  [[nodiscard]] const std::vector<std::string>& bare() const { return bare_; }
  void finish() const {
    for (const auto& [k, v] : kv_) {
      if (std::find(used_.begin(), used_.end(), k) == used_.end()) throw UsageError("unknown key " + k + "=" + v);
    }
  }

 private:
  std::map<std::string, std::string> kv_;
  std::vector<std::string> bare_;
  std::vector<std::string> used_;
};

template <class C>
BasicQExpansion<C> maybe_theta(BasicQExpansion<C> f, KeyValues& kv, std::optional<u64> p) {
  const auto t = kv.get_int("theta");
  const auto tchi = kv.character("thetachi");
  if (!t && tchi.is_trivial()) return f;
  const u64 q = resolve_prime(p, {tchi});
  return theta_twist(f, LocAlgChar(t.value_or(0), tchi, q));
}

int cmd_qexp(const std::vector<std::string>& spec, std::size_t prec) {
  if (spec.empty()) throw UsageError("qexp needs a kind: eisE, eisF, scriptE, tildeE or form");
  const std::string kind = spec.front();
  KeyValues kv(std::vector<std::string>(spec.begin() + 1, spec.end()));
  std::string joined;
  for (const auto& s : spec) joined += (joined.empty() ? "" : " ") + s;

  Json out{{"command", "qexp"}, {"spec", joined}, {"prec", prec}};
  std::string head;
  auto finish_cyclo = [&](const QExpansion& f) {
    out["weight"] = f.weight() ? Json(f.weight()->to_string()) : Json(nullptr);
    out["values"] = value_strings(f.coeffs());
    out["coeffs"] = to_json(f);
    emit(out, pretty_series(joined + "  (prec " + std::to_string(prec) + ")", f.coeffs()));
    return kOk;
  };

  if (kind == "eisE" || kind == "eisF") {
    if (!kv.bare().empty()) throw UsageError("unexpected argument " + kv.bare().front());
    const i64 k = kv.need_int("k");
    const auto chi = kv.character("chi");
    const u64 N = parse_positive(kv.need("N"), "N");
    const u64 p = resolve_prime(kv.get_positive("p"), {chi});
    const LocAlgChar kappa(k, chi, p);
    auto f = kind == "eisE" ? eis_E(kappa, N, prec) : eis_F(kappa, N, prec);
    f = maybe_theta(f, kv, p);
    kv.finish();
    return finish_cyclo(f);
  }
  if (kind == "scriptE") {
    if (!kv.bare().empty()) throw UsageError("unexpected argument " + kv.bare().front());
    const i64 k1 = kv.need_int("k1"), k2 = kv.need_int("k2");
    const auto chi1 = kv.character("chi1"), chi2 = kv.character("chi2"), chi = kv.character("chi");
    auto j = kv.get_int("j");
    if (const auto s = kv.get_int("sigma")) {
      if (j) throw UsageError("give j= or sigma=, not both");
      j = s;
    }
    if (!j) throw UsageError("missing j=...");
    const u64 N = parse_positive(kv.need("N"), "N");
    const u64 p = resolve_prime(kv.get_positive("p"), {chi1, chi2, chi});
    auto f = eis_script(LocAlgChar(k1, chi1, p), LocAlgChar(k2, chi2, p), LocAlgChar(*j, chi, p), N, prec);
    f = maybe_theta(f, kv, p);
    kv.finish();
    return finish_cyclo(f);
  }
  if (kind == "tildeE") {
    if (!kv.bare().empty()) throw UsageError("unexpected argument " + kv.bare().front());
    const i64 k1 = kv.need_int("k1"), k2 = kv.need_int("k2"), j = kv.need_int("j");
    const auto chi = finite_part(resolve_character(kv.need("chi")));
    const u64 N = parse_positive(kv.need("N"), "N");
    const u64 p = resolve_prime(kv.get_positive("p"), {chi});
    auto f = eis_tilde(k1, k2, j, chi, N, p, prec);
    f = maybe_theta(f, kv, p);
    kv.finish();
    return finish_cyclo(f);
  }
  if (kind == "form") {
    if (kv.bare().size() != 1) throw UsageError("form needs exactly one label");
    FormDatabase db;
    const Eigenform& rec = db.get(kv.bare().front());
    const std::string stab = kv.get("stab").value_or("none");
    HeckeExpansion f;
    if (stab == "none") {
      f = expand(rec.newform(), prec);
    } else if (stab == "alpha" || stab == "+" || stab == "-" || stab == "beta") {
      if (rec.p == 0) throw UsageError("stab needs a form with a prime p (use label@p)");
      if (!rec.crystalline) throw DomainError(rec.label + ": not crystalline at p, already a U_p-eigenform");
      const Eigenform base = rec.newform();
      Eigenform stabilised;
      if (stab == "alpha") stabilised = rec.is_stabilised() ? rec : stabilise(base, true);
      else if (stab == "beta") stabilised = stabilise(base, rec.is_stabilised() ? *rec.beta : stabilise(base, true).beta.value());
      else stabilised = stabilise(base, stab == "+");
      f = expand(stabilised, prec);
      out["alpha"] = to_json(*stabilised.alpha);
    } else {
      throw UsageError("stab must be alpha, beta, + or -");
    }
    f = maybe_theta(f, kv, rec.p == 0 ? std::nullopt : std::optional<u64>(rec.p));
    kv.finish();
    out["weight"] = f.weight() ? Json(f.weight()->to_string()) : Json(nullptr);
    out["values"] = value_strings(f.coeffs());
    out["coeffs"] = to_json(f);
    emit(out, pretty_series(joined + "  (prec " + std::to_string(prec) + ")", f.coeffs()));
    return kOk;
  }
  throw UsageError("unknown qexp kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// verify

struct Tally {
  std::string suite;
  std::size_t checks = 0, failures = 0;

  void record(Json line, bool pass, const std::string& text) {
    ++checks;
    if (!pass) ++failures;
    line["pass"] = pass;
    emit(line, std::string(pass ? "PASS " : "FAIL ") + text);
  }
  int summary() const {
    Json s{{"suite", suite}, {"checks", checks}, {"failures", failures}, {"pass", failures == 0}};
    emit(s, suite + ": " + std::to_string(checks - failures) + "/" + std::to_string(checks) + " pass");
    return failures == 0 ? kOk : kFailed;
  }
};

struct SliceArgs {
  std::string k1 = "12", k2, tau, flavor = "both", chi1, chi2, tauchi, sigmachi;
  std::optional<i64> sigma;
  u64 p = 3, N = 4;
  std::size_t prec = 200;
};

void run_slice(const SliceArgs& a, Tally& t) {
  auto label_char = [](const std::string& s) {
    return s.empty() ? DirichletCharacter::trivial(1) : finite_part(resolve_character(s));
  };
  const auto chi1 = label_char(a.chi1), chi2 = label_char(a.chi2), tchi = label_char(a.tauchi);
  const auto schi = label_char(a.sigmachi);
  const u64 p = resolve_prime(a.p, {chi1, chi2, tchi, schi});
  if (!a.sigma && !schi.is_trivial()) throw UsageError("--sigmachi needs --sigma");
  std::optional<LocAlgChar> sigma;
  if (a.sigma) sigma = LocAlgChar(*a.sigma, schi, p);
  std::vector<Slice> flavors;
  if (a.flavor == "both" || a.flavor == "spade") flavors.push_back(Slice::spade);
  if (a.flavor == "both" || a.flavor == "diamond") flavors.push_back(Slice::diamond);
  if (flavors.empty()) throw UsageError("--flavor must be spade, diamond or both");
  for (i64 k1 : parse_range(a.k1, "--k1")) {
    const auto k2s = a.k2.empty() ? parse_range("1.." + std::to_string(k1 - 2), "--k2") : parse_range(a.k2, "--k2");
    for (i64 k2 : k2s) {
      const auto taus = a.tau.empty() ? parse_range("0.." + std::to_string(std::min<i64>(5, k1 - k2)), "--tau")
                                      : parse_range(a.tau, "--tau");
      for (i64 tau : taus) {
        const LocAlgChar kappa1(k1, chi1, p), kappa2(k2, chi2, p), ta(tau, tchi, p);
        for (Slice fl : flavors) {
          const auto r = verify_slice_identity(fl, kappa1, kappa2, ta, a.N, p, a.prec, sigma);
          Json line{{"suite", "slice"},
                    {"flavor", to_string(fl)},
                    {"kappa1", kappa1.to_string()},
                    {"kappa2", kappa2.to_string()},
                    {"tau", ta.to_string()},
                    {"N", a.N},
                    {"p", p},
                    {"prec", a.prec},
                    {"first_mismatch", r.first_mismatch ? Json(*r.first_mismatch) : Json(nullptr)}};
          if (sigma) line["sigma"] = sigma->to_string();
          std::ostringstream os;
          os << "slice " << to_string(fl) << " kappa1=" << kappa1.to_string() << " kappa2=" << kappa2.to_string()
             << " tau=" << ta.to_string() << " N=" << a.N << " p=" << p << " prec=" << a.prec;
          if (r.first_mismatch) os << " first mismatch at q^" << *r.first_mismatch;
          t.record(line, r.holds, os.str());
        }
      }
    }
  }
}

/// Characters from --chi labels, or all primitive characters of the given conductors.
std::vector<DirichletCharacter> character_list(const std::vector<std::string>& labels, std::vector<u64> conductors,
                                               std::optional<u64> p) {
  std::vector<DirichletCharacter> out;
  for (const auto& l : labels) out.push_back(finite_part(resolve_character(l)));
  if (labels.empty() && conductors.empty()) {
    if (!p) throw UsageError("give --chi, --conductor or --p");
    conductors = {*p, *p * *p};
  }
  for (u64 c : conductors) {
    const auto cs = DirichletCharacter::primitive_of_conductor(c);
    out.insert(out.end(), cs.begin(), cs.end());
  }
  return out;
}

struct TwistArgs {
  i64 k1 = 12, k2 = 2;
  std::string j;
  std::vector<std::string> chi;
  std::vector<u64> conductor;
  std::optional<u64> p;
  u64 N = 4;
  std::size_t prec = 100;
};

void run_twist(const TwistArgs& a, Tally& t) {
  const auto chars = character_list(a.chi, a.conductor, a.p);
  const auto js = a.j.empty() ? parse_range(std::to_string(a.k2) + ".." + std::to_string(a.k1 - 1), "--j")
                              : parse_range(a.j, "--j");
  for (const auto& chi : chars) {
    const u64 p = resolve_prime(a.p, {chi});
    for (i64 j : js) {
      const auto r = verify_twist_identity(a.k1, a.k2, j, chi, a.N, p, a.prec);
      Json line{{"suite", "twist"}, {"k1", a.k1},        {"k2", a.k2},       {"j", j},
                {"chi", character_label(chi)}, {"N", a.N}, {"p", p}, {"prec", a.prec},
                {"first_mismatch", r.first_mismatch ? Json(*r.first_mismatch) : Json(nullptr)}};
      std::ostringstream os;
      os << "twist k1=" << a.k1 << " k2=" << a.k2 << " j=" << j << " chi=" << character_label(chi) << " N=" << a.N
         << " p=" << p << " prec=" << a.prec;
      if (r.first_mismatch) os << " first mismatch at q^" << *r.first_mismatch;
      t.record(line, r.holds, os.str());
    }
  }
}

struct EulerArgs {
  std::string f1 = "11.2.a.a", f2 = "11.2.a.a";
  u64 lmax = 97, bound = 10000;
  std::vector<std::string> chi;
};

void run_euler(const EulerArgs& a, FormDatabase& db, Tally& t) {
  const Eigenform& f1 = db.get(a.f1);
  const Eigenform& f2 = db.get(a.f2);
  const std::vector<std::string> labels = a.chi.empty() ? std::vector<std::string>{"trivial"} : a.chi;
  for (const auto& label : labels) {
    const auto chi = finite_part(resolve_character(label));
    const RankinSeries series(f1, f2, chi);
    const auto table = dirichlet_coefficients(series, a.bound);
    {
      const bool same = table == euler_coefficients(series, a.bound);
      Json line{{"suite", "euler"}, {"f1", a.f1}, {"f2", a.f2}, {"chi", character_label(chi)},
                {"check", "convolution table = Euler product"}, {"n_max", a.bound}};
      t.record(line, same,
               "euler " + a.f1 + " x " + a.f2 + " chi=" + character_label(chi) + " tables agree to n=" +
                   std::to_string(a.bound));
    }
    for (u64 l : primes_up_to(std::min(a.lmax, a.bound))) {
      if (series.is_bad(l)) continue;
      std::size_t terms = 1;
      for (u64 q = l; q <= a.bound / l; q *= l) ++terms;
      const auto inv = inverse_power_series(local_factor(series, l), terms + 1);
      const CycloNumber cl = chi(static_cast<i64>(l));
      std::optional<u64> mismatch;
      CycloNumber cr(1);
      u64 q = 1;
      for (std::size_t r = 1; q <= a.bound / l; ++r) {
        q *= l;
        cr *= cl;
        if (!(table[q] == inv[r] * cr)) {
          mismatch = q;
          break;
        }
      }
      Json line{{"suite", "euler"}, {"f1", a.f1}, {"f2", a.f2}, {"chi", character_label(chi)},
                {"l", l}, {"powers", terms}, {"first_mismatch", mismatch ? Json(*mismatch) : Json(nullptr)}};
      std::ostringstream os;
      os << "euler " << a.f1 << " x " << a.f2 << " chi=" << character_label(chi) << " l=" << l << " (" << terms
         << " powers)";
      if (mismatch) os << " mismatch at n=" << *mismatch;
      t.record(line, !mismatch, os.str());
    }
  }
}

struct InterpCheckArgs {
  std::string f1 = "1.12.a.a@3+", f2 = "11.2.a.a@3+", j;
  std::vector<std::string> chi;
  std::vector<u64> conductor;
};

/// Both formulas apply when f2 is crystalline and chi is non-trivial.
bool overlap_check(const Eigenform& f1, const Eigenform& f2, i64 j, const DirichletCharacter& chi) {
  const PData d{f1.p, *f1.alpha, *f1.beta, *f2.alpha, *f2.beta};
  return euler_E_pair(d, j, chi) == gauss_block_twisted(d, j, chi, chi);
}

void check_pair(const Eigenform& f1, const Eigenform& f2) {
  if (!f1.is_stabilised() || !f2.is_stabilised()) {
    throw DomainError("both forms must be U_p-eigenforms (use label@p+ or label@p-)");
  }
  if (f1.p != f2.p) throw DomainError("the two forms are stabilised at different primes");
}

void run_interp_check(const InterpCheckArgs& a, FormDatabase& db, Tally& t) {
  const Eigenform& f1 = db.get(a.f1);
  const Eigenform& f2 = db.get(a.f2);
  check_pair(f1, f2);
  if (!f2.crystalline) throw DomainError(a.f2 + ": the overlap needs f2 crystalline at p");
  auto conductors = a.conductor;
  if (a.chi.empty() && conductors.empty()) conductors = {f1.p, f1.p * f1.p};
  const auto chars = character_list(a.chi, conductors, f1.p);
  const auto js = a.j.empty() ? parse_range(std::to_string(f2.k) + ".." + std::to_string(f1.k - 1), "--j")
                              : parse_range(a.j, "--j");
  for (const auto& chi : chars) {
    if (prime_of(chi) != f1.p) throw UsageError("character conductor must be a power of p");
    for (i64 j : js) {
      const bool ok = overlap_check(f1, f2, j, chi);
      Json line{{"suite", "interp"}, {"f1", a.f1}, {"f2", a.f2}, {"j", j}, {"chi", character_label(chi)},
                {"check", "crystalline = gauss block"}};
      t.record(line, ok,
               "interp overlap " + a.f1 + " x " + a.f2 + " j=" + std::to_string(j) + " chi=" + character_label(chi));
    }
  }
}

// ---------------------------------------------------------------------------
// lvalue and interp

BigFloat certified_threshold(unsigned digits) { return ten_to_minus(static_cast<int>(digits), digits + 10); }

int cmd_lvalue(const std::vector<std::string>& labels, i64 s, const std::string& chi_label, unsigned digits,
               std::size_t n_max, const std::string& route, const std::string& coefficients) {
  Json out{{"command", "lvalue"}};
  if (!coefficients.empty()) {
    if (!labels.empty()) throw UsageError("give either two form labels or --coefficients");
    std::ifstream in(coefficients);
    if (!in) throw DataError("cannot open " + coefficients);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw DataError(coefficients + ": " + e.what());
    }
    std::vector<CycloNumber> table;
    for (const auto& c : expansion_from_json(j)) table.push_back(c.as_cyclotomic());
    const auto value = dirichlet_sum(table, s, digits);
    out["coefficients"] = coefficients;
    out["s"] = s;
    out["digits"] = digits;
    out["n_max"] = table.empty() ? 0 : table.size() - 1;
    out["region"] = "finite Dirichlet polynomial";
    out["in_region"] = true;
    out["value"] = to_json(value);
    out["tail_bound"] = "0";
    out["converged"] = true;
    emit(out, "L(" + std::to_string(s) + ") = " + value.to_string() + "\n  exact finite sum, tail 0");
    return kOk;
  }
  if (labels.size() != 2) throw UsageError("lvalue needs two form labels");
  if (route != "factored" && route != "euler") throw UsageError("--route must be factored or euler");
  FormDatabase db;
  const auto chi = finite_part(resolve_character(chi_label));
  const RankinSeries series(db.get(labels[0]), db.get(labels[1]), chi);
  const i64 k1 = series.f1().k, k2 = series.f2().k;
  std::ostringstream region;
  region << "s > (k1+k2)/2 + 1 = " << (k1 + k2 + 2) / 2 << ((k1 + k2) % 2 != 0 ? ".5" : "");
  if (2 * s <= series.w() + 4) {
    throw DomainError("s = " + std::to_string(s) + " is outside the region of absolute convergence " +
                      region.str() + "; analytic continuation is not implemented");
  }
  const auto ev = evaluate_L(series, s, digits, n_max, route == "euler" ? LRoute::euler : LRoute::factored);
  const bool converged = ev.tail_bound <= certified_threshold(digits);
  out["f1"] = labels[0];
  out["f2"] = labels[1];
  out["chi"] = character_label(chi);
  out["s"] = s;
  out["digits"] = digits;
  out["n_max"] = ev.n_max;
  out["route"] = route;
  out["region"] = region.str();
  out["in_region"] = true;
  out["value"] = to_json(ev.value);
  out["tail_bound"] = format_float(ev.tail_bound, 6);
  out["converged"] = converged;
  out["pole_warning"] = ev.pole_warning;
  std::ostringstream os;
  os << "L^imp(" << labels[0] << ", " << labels[1] << ", " << character_label(chi) << ", " << s
     << ") = " << ev.value.to_string() << "\n  |error| <= " << format_float(ev.tail_bound, 6) << " (n_max "
     << ev.n_max << ", " << route << " route)\n  region " << region.str() << ": ok\n  "
     << (converged ? "tail below 10^-" : "tail above 10^-") << digits;
  if (ev.pole_warning) os << "\n  warning: f2 looks like a twist of f1 (pole at s = k1)";
  emit(out, os.str());
  return kOk;
}

int cmd_interp(const std::vector<std::string>& labels, i64 j, const std::string& chi_label, unsigned digits,
               const std::optional<std::string>& lvalue, std::size_t n_max) {
  if (labels.size() != 2) throw UsageError("interp needs two form labels");
  FormDatabase db;
  const Eigenform& f1 = db.get(labels[0]);
  const Eigenform& f2 = db.get(labels[1]);
  check_pair(f1, f2);
  const auto chi = finite_part(resolve_character(chi_label));
  if (!chi.is_trivial() && prime_of(chi) != f1.p) throw UsageError("character conductor must be a power of p");
  InterpInput in{f1, f2, j, chi, std::nullopt, n_max};
  if (lvalue) {
    try {
      in.lvalue = ComplexAP::from_decimal(*lvalue, digits + 10);
    } catch (const std::exception&) {
      throw UsageError("--lvalue: not a decimal: " + *lvalue);
    }
  }
  const auto pred = predicted_I(in, digits);
  Json out{{"command", "interp"}, {"f1", labels[0]}, {"f2", labels[1]}, {"j", j}, {"chi", character_label(chi)},
           {"p", f1.p}, {"digits", digits}, {"regime", pred.regime}};
  out["euler_ratio"] = to_json(pred.euler_ratio.at_digits(digits));
  out["archimedean"] = to_json(pred.archimedean.at_digits(digits));
  out["gauss_block"] = to_json(pred.gauss_block.at_digits(digits));
  out["lvalue"] = to_json(pred.lvalue.at_digits(digits));
  out["total"] = to_json(pred.total.at_digits(digits));
  out["lvalue_tail_bound"] = pred.lvalue_tail_bound ? Json(format_float(*pred.lvalue_tail_bound, 6)) : Json(nullptr);
  std::ostringstream os;
  os << "I(" << labels[0] << ", " << labels[1] << ", " << j << " + " << character_label(chi) << ")  [" << pred.regime
     << "]\n  euler_ratio = " << pred.euler_ratio.at_digits(digits).to_string()
     << "\n  archimedean = " << pred.archimedean.at_digits(digits).to_string()
     << "\n  gauss_block = " << pred.gauss_block.at_digits(digits).to_string()
     << "\n  lvalue      = " << pred.lvalue.at_digits(digits).to_string()
     << "\n  total       = " << pred.total.at_digits(digits).to_string();
  if (pred.lvalue_tail_bound) os << "\n  |lvalue error| <= " << format_float(*pred.lvalue_tail_bound, 6);
  emit(out, os.str());

  int code = kOk;
  const ComplexAP product = pred.euler_ratio * pred.archimedean * pred.gauss_block * pred.lvalue;
  const BigFloat scale = std::max(pred.total.abs(), BigFloat(1));
  const bool audit = distance(product, pred.total) <= scale * ten_to_minus(static_cast<int>(digits), digits + 10);
  if (!audit) code = kFailed;
  emit(Json{{"check", "factor product = total"}, {"pass", audit}},
       std::string(audit ? "PASS" : "FAIL") + " factor product = total");
  if (f2.crystalline && !chi.is_trivial()) {
    const bool ok = overlap_check(f1, f2, j, chi);
    if (!ok) code = kFailed;
    emit(Json{{"check", "crystalline = gauss block"}, {"pass", ok}},
         std::string(ok ? "PASS" : "FAIL") + " prefactor agrees in the crystalline overlap");
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact q-expansions, identity checks and Rankin-Selberg L-values"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "json (JSON lines) or pretty")
      ->check(CLI::IsMember({"json", "pretty"}))
      ->capture_default_str();

  auto* qexp = app.add_subcommand("qexp", "print a q-expansion, e.g. 'qexp eisE k=2 N=4 p=3 --prec 3'");
  qexp->fallthrough();
  std::vector<std::string> qspec;
  std::size_t prec = 10;
  qexp->add_option("spec", qspec, "kind (eisE, eisF, scriptE, tildeE, form) and key=value arguments")->required();
  qexp->add_option("--prec", prec, "number of coefficients")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run identity checks");
  verify->fallthrough();
  verify->require_subcommand(1);

  SliceArgs slice;
  auto* vslice = verify->add_subcommand("slice", "theta^tau E = script E on the two slices");
  vslice->fallthrough();
  vslice->add_option("--k1", slice.k1, "integer or range a..b")->capture_default_str();
  vslice->add_option("--k2", slice.k2, "integer or range (default 1..k1-2)");
  vslice->add_option("--tau", slice.tau, "integer or range (default 0..min(5, k1-k2))");
  vslice->add_option("--p", slice.p)->capture_default_str();
  vslice->add_option("--N", slice.N)->capture_default_str();
  vslice->add_option("--prec", slice.prec)->capture_default_str();
  vslice->add_option("--flavor", slice.flavor, "spade, diamond or both")->capture_default_str();
  vslice->add_option("--chi1", slice.chi1, "finite part of kappa1");
  vslice->add_option("--chi2", slice.chi2, "finite part of kappa2");
  vslice->add_option("--tauchi", slice.tauchi, "finite part of tau");
  vslice->add_option("--sigma", slice.sigma, "compare against this third argument instead of the slice value");
  vslice->add_option("--sigmachi", slice.sigmachi, "finite part of --sigma");

  TwistArgs twist;
  auto* vtwist = verify->add_subcommand("twist", "script E(k1, k2, j + chi) = theta^chi tilde E");
  vtwist->fallthrough();
  vtwist->add_option("--k1", twist.k1)->capture_default_str();
  vtwist->add_option("--k2", twist.k2)->capture_default_str();
  vtwist->add_option("--j", twist.j, "integer or range (default k2..k1-1)");
  vtwist->add_option("--chi", twist.chi, "character label (repeatable)");
  vtwist->add_option("--conductor", twist.conductor, "all primitive characters of this conductor (repeatable)");
  vtwist->add_option("--p", twist.p);
  vtwist->add_option("--N", twist.N)->capture_default_str();
  vtwist->add_option("--prec", twist.prec)->capture_default_str();

  EulerArgs euler;
  auto* veuler = verify->add_subcommand("euler", "Dirichlet table against the local Euler factors");
  veuler->fallthrough();
  veuler->add_option("--f1", euler.f1)->capture_default_str();
  veuler->add_option("--f2", euler.f2)->capture_default_str();
  veuler->add_option("--lmax", euler.lmax)->capture_default_str();
  veuler->add_option("--bound", euler.bound, "check l^r up to this bound")->capture_default_str();
  veuler->add_option("--chi", euler.chi, "character label (repeatable, default trivial)");

  InterpCheckArgs icheck;
  auto* vinterp = verify->add_subcommand("interp", "crystalline and Gauss-block prefactors where both apply");
  vinterp->fallthrough();
  vinterp->add_option("--f1", icheck.f1)->capture_default_str();
  vinterp->add_option("--f2", icheck.f2)->capture_default_str();
  vinterp->add_option("--j", icheck.j, "integer or range (default k2..k1-1)");
  vinterp->add_option("--chi", icheck.chi, "character label (repeatable)");
  vinterp->add_option("--conductor", icheck.conductor, "all primitive characters of this conductor (repeatable)");

  auto* vall = verify->add_subcommand("all", "all suites with their default parameters");
  vall->fallthrough();

  std::vector<std::string> lforms;
  i64 lj = 0;
  std::string lchi = "trivial", lroute = "factored", lcoeffs;
  unsigned ldigits = 30;
  std::size_t lnmax = 100000;
  auto* lvalue = app.add_subcommand("lvalue", "L^imp(f1, f2, chi, j) by direct summation");
  lvalue->fallthrough();
  lvalue->add_option("forms", lforms, "two form labels");
  lvalue->add_option("--j", lj, "the point s")->required();
  lvalue->add_option("--chi", lchi)->capture_default_str();
  lvalue->add_option("--digits", ldigits)->capture_default_str()->check(CLI::Range(5U, 1000U));
  lvalue->add_option("--nmax", lnmax)->capture_default_str()->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));
  lvalue->add_option("--route", lroute, "factored or euler")->capture_default_str();
  lvalue->add_option("--coefficients", lcoeffs, "JSON coefficient table [c_0, c_1, ...] instead of forms");

  std::vector<std::string> iforms;
  i64 ij = 0;
  std::string ichi = "trivial", ilvalue;
  unsigned idigits = 30;
  std::size_t inmax = 100000;
  auto* interp = app.add_subcommand("interp", "dissected predicted value of I(f1, f2, j + chi)");
  interp->fallthrough();
  interp->add_option("forms", iforms, "two form labels, stabilised (label@p+)")->required();
  interp->add_option("--j", ij)->required();
  interp->add_option("--chi", ichi)->capture_default_str();
  interp->add_option("--digits", idigits)->capture_default_str()->check(CLI::Range(5U, 1000U));
  auto* ilv = interp->add_option("--lvalue", ilvalue, "use this L-value instead of computing it");
  interp->add_option("--nmax", inmax)->capture_default_str()->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  g_pretty = format == "pretty";

  try {
    if (*qexp) return cmd_qexp(qspec, prec);
    if (*verify) {
      FormDatabase db;
      if (*vslice) {
        Tally t{"slice"};
        run_slice(slice, t);
        return t.summary();
      }
      if (*vtwist) {
        Tally t{"twist"};
        run_twist(twist, t);
        return t.summary();
      }
      if (*veuler) {
        Tally t{"euler"};
        run_euler(euler, db, t);
        return t.summary();
      }
      if (*vinterp) {
        Tally t{"interp"};
        run_interp_check(icheck, db, t);
        return t.summary();
      }
      Tally t{"all"};
      SliceArgs s;
      s.k2 = "2";
      run_slice(s, t);
      TwistArgs tw;
      tw.p = 3;
      run_twist(tw, t);
      EulerArgs eu;
      eu.chi = {"trivial", "quad3"};
      run_euler(eu, db, t);
      eu.f1 = "1.12.a.a";
      run_euler(eu, db, t);
      run_interp_check(InterpCheckArgs{}, db, t);
      return t.summary();
    }
    if (*lvalue) return cmd_lvalue(lforms, lj, lchi, ldigits, lnmax, lroute, lcoeffs);
    if (*interp) {
      return cmd_interp(iforms, ij, ichi, idigits, ilv->count() > 0 ? std::optional<std::string>(ilvalue) : std::nullopt,
                        inmax);
    }
  } catch (const UsageError& e) {
    std::cerr << "rankin: usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "rankin: error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
