#include "rankin/io.hpp"

#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#ifndef RANKIN_DEFAULT_DATA_DIR
#define RANKIN_DEFAULT_DATA_DIR "data/forms"
#endif

namespace rankin {

namespace {

Json int_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(static_cast<i64>(z.get_si()));
  return Json(z.get_str());
}

mpz_class int_from_json(const Json& j, const char* what) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<i64>()));
  if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<u64>()));
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) == 0) return z;
  }
  throw DataError(std::string(what) + ": expected an integer, got " + j.dump());
}

u64 u64_from_json(const Json& j, const char* what) {
  if (j.is_number_unsigned()) return j.get<u64>();
  if (j.is_number_integer() && j.get<i64>() >= 0) return static_cast<u64>(j.get<i64>());
  throw DataError(std::string(what) + ": expected a non-negative integer, got " + j.dump());
}

const Json& field(const Json& j, const char* name, const std::string& who) {
  if (!j.is_object() || !j.contains(name)) throw DataError(who + ": missing field '" + name + "'");
  return j.at(name);
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace

Json to_json(const CycloNumber& value) {
  const CycloNumber c = value.minimal();
  Json coeffs = Json::array();
  for (const auto& q : c.coeffs()) coeffs.push_back(Json::array({int_json(q.get_num()), int_json(q.get_den())}));
  return Json{{"M", c.modulus()}, {"coeffs", std::move(coeffs)}};
}

CycloNumber cyclo_from_json(const Json& j) {
  if (j.is_number_integer() || j.is_string()) {
    if (j.is_string()) {
      mpq_class q;
      if (q.set_str(j.get<std::string>(), 10) != 0 || q.get_den() == 0) {
        throw DataError("cyclotomic value: cannot parse " + j.dump());
      }
      q.canonicalize();
      return CycloNumber(q);
    }
    return CycloNumber(int_from_json(j, "cyclotomic value"));
  }
  const u64 M = u64_from_json(field(j, "M", "cyclotomic value"), "M");
  if (M == 0) throw DataError("cyclotomic value: M must be positive");
  const Json& cs = field(j, "coeffs", "cyclotomic value");
  if (!cs.is_array()) throw DataError("cyclotomic value: coeffs must be an array");
  std::vector<mpq_class> coeffs;
  for (const auto& pair : cs) {
    if (!pair.is_array() || pair.size() != 2) throw DataError("cyclotomic value: coefficient must be [num, den]");
    mpq_class q(int_from_json(pair[0], "numerator"), int_from_json(pair[1], "denominator"));
    if (q.get_den() == 0) throw DataError("cyclotomic value: zero denominator");
    q.canonicalize();
    coeffs.push_back(q);
  }
  return CycloNumber::from_coeffs(M, coeffs);
}

Json to_json(const AlgNumber& a) {
  if (a.is_cyclotomic()) return to_json(a.as_cyclotomic());
  Json roots = Json::array();
  for (const auto& r : a.roots()) roots.push_back(Json{{"trace", to_json(r->trace)}, {"norm", to_json(r->norm)}});
  Json comps = Json::array();
  for (const auto& c : a.components()) comps.push_back(to_json(c));
  return Json{{"roots", std::move(roots)}, {"components", std::move(comps)}};
}

AlgNumber alg_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("roots")) return AlgNumber(cyclo_from_json(j));
  const Json& roots = j.at("roots");
  const Json& comps = field(j, "components", "algebraic value");
  if (!roots.is_array() || !comps.is_array() || comps.size() != (std::size_t{1} << roots.size())) {
    throw DataError("algebraic value: need 2^r components for r roots");
  }
  std::vector<AlgNumber> xs;
  for (const auto& r : roots) {
    xs.push_back(AlgNumber::quadratic_root(cyclo_from_json(field(r, "trace", "root")),
                                           cyclo_from_json(field(r, "norm", "root")), true));
  }
  AlgNumber out;
  for (std::size_t mask = 0; mask < comps.size(); ++mask) {
    AlgNumber term(cyclo_from_json(comps[mask]));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if ((mask >> i) & 1U) term *= xs[i];
    }
    out += term;
  }
  return out;
}

Json to_json(const DirichletCharacter& chi) {
  Json images = Json::array();
  const auto& gens = chi.group().generators();
  for (std::size_t i = 0; i < gens.size(); ++i) images.push_back(Json::array({gens[i], chi.exponents()[i]}));
  return Json{{"modulus", chi.modulus()}, {"order", chi.order()}, {"images", std::move(images)}};
}

DirichletCharacter character_from_json(const Json& j) {
  if (j.is_string()) return resolve_character(j.get<std::string>());
  const u64 M = u64_from_json(field(j, "modulus", "character"), "modulus");
  const u64 order = u64_from_json(field(j, "order", "character"), "order");
  if (M == 0 || order == 0) throw DataError("character: modulus and order must be positive");
  std::vector<std::pair<u64, u64>> images;
  for (const auto& im : field(j, "images", "character")) {
    if (!im.is_array() || im.size() != 2) throw DataError("character: image must be [generator, exponent]");
    images.emplace_back(u64_from_json(im[0], "generator"), u64_from_json(im[1], "exponent"));
  }
  return DirichletCharacter::from_images(M, order, images);
}

DirichletCharacter resolve_character(const std::string& spec) {
  if (spec == "trivial" || spec == "1") return DirichletCharacter::trivial(1);
  if (spec.rfind("quad", 0) == 0) {
    const std::string rest = spec.substr(4);
    if (!rest.empty() && rest.find_first_not_of("0123456789") == std::string::npos) {
      const u64 p = std::stoull(rest);
      if (p > 2 && p <= 13 && is_prime(p)) return DirichletCharacter::quadratic(p);
    }
    throw DataError("unknown character label '" + spec + "' (registry has quad3, quad5, quad7, quad11, quad13)");
  }
  if (!spec.empty() && spec.front() == '{') {
    try {
      return character_from_json(Json::parse(spec));
    } catch (const Json::parse_error& e) {
      throw DataError(std::string("character JSON: ") + e.what());
    }
  }
  if (std::filesystem::exists(spec)) return character_from_json(read_json_file(spec));
  throw DataError("unknown character '" + spec + "': not a registry label, JSON object or file");
}

std::string character_label(const DirichletCharacter& chi) {
  if (chi.is_trivial()) return "trivial";
  const u64 M = chi.modulus();
  if (M > 2 && M <= 13 && is_prime(M) && chi == DirichletCharacter::quadratic(M)) return "quad" + std::to_string(M);
  return to_json(chi).dump();
}

Json to_json(const Eigenform& f) {
  Json ap = Json::object();
  for (const auto& [l, a] : f.ap) ap[std::to_string(l)] = to_json(a);
  Json out{{"label", f.label}, {"k", f.k},         {"N_f", f.level},
           {"p", f.p},         {"eps_N", to_json(f.eps_N)}, {"eps_p", to_json(f.eps_p)},
           {"ap", std::move(ap)}};
  out["alpha"] = f.alpha ? to_json(*f.alpha) : Json(nullptr);
  out["beta"] = f.beta ? to_json(*f.beta) : Json(nullptr);
  out["crystalline"] = f.crystalline;
  out["petersson_norm"] = f.petersson_norm ? Json(*f.petersson_norm) : Json(nullptr);
  return out;
}

Eigenform eigenform_from_json(const Json& j) {
  Eigenform f;
  f.label = j.contains("label") && j.at("label").is_string() ? j.at("label").get<std::string>() : "eigenform";
  const std::string& who = f.label;
  auto parse = [&](const char* name, auto&& fn) {
    try {
      return fn(field(j, name, who));
    } catch (const DataError& e) {
      const std::string msg = e.what();
      if (msg.rfind(who + ":", 0) == 0) throw;
      throw DataError(who + ": field '" + name + "': " + msg);
    } catch (const Error& e) {
      throw DataError(who + ": field '" + name + "': " + e.what());
    }
  };
  const Json& kj = field(j, "k", who);
  if (!kj.is_number_integer()) throw DataError(who + ": field 'k' must be an integer");
  f.k = kj.get<int>();
  f.level = parse("N_f", [](const Json& v) { return u64_from_json(v, "N_f"); });
  f.p = j.contains("p") && !j.at("p").is_null() ? parse("p", [](const Json& v) { return u64_from_json(v, "p"); }) : 0;
  f.eps_N = j.contains("eps_N") ? parse("eps_N", [](const Json& v) { return character_from_json(v); })
                                : DirichletCharacter::trivial(1);
  f.eps_p = j.contains("eps_p") ? parse("eps_p", [](const Json& v) { return character_from_json(v); })
                                : DirichletCharacter::trivial(1);
  parse("ap", [&](const Json& v) {
    if (!v.is_object()) throw DataError("must be an object keyed by primes");
    for (const auto& [key, val] : v.items()) {
      u64 l = 0;
      try {
        std::size_t used = 0;
        l = std::stoull(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw DataError("key '" + key + "' is not an integer");
      }
      if (l != 1 && !is_prime(l)) throw DataError("key " + key + " is not prime");
      f.ap[l] = cyclo_from_json(val);
    }
    return 0;
  });
  f.crystalline = j.contains("crystalline") ? j.at("crystalline").get<bool>() : f.eps_p.is_trivial();
  if (j.contains("petersson_norm") && !j.at("petersson_norm").is_null()) {
    const Json& pn = j.at("petersson_norm");
    if (!pn.is_string()) throw DataError(who + ": field 'petersson_norm' must be a decimal string");
    try {
      (void)ComplexAP::from_decimal(pn.get<std::string>(), 20);
    } catch (const std::exception&) {
      throw DataError(who + ": field 'petersson_norm' is not a decimal: " + pn.get<std::string>());
    }
    f.petersson_norm = pn.get<std::string>();
  }

  const Json alpha = j.contains("alpha") ? j.at("alpha") : Json(nullptr);
  const Json beta = j.contains("beta") ? j.at("beta") : Json(nullptr);
  if (!alpha.is_null()) {
    if (f.p == 0) throw DataError(who + ": field 'alpha' given without p");
    if (!f.crystalline) {
      if (!(alpha.is_string() && alpha.get<std::string>() == "+")) {
        f.alpha = parse("alpha", [](const Json& v) { return alg_from_json(v); });
      } else {
        f.alpha = AlgNumber(f.a(f.p));
      }
      f.beta = AlgNumber(f.hecke_norm(f.p)) / *f.alpha;
    } else {
      if (alpha.is_string()) {
        const auto s = alpha.get<std::string>();
        if (s != "+" && s != "-") throw DataError(who + ": field 'alpha' must be null, \"+\", \"-\" or a value");
        try {
          f.alpha = AlgNumber::quadratic_root(f.a(f.p), f.hecke_norm(f.p), s == "+");
        } catch (const DataError& e) {
          throw DataError(who + ": field 'alpha': " + e.what());
        }
      } else {
        f.alpha = parse("alpha", [](const Json& v) { return alg_from_json(v); });
      }
      f.beta = AlgNumber(f.a(f.p)) - *f.alpha;
    }
    if (!beta.is_null()) {
      const AlgNumber given = parse("beta", [](const Json& v) { return alg_from_json(v); });
      if (!(given == *f.beta)) throw DataError(who + ": field 'beta' disagrees with alpha and a_p");
    }
  } else if (!beta.is_null()) {
    throw DataError(who + ": field 'beta' given without alpha");
  }
  f.validate();
  return f;
}

Json to_json(const QExpansion& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(to_json(c));
  return coeffs;
}

Json to_json(const HeckeExpansion& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(to_json(c));
  return coeffs;
}

std::vector<AlgNumber> expansion_from_json(const Json& j) {
  const Json& arr = j.is_object() ? field(j, "coeffs", "q-expansion") : j;
  if (!arr.is_array()) throw DataError("q-expansion: expected an array of coefficients");
  std::vector<AlgNumber> out;
  out.reserve(arr.size());
  for (const auto& c : arr) out.push_back(alg_from_json(c));
  return out;
}

Json to_json(const ComplexAP& z) { return Json{{"re", z.real_string()}, {"im", z.imag_string()}}; }

std::string to_string(const LocAlgChar& k) { return k.to_string(); }

// ---------------------------------------------------------------------------

std::filesystem::path FormDatabase::default_root() {
  if (const char* env = std::getenv("RANKIN_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return RANKIN_DEFAULT_DATA_DIR;
}

FormDatabase::FormDatabase(std::filesystem::path root) : root_(std::move(root)) {}

const Eigenform& FormDatabase::get(const std::string& reference) {
  if (const auto it = cache_.find(reference); it != cache_.end()) return it->second;
  const auto at = reference.find('@');
  const std::string label = reference.substr(0, at);
  if (label.empty() || label.find('/') != std::string::npos) throw DataError("bad form label '" + reference + "'");

  if (at != std::string::npos) {
    std::string rest = reference.substr(at + 1);
    int branch = 0;
    if (!rest.empty() && (rest.back() == '+' || rest.back() == '-')) {
      branch = rest.back() == '+' ? 1 : -1;
      rest.pop_back();
    }
    if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos) {
      throw DataError("bad prime in form reference '" + reference + "'");
    }
    const u64 p = std::stoull(rest);
    Eigenform f = get(label).newform();
    if (!f.eps_p.is_trivial() && f.p != p) {
      throw DataError(reference + ": " + label + " has non-trivial character at " + std::to_string(f.p));
    }
    if (f.eps_p.is_trivial()) {
      f.p = p;
      f.alpha.reset();
      f.beta.reset();
      f.crystalline = true;
      f.validate();
      if (branch != 0) f = stabilise(f, branch > 0);
    }
    f.label = reference;
    return cache_.emplace(reference, std::move(f)).first->second;
  }

  const auto path = root_ / (label + ".json");
  if (!std::filesystem::exists(path)) {
    throw DataError("unknown form label '" + label + "' (no " + path.string() + ")");
  }
  Eigenform f = eigenform_from_json(read_json_file(path));
  if (f.label != label) throw DataError(path.string() + ": field 'label' is '" + f.label + "'");
  return cache_.emplace(label, std::move(f)).first->second;
}

}  // namespace rankin
