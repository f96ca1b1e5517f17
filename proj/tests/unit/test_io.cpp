#include "doctest.h"

#include "oracles.hpp"
#include "rankin/io.hpp"

#include <cstdlib>
#include <random>

using namespace rankin;

namespace {

FormDatabase database() { return FormDatabase(RANKIN_TEST_DATA_DIR); }

std::string error_text(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("cyclotomic values round trip") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> small(-50, 50);
  for (u64 M : {1, 3, 4, 5, 8, 9, 12, 15, 28}) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<mpq_class> c(M);
      for (auto& q : c) {
        q = mpq_class(small(rng), 1 + std::abs(small(rng)));
        q.canonicalize();
      }
      const auto x = CycloNumber::from_coeffs(M, c);
      const auto j = to_json(x);
      CHECK(cyclo_from_json(j) == x);
      CHECK(cyclo_from_json(Json::parse(j.dump())) == x);
    }
  }
  const mpz_class big("123456789012345678901234567890");
  const CycloNumber b = CycloNumber(mpq_class(big, 7)) * CycloNumber::zeta(3);
  const auto j = to_json(b);
  CHECK(j["coeffs"][1][0].is_string());
  CHECK(cyclo_from_json(j) == b);
  CHECK(cyclo_from_json(Json("-3/4")) == CycloNumber(mpq_class(-3, 4)));
  CHECK(cyclo_from_json(Json(5)) == CycloNumber(5));
  CHECK_THROWS_AS(cyclo_from_json(Json::parse(R"({"M":3,"coeffs":[[1,0]]})")), DataError);
  CHECK_THROWS_AS(cyclo_from_json(Json::parse(R"({"coeffs":[[1,1]]})")), DataError);
}

TEST_CASE("rational values are written in the smallest field") {
  const auto x = CycloNumber::zeta(4) * CycloNumber::zeta(4);
  CHECK(to_json(x) == Json::parse(R"({"M":1,"coeffs":[[-1,1]]})"));
}

TEST_CASE("algebraic values with adjoined roots round trip") {
  const auto f = stabilise(oracle::delta_form(10), true);
  const AlgNumber a = *f.alpha, b = *f.beta;
  CHECK_FALSE(a.is_cyclotomic());
  for (const auto& x : {a, b, a * a + AlgNumber(3) * b, a.inv()}) {
    CHECK(alg_from_json(Json::parse(to_json(x).dump())) == x);
  }
  const AlgNumber r = AlgNumber::quadratic_root(CycloNumber::zeta(3), CycloNumber(5));
  CHECK(alg_from_json(to_json(r * a)) == r * a);
}

TEST_CASE("characters round trip and resolve") {
  for (u64 M : {1, 3, 8, 9, 15, 16, 25, 28}) {
    for (const auto& chi : DirichletCharacter::all(M)) {
      CHECK(character_from_json(Json::parse(to_json(chi).dump())) == chi);
    }
  }
  CHECK(resolve_character("quad3") == DirichletCharacter::quadratic(3));
  CHECK(resolve_character("quad13") == DirichletCharacter::quadratic(13));
  CHECK(resolve_character("trivial").is_trivial());
  // Images on a non-canonical generating set: 2 generates (Z/9Z)^x.
  const auto chi = resolve_character(R"({"modulus":9,"order":6,"images":[[2,1]]})");
  CHECK(chi.order() == 6);
  CHECK(chi(2) == CycloNumber::zeta(6));
  CHECK(character_label(DirichletCharacter::quadratic(7)) == "quad7");
  CHECK(resolve_character(character_label(chi)) == chi);
  CHECK_THROWS_AS(resolve_character("quad17"), DataError);
  CHECK_THROWS_AS(resolve_character("quad4"), DataError);
  CHECK_THROWS_AS(resolve_character("nonsense"), DataError);
  CHECK_THROWS_AS(resolve_character(R"({"modulus":9,"order":6,"images":[[2,1],[4,1]]})"), DataError);
}

TEST_CASE("eigenform records round trip") {
  auto f = oracle::f11_form(60, 3);
  const auto g = eigenform_from_json(Json::parse(to_json(f).dump()));
  CHECK(g.ap == f.ap);
  CHECK(g.level == 11);
  CHECK_FALSE(g.alpha);
  const auto s = stabilise(oracle::delta_form(60), false);
  const auto t = eigenform_from_json(to_json(s));
  REQUIRE(t.alpha);
  CHECK(*t.alpha == *s.alpha);
  CHECK(*t.beta == *s.beta);
}

TEST_CASE("invalid records name the field") {
  Json base = to_json(oracle::f11_form(30, 3));
  {
    Json j = base;
    j.erase("k");
    CHECK(error_text([&] { eigenform_from_json(j); }).find("'k'") != std::string::npos);
  }
  {
    Json j = base;
    j["ap"]["4"] = 1;
    CHECK(error_text([&] { eigenform_from_json(j); }).find("ap") != std::string::npos);
  }
  {
    Json j = base;
    j["ap"]["1"] = 2;
    CHECK(error_text([&] { eigenform_from_json(j); }).find("a_1") != std::string::npos);
  }
  {
    Json j = base;
    j["alpha"] = 7;
    CHECK(error_text([&] { eigenform_from_json(j); }).find("alpha") != std::string::npos);
  }
  {
    Json j = base;
    j["alpha"] = "+";
    j["beta"] = 0;
    CHECK(error_text([&] { eigenform_from_json(j); }).find("beta") != std::string::npos);
  }
  {
    Json j = base;
    j["eps_N"] = "quad3";
    CHECK(error_text([&] { eigenform_from_json(j); }).find("eps_N") != std::string::npos);
  }
  {
    Json j = base;
    j["petersson_norm"] = "abc";
    CHECK(error_text([&] { eigenform_from_json(j); }).find("petersson_norm") != std::string::npos);
  }
}

TEST_CASE("shipped records agree with the eta products") {
  auto db = database();
  const std::size_t prec = 1500;
  const auto d = oracle::delta(prec), e = oracle::f11(prec);
  const auto& delta = db.get("1.12.a.a");
  const auto& f11 = db.get("11.2.a.a");
  for (u64 l : primes_up_to(prec - 1)) {
    CHECK(delta.a(l) == CycloNumber(d[l]));
    CHECK(f11.a(l) == CycloNumber(e[l]));
  }
  CHECK(delta.petersson_norm.has_value());
  CHECK(delta.ap.size() == 9592);
}

TEST_CASE("shipped records satisfy the Ramanujan bound") {
  auto db = database();
  for (const char* label : {"1.12.a.a", "11.2.a.a"}) {
    const auto& f = db.get(label);
    for (const auto& [l, a] : f.ap) {
      if (f.level % l == 0) continue;
      const mpq_class v = a.rational_value();
      mpz_class bound;
      mpz_ui_pow_ui(bound.get_mpz_t(), l, static_cast<unsigned long>(f.k - 1));
      CHECK(v * v <= 4 * bound);
    }
  }
}

TEST_CASE("label overrides") {
  auto db = database();
  const auto& plus = db.get("1.12.a.a@3+");
  const auto& minus = db.get("1.12.a.a@3-");
  const auto& bare = db.get("1.12.a.a@3");
  CHECK(plus.p == 3);
  CHECK_FALSE(bare.is_stabilised());
  CHECK(*plus.alpha == *minus.beta);
  CHECK(*plus.alpha * *plus.beta == AlgNumber(CycloNumber(177147)));
  CHECK(*plus.alpha + *plus.beta == AlgNumber(CycloNumber(252)));
  CHECK_THROWS_AS(db.get("11.2.a.a@11"), DataError);
  CHECK_THROWS_AS(db.get("11.2.a.a@x"), DataError);
  CHECK_THROWS_AS(db.get("missing"), DataError);
}

TEST_CASE("data directory from the environment") {
  setenv("RANKIN_DATA_DIR", "/nonexistent/forms", 1);
  CHECK(FormDatabase::default_root() == std::filesystem::path("/nonexistent/forms"));
  CHECK_THROWS_AS(FormDatabase().get("11.2.a.a"), DataError);
  unsetenv("RANKIN_DATA_DIR");
}

TEST_CASE("expansions round trip") {
  const auto f = expand(stabilise(oracle::delta_form(40), true), 40);
  const auto back = expansion_from_json(Json::parse(to_json(f).dump()));
  CHECK(back == f.coeffs());
  const auto e = eis_E(4, 4, 3, 30);
  const auto back2 = expansion_from_json(to_json(e));
  REQUIRE(back2.size() == e.prec());
  for (std::size_t n = 0; n < back2.size(); ++n) CHECK(back2[n].as_cyclotomic() == e[n]);
}
