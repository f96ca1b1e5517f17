#pragma once

// JSON serialisation, the eigenform database and the character registry.

#include "rankin/eisenstein.hpp"
#include "rankin/interp.hpp"

#include "json.hpp"

#include <filesystem>
#include <map>
#include <string>

namespace rankin {

using Json = nlohmann::ordered_json;

/// {"M": int, "coeffs": [[num, den], ...]} in the power basis of Q(zeta_M).
/// Integers beyond 64 bits are written as decimal strings.
Json to_json(const CycloNumber& c);
CycloNumber cyclo_from_json(const Json& j);

/// Cyclotomic values as above; otherwise
/// {"roots": [{"trace": .., "norm": ..}], "components": [..]} (2^r entries).
Json to_json(const AlgNumber& a);
AlgNumber alg_from_json(const Json& j);

/// {"modulus": M, "order": m, "images": [[g, e], ...]} meaning chi(g) = zeta_m^e
/// on the canonical generators.
Json to_json(const DirichletCharacter& chi);
/// Accepts the object form (images on any generating set) or a registry label.
DirichletCharacter character_from_json(const Json& j);

/// "trivial", "trivialM", "quadP" (odd p <= 13), a JSON object, or a path to
/// a JSON file holding one.
DirichletCharacter resolve_character(const std::string& spec);
/// Label used in output for a character.
std::string character_label(const DirichletCharacter& chi);

Json to_json(const Eigenform& f);
/// Validates the record; DataError names the offending field.
Eigenform eigenform_from_json(const Json& j);

Json to_json(const QExpansion& f);
Json to_json(const HeckeExpansion& f);
/// Coefficient list of either form.
std::vector<AlgNumber> expansion_from_json(const Json& j);

/// {"re": decimal, "im": decimal}.
Json to_json(const ComplexAP& z);
std::string to_string(const LocAlgChar& k);

/// Directory of <label>.json eigenform records, loaded lazily.
class FormDatabase {
 public:
  /// RANKIN_DATA_DIR if set, else the data/forms directory of the source tree.
  static std::filesystem::path default_root();
  explicit FormDatabase(std::filesystem::path root = default_root());

  /// "label" as stored, "label@p" re-targeted at the prime p without
  /// stabilising, "label@p+" / "label@p-" stabilised with the chosen root.
  const Eigenform& get(const std::string& reference);
  [[nodiscard]] const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
  std::map<std::string, Eigenform> cache_;
};

}  // namespace rankin
