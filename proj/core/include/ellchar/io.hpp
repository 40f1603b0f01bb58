#pragma once

// JSON encodings of the library types.
//
//   RootOfUnity   "a/N"
//   CycloNumber   {"conductor": N, "coords": ["p/q", ...]}
//   field         {"p": p, "k": k, "modulus": [...], "generator": [...]}
//   FinAb         {"invariant_factors": [d1, ...]}
//   AbChar        {"values": ["a/N", ...]}
//   TorusLevel    {"q", "n", "h", "invariant_factors", "frobenius", "filtration_orders"}
//   TorusChar     {"q", "n", "h", "values", "uniformizer": {"valuation", "unit"}, "ell"}
//   FinGroup      {"order", "table": [[...]]} or {"permutations": [[...]]}
//   GClass        {"tag": "char0" | "mod-ell", "ell", "classes": [reps], "values": [CycloNumber]}
//   PermComplex   {"g": FinGroup, "t": FinAb, "lo", "terms": [[{"stabilizer": [...]}]],
//                  "differentials": [{"degree", "rows", "cols", "entries": [[r, c, v], ...]}]}
//   provider      {"name", "q", "n", "h", "group": FinGroup, "ell",
//                  "char0" | "mod_ell": [{"theta": AbChar, "class": GClass}]}
//   Report        {"title", "pass", "checks": [{"name", "result": "pass" | "fail", "witness", "asserted"}]}
//
// Class values are listed in class order (classes numbered by least element);
// mod-ell classes list only the ell-regular classes.

#include <nlohmann/json.hpp>

#include "ellchar/chaincx.hpp"
#include "ellchar/dlclass.hpp"
#include "ellchar/weil.hpp"

namespace ellchar {

using Json = nlohmann::json;

void to_json(Json& j, const RootOfUnity& z);
void from_json(const Json& j, RootOfUnity& z);
void to_json(Json& j, const CycloNumber& x);
void from_json(const Json& j, CycloNumber& x);
void to_json(Json& j, const FinAb& a);
void from_json(const Json& j, FinAb& a);

Json field_to_json(const FieldPtr& f);
FieldPtr field_from_json(const Json& j);

Json abchar_to_json(const AbChar& c);
AbChar abchar_from_json(const Json& j, const FinAb& domain);

Json torus_to_json(const TorusLevel& t);
TorusPtr torus_from_json(const Json& j);

Json torus_char_to_json(const TorusChar& c);
/// Reads a character; the torus is rebuilt from (q, n, h) unless given.
TorusChar torus_char_from_json(const Json& j, TorusPtr torus = nullptr);

Json weil_param_to_json(const WeilParam& p);

Json group_to_json(const FinGroup& g);
FinGroupPtr group_from_json(const Json& j);

Json gclass_to_json(const GClass& c);
GClass gclass_from_json(const Json& j, const FinGroupPtr& g);

Json complex_to_json(const PermComplex& c);
PermComplex complex_from_json(const Json& j);

Json report_to_json(const Report& r);

/// Tabulates a provider on every character of the torus (and every ell'-order
/// character when it has a mod-ell side).
Json provider_to_json(const FiniteLevelProvider& p, const TorusPtr& torus, i64 ell);
/// A provider answering from a table; unknown characters raise InvalidArgument.
FiniteLevelProvider provider_from_json(const Json& j, const TorusPtr& torus);

/// Parses a JSON document, turning syntax errors into InvalidArgument.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace ellchar
