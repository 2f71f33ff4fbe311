#ifndef GTOWER_SERIALIZE_HPP
#define GTOWER_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "gtower/automorphism.hpp"
#include "gtower/cayley_table.hpp"
#include "gtower/perm_group.hpp"

namespace gtower {

/// Tables serialize as {order, mul (row-major), labels}.
inline nlohmann::ordered_json table_to_json(const CayleyTable& t) {
  nlohmann::ordered_json j;
  j["order"] = t.n;
  j["mul"] = t.mul;
  j["labels"] = t.labels;
  return j;
}

inline CayleyTable table_from_json(const nlohmann::ordered_json& j) {
  int n = j.at("order").get<int>();
  std::vector<std::int32_t> mul = j.at("mul").get<std::vector<std::int32_t>>();
  std::vector<std::string> labels = j.at("labels").get<std::vector<std::string>>();
  return make_table(n, std::move(mul), std::move(labels));
}

/// Homs serialize as {source_hash, target_hash, map} plus the two flags.
inline nlohmann::ordered_json hom_to_json(const GroupHom& h) {
  nlohmann::ordered_json j;
  j["source_hash"] = h.source_digest;
  j["target_hash"] = h.target_digest;
  j["map"] = h.map;
  j["injective"] = h.injective;
  j["surjective"] = h.surjective;
  return j;
}

/// Groups render as degree plus the generator list in cycle form.
inline nlohmann::ordered_json group_to_json(const PermGroup& g) {
  nlohmann::ordered_json j;
  j["degree"] = g.degree();
  j["order"] = g.order();
  nlohmann::ordered_json gens = nlohmann::ordered_json::array();
  for (const auto& p : g.generators()) gens.push_back(to_cycle_string(p));
  j["generators"] = gens;
  return j;
}

}  // namespace gtower

#endif  // GTOWER_SERIALIZE_HPP
