#ifndef VEEVERIFY_IO_HPP
#define VEEVERIFY_IO_HPP

// Configuration JSON:
//   { "name": string, "ambient_dim": int, "radicand": Rat, "direction": [Rat...],
//     "members": [ { "coords": [[Rat, Rat]...], "multiplicity": Rat } ... ] }
// Unknown fields are rejected.

#include <set>
#include <string>

#include "veeverify/configuration.hpp"
#include "veeverify/report.hpp"

namespace veeverify {

inline Json configuration_to_json(const Configuration& cfg) {
  Json j;
  j["name"] = cfg.name();
  j["ambient_dim"] = cfg.ambient_dim();
  j["radicand"] = rat_to_json(cfg.radicand());
  Json dir = Json::array();
  for (const auto& c : cfg.direction()) dir.push_back(rat_to_json(c));
  j["direction"] = std::move(dir);
  Json members = Json::array();
  for (const auto& m : cfg.members()) {
    Json coords = Json::array();
    for (const auto& c : m.vector) coords.push_back(qelem_to_json(c));
    Json jm;
    jm["coords"] = std::move(coords);
    jm["multiplicity"] = rat_to_json(m.multiplicity);
    members.push_back(std::move(jm));
  }
  j["members"] = std::move(members);
  return j;
}

namespace detail {

inline void require_fields(const Json& j, const std::set<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, what + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw Error(ErrorKind::InvalidInput, "unknown field '" + it.key() + "' in " + what);
  for (const auto& f : allowed)
    if (!j.contains(f)) throw Error(ErrorKind::InvalidInput, "missing field '" + f + "' in " + what);
}

}  // namespace detail

inline Configuration configuration_from_json(const Json& j) {
  detail::require_fields(j, {"name", "ambient_dim", "radicand", "direction", "members"}, "configuration");
  if (!j["name"].is_string()) throw Error(ErrorKind::InvalidInput, "name must be a string");
  if (!j["ambient_dim"].is_number_unsigned() || j["ambient_dim"].get<std::size_t>() == 0)
    throw Error(ErrorKind::InvalidInput, "ambient_dim must be a positive integer");
  const std::size_t dim = j["ambient_dim"].get<std::size_t>();
  const Rat radicand = rat_from_json(j["radicand"]);
  if (radicand.sign() < 0) throw Error(ErrorKind::InvalidRadicand, "radicand must be non-negative");

  if (!j["direction"].is_array()) throw Error(ErrorKind::InvalidInput, "direction must be an array");
  std::vector<Rat> direction;
  for (const auto& c : j["direction"]) direction.push_back(rat_from_json(c));

  if (!j["members"].is_array()) throw Error(ErrorKind::InvalidInput, "members must be an array");
  std::vector<Member> members;
  for (const auto& jm : j["members"]) {
    detail::require_fields(jm, {"coords", "multiplicity"}, "member");
    if (!jm["coords"].is_array()) throw Error(ErrorKind::InvalidInput, "coords must be an array");
    Member m;
    for (const auto& c : jm["coords"]) m.vector.push_back(qelem_from_json(c, radicand));
    m.multiplicity = rat_from_json(jm["multiplicity"]);
    members.push_back(std::move(m));
  }
  return build_config(dim, radicand, std::move(members), std::move(direction), j["name"].get<std::string>());
}

inline Configuration configuration_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
  return configuration_from_json(j);
}

}  // namespace veeverify

#endif  // VEEVERIFY_IO_HPP
