#ifndef RADIAL2D_SPEC_IO_HPP
#define RADIAL2D_SPEC_IO_HPP

// Potential spec files: {"kind": ..., "params": {name: number}, "description": ...}.
// Tabulated potentials add "table": {"r": [...], "F": [...]}.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "radial2d/potential.hpp"

namespace radial2d {

inline nlohmann::ordered_json to_json(const RadialPotential& p) {
  nlohmann::ordered_json j;
  j["kind"] = std::string(to_string(p.kind()));
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : p.params()) j["params"][k] = v;
  if (p.kind() == PotentialKind::tabulated) {
    j["table"]["r"] = p.table_r();
    j["table"]["F"] = p.table_f();
  }
  j["description"] = p.description();
  return j;
}

template <class Json>
RadialPotential potential_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw invalid_potential("spec must be a JSON object");
    if (!j.contains("kind") || !j.at("kind").is_string()) throw invalid_potential("spec needs a string \"kind\"");
    const auto kind = parse_kind(j.at("kind").template get<std::string>());
    RadialPotential p;
    if (kind == PotentialKind::tabulated) {
      if (!j.contains("table")) throw invalid_potential("tabulated spec needs a \"table\" member");
      const auto& t = j.at("table");
      p = make_tabulated(t.at("r").template get<std::vector<double>>(), t.at("F").template get<std::vector<double>>());
    } else {
      Params params;
      if (j.contains("params")) {
        const auto& pj = j.at("params");
        if (!pj.is_object()) throw invalid_potential("\"params\" must be an object");
        for (auto it = pj.begin(); it != pj.end(); ++it) {
          if (!it.value().is_number()) throw invalid_potential("parameter '" + it.key() + "' must be a number");
          params.emplace_back(it.key(), it.value().template get<double>());
        }
      }
      p = make_catalog_potential(kind, params);
    }
    if (j.contains("description")) p.set_description(j.at("description").template get<std::string>());
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw invalid_potential(std::string("malformed spec: ") + e.what());
  }
}

inline RadialPotential parse_spec(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw invalid_potential(std::string("malformed spec: ") + e.what());
  }
  return potential_from_json(j);
}

inline RadialPotential load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_potential("cannot open spec file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

inline void save_spec(const RadialPotential& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw invalid_argument("cannot write spec file '" + path + "'");
  out << to_json(p).dump(2) << '\n';
}

}  // namespace radial2d

#endif  // RADIAL2D_SPEC_IO_HPP
