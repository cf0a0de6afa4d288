#pragma once

// JSON interchange: pattern systems, recurrence files, puzzle grids.

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "balmat/bigint.hpp"
#include "balmat/errors.hpp"
#include "balmat/patterns.hpp"
#include "balmat/puzzle.hpp"
#include "balmat/recurrence.hpp"

namespace balmat::io {

using nlohmann::json;

inline json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw parse_error("invalid JSON", 0);
  return j;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_unavailable("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// {"alphabet":["0","1"], "H":["010","101"], "V":["010","101"]}
inline PatternSystem pattern_system_from_json(const json& j) {
  if (!j.is_object() || !j.contains("alphabet"))
    throw invalid_parameter("pattern system needs an \"alphabet\" array");
  std::string symbols;
  for (const auto& s : j.at("alphabet")) {
    std::string sym = s.get<std::string>();
    if (sym.size() != 1) throw invalid_parameter("alphabet symbols must be single characters");
    symbols += sym;
  }
  auto read_set = [&](const char* key) {
    std::vector<std::string> out;
    if (j.contains(key))
      for (const auto& p : j.at(key)) out.push_back(p.get<std::string>());
    return out;
  };
  return PatternSystem(Alphabet(symbols), read_set("H"), read_set("V"));
}

inline PatternSystem load_pattern_system(const std::string& path) {
  return pattern_system_from_json(parse_json(slurp(path)));
}

// {"order":L, "degree":d, "coeffs":[[p_0 ascending], ...]}; coefficients are
// decimal strings (or plain JSON integers).
inline json recurrence_to_json(const recurrence::PolyRecurrence& rec) {
  json j;
  j["order"] = rec.order();
  j["degree"] = rec.degree();
  json coeffs = json::array();
  for (const auto& p : rec.coeffs) {
    json poly = json::array();
    for (const auto& c : p) poly.push_back(balmat::to_string(c));
    coeffs.push_back(std::move(poly));
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

inline recurrence::PolyRecurrence recurrence_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs"))
    throw invalid_parameter("recurrence JSON needs a \"coeffs\" array");
  recurrence::PolyRecurrence rec;
  for (const auto& poly : j.at("coeffs")) {
    recurrence::Poly p;
    for (const auto& c : poly) {
      if (c.is_string())
        p.push_back(parse_rational(c.get<std::string>()));
      else if (c.is_number_integer())
        p.push_back(Rational(c.get<long long>()));
      else
        throw invalid_parameter("recurrence coefficients must be strings or integers");
    }
    rec.coeffs.push_back(std::move(p));
  }
  if (rec.coeffs.empty()) throw invalid_parameter("recurrence has no coefficient polynomials");
  if (j.contains("order") && j.at("order").get<int>() != rec.order())
    throw invalid_parameter("recurrence \"order\" disagrees with coefficient count");
  return rec;
}

inline recurrence::PolyRecurrence load_recurrence(const std::string& path) {
  return recurrence_from_json(parse_json(slurp(path)));
}

// {"size":6, "rows":["1..0..", ...]}
inline json grid_to_json(const puzzle::Grid& g) {
  json j;
  j["size"] = g.size;
  json rows = json::array();
  for (int r = 0; r < g.size; ++r) {
    std::string row(g.size, '.');
    for (int c = 0; c < g.size; ++c)
      if (g.get(r, c) != puzzle::kBlank) row[c] = static_cast<char>('0' + g.get(r, c));
    rows.push_back(row);
  }
  j["rows"] = std::move(rows);
  return j;
}

inline puzzle::Grid grid_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows")) throw invalid_parameter("grid JSON needs \"rows\"");
  std::string text;
  for (const auto& row : j.at("rows")) text += row.get<std::string>() + "\n";
  puzzle::Grid g = puzzle::Grid::from_text(text);
  if (j.contains("size") && j.at("size").get<int>() != g.size)
    throw invalid_parameter("grid \"size\" disagrees with rows");
  return g;
}

// Accepts either the JSON form or the plain text form.
inline puzzle::Grid load_grid(const std::string& path) {
  std::string text = slurp(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return grid_from_json(parse_json(text));
  return puzzle::Grid::from_text(text);
}

}  // namespace balmat::io
