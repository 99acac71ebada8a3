#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tautocycle/ideal.hpp"

namespace tc {

// JSON: {"vars": [...], "param": "A", "gens": [...], "meta": {...}}
// Plain text: one generator per line, '#' comments, optional "vars:" and
// "param:" lines.  meta.parts is a list of {"kind", "gens", "vars"?, "parts"?}.
struct IdealDocument {
  std::vector<std::string> vars{"x", "y", "z", "t"};
  std::string param = "A";
  std::vector<std::string> gens;
  nlohmann::json meta = nlohmann::json::object();
};

IdealDocument parse_document(const std::string& text);
IdealDocument load_document(const std::string& path);  // "-" reads stdin
GradedIdeal to_ideal(const IdealDocument& doc);
IdealDocument from_ideal(const GradedIdeal& I);
nlohmann::json document_json(const IdealDocument& doc);

}  // namespace tc
