#include "tautocycle/document.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace tc {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::string w;
  for (char c : s) {
    if (c == ' ' || c == ',' || c == '\t') {
      if (!w.empty()) out.push_back(w);
      w.clear();
    } else {
      w += c;
    }
  }
  if (!w.empty()) out.push_back(w);
  return out;
}

std::vector<std::string> string_list(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) throw Error("document.bad_field", "'" + what + "' must be a list of strings");
  std::vector<std::string> out;
  for (auto& x : j) {
    if (!x.is_string()) throw Error("document.bad_field", "'" + what + "' must hold strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

GradedIdeal part_ideal(const nlohmann::json& p, const RingSpec& outer) {
  if (!p.is_object() || !p.contains("kind") || !p.contains("gens"))
    throw Error("document.bad_part", "a part needs 'kind' and 'gens'");
  RingSpec r = outer;
  if (p.contains("vars")) r.vars = string_list(p["vars"], "vars");
  r.validate();
  GradedIdeal I = GradedIdeal::parse(r, string_list(p["gens"], "gens"));
  if (p.contains("parts")) {
    for (auto& q : p["parts"]) {
      I.parts.push_back(part_ideal(q, r));
      I.part_kinds.push_back(q["kind"].get<std::string>());
    }
  }
  return I;
}

nlohmann::json part_json(const GradedIdeal& I, const std::string& kind, const RingSpec& outer) {
  nlohmann::json p;
  p["kind"] = kind;
  if (!(I.ring == outer)) p["vars"] = I.ring.vars;
  p["gens"] = I.gen_strings();
  if (!I.parts.empty()) {
    p["parts"] = nlohmann::json::array();
    for (size_t k = 0; k < I.parts.size(); ++k)
      p["parts"].push_back(part_json(I.parts[k], I.part_kinds[k], I.ring));
  }
  return p;
}

}  // namespace

IdealDocument parse_document(const std::string& text) {
  IdealDocument doc;
  std::string body = trim(text);
  if (body.empty()) throw Error("document.empty", "no generators given");
  if (body[0] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw Error("document.bad_json", e.what());
    }
    if (j.contains("vars")) doc.vars = string_list(j["vars"], "vars");
    if (j.contains("param")) doc.param = j["param"].get<std::string>();
    if (!j.contains("gens")) throw Error("document.bad_field", "missing 'gens'");
    doc.gens = string_list(j["gens"], "gens");
    if (j.contains("meta")) doc.meta = j["meta"];
  } else {
    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.rfind("vars:", 0) == 0) {
        doc.vars = words(line.substr(5));
      } else if (line.rfind("param:", 0) == 0) {
        doc.param = trim(line.substr(6));
      } else {
        doc.gens.push_back(line);
      }
    }
  }
  if (doc.gens.empty()) throw Error("document.empty", "no generators given");
  return doc;
}

IdealDocument load_document(const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw Error("document.unreadable", "cannot read '" + path + "'");
    ss << in.rdbuf();
  }
  return parse_document(ss.str());
}

GradedIdeal to_ideal(const IdealDocument& doc) {
  RingSpec r{doc.vars, doc.param};
  r.validate();
  std::string tag = doc.meta.contains("family") ? doc.meta["family"].get<std::string>() : "";
  GradedIdeal I = GradedIdeal::parse(r, doc.gens, tag);
  if (doc.meta.contains("parts")) {
    for (auto& p : doc.meta["parts"]) {
      I.parts.push_back(part_ideal(p, r));
      I.part_kinds.push_back(p["kind"].get<std::string>());
    }
  }
  return I;
}

IdealDocument from_ideal(const GradedIdeal& I) {
  IdealDocument doc;
  doc.vars = I.ring.vars;
  doc.param = I.ring.param;
  doc.gens = I.gen_strings();
  if (!I.tag.empty()) doc.meta["family"] = I.tag;
  if (!I.parts.empty()) {
    doc.meta["parts"] = nlohmann::json::array();
    for (size_t k = 0; k < I.parts.size(); ++k)
      doc.meta["parts"].push_back(part_json(I.parts[k], I.part_kinds[k], I.ring));
  }
  return doc;
}

nlohmann::json document_json(const IdealDocument& doc) {
  nlohmann::json j;
  j["vars"] = doc.vars;
  j["param"] = doc.param;
  j["gens"] = doc.gens;
  if (!doc.meta.empty()) j["meta"] = doc.meta;
  return j;
}

}  // namespace tc
