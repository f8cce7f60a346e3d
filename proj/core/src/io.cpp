#include "lewiskit/io.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lewiskit {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw IoError("malformed JSON");
  if (!j.is_object()) throw IoError("top-level JSON value must be an object");
  if (j.contains("format") && j["format"] != 1)
    throw IoError("unsupported format version");
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

std::vector<std::string> world_list(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw IoError(std::string("missing or non-array \"") + key + "\"");
  std::vector<std::string> out;
  for (const auto& w : j[key]) {
    if (!w.is_string()) throw IoError(std::string(key) + " entries must be strings");
    out.push_back(w.get<std::string>());
  }
  if (out.empty()) throw IoError(std::string(key) + " must be nonempty");
  if (out.size() > 30) throw IoError(std::string(key) + " is too large (max 30)");
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t k = i + 1; k < out.size(); ++k)
      if (out[i] == out[k]) throw IoError("duplicate name " + out[i]);
  return out;
}

WorldSet set_of_names(const json& arr, const std::vector<std::string>& names,
                      const std::string& what) {
  if (!arr.is_array()) throw IoError(what + " must be an array of names");
  WorldSet s = 0;
  for (const auto& e : arr) {
    if (!e.is_string()) throw IoError(what + " entries must be strings");
    std::string name = e.get<std::string>();
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw IoError(what + ": unknown name " + name);
    s |= WorldSet{1} << (it - names.begin());
  }
  return s;
}

json names_of_set(WorldSet s, const std::vector<std::string>& names) {
  json arr = json::array();
  for (size_t i = 0; i < names.size(); ++i)
    if (s >> i & 1) arr.push_back(names[i]);
  return arr;
}

// Shared loader for the worlds+spheres part of models and structures.
void load_frame(const json& j, std::vector<std::string>& worlds,
                std::vector<std::vector<WorldSet>>& spheres) {
  const char* wkey = j.contains("worlds") ? "worlds" : "points";
  worlds = world_list(j, wkey);
  spheres.assign(worlds.size(), {});
  if (j.contains("spheres")) {
    if (!j["spheres"].is_object())
      throw IoError("\"spheres\" must map world names to sphere lists");
    for (const auto& [name, fam] : j["spheres"].items()) {
      auto it = std::find(worlds.begin(), worlds.end(), name);
      if (it == worlds.end()) throw IoError("spheres: unknown world " + name);
      if (!fam.is_array()) throw IoError("spheres[" + name + "] must be an array");
      for (const auto& sp : fam)
        spheres[it - worlds.begin()].push_back(
            set_of_names(sp, worlds, "sphere of " + name));
    }
  }
}

json dump_frame(const std::vector<std::string>& worlds,
                const std::vector<std::vector<WorldSet>>& spheres) {
  json j;
  j["format"] = 1;
  j["worlds"] = worlds;
  json sph = json::object();
  for (size_t w = 0; w < worlds.size(); ++w) {
    json fam = json::array();
    for (WorldSet s : spheres[w]) fam.push_back(names_of_set(s, worlds));
    sph[worlds[w]] = fam;
  }
  j["spheres"] = sph;
  return j;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sphere models and structures

SphereModel model_from_json(const std::string& text) {
  json j = parse_json(text);
  SphereModel m;
  load_frame(j, m.worlds, m.spheres);
  if (j.contains("valuation")) {
    if (!j["valuation"].is_object())
      throw IoError("\"valuation\" must map variables to world lists");
    for (const auto& [var, ws] : j["valuation"].items())
      m.valuation[var] = set_of_names(ws, m.worlds, "valuation of " + var);
  }
  if (auto err = normalize_model(m)) throw IoError(*err);
  return m;
}

std::string model_to_json(const SphereModel& m, int indent) {
  json j = dump_frame(m.worlds, m.spheres);
  json val = json::object();
  for (const auto& [var, ws] : m.valuation)
    val[var] = names_of_set(ws, m.worlds);
  j["valuation"] = val;
  return j.dump(indent) + "\n";
}

SphereModel load_model(const std::string& path) {
  return model_from_json(slurp(path));
}

void save_model(const SphereModel& m, const std::string& path) {
  spill(path, model_to_json(m));
}

SphereStructure structure_from_json(const std::string& text) {
  // Structures share the model layout; reuse its validation.
  SphereModel m = model_from_json(text);
  SphereStructure s;
  s.points = std::move(m.worlds);
  s.spheres = std::move(m.spheres);
  return s;
}

std::string structure_to_json(const SphereStructure& s, int indent) {
  return dump_frame(s.points, s.spheres).dump(indent) + "\n";
}

SphereStructure load_structure(const std::string& path) {
  return structure_from_json(slurp(path));
}

void save_structure(const SphereStructure& s, const std::string& path) {
  spill(path, structure_to_json(s));
}

// ---------------------------------------------------------------------------
// Algebras

VAlgebra algebra_from_json(const std::string& text) {
  json j = parse_json(text);
  if (!j.contains("atoms") || !j["atoms"].is_number_integer())
    throw IoError("missing integer \"atoms\"");
  int atoms = j["atoms"].get<int>();
  if (atoms < 0 || atoms > 8) throw IoError("\"atoms\" must be in [0, 8]");
  VAlgebra a;
  a.atoms = atoms;
  size_t n = size_t{1} << atoms;
  if (!j.contains("cf") || !j["cf"].is_array() || j["cf"].size() != n)
    throw IoError("\"cf\" must be an array of " + std::to_string(n) + " rows");
  for (const auto& row : j["cf"]) {
    if (!row.is_array() || row.size() != n)
      throw IoError("each cf row must have " + std::to_string(n) + " entries");
    std::vector<Elem> r;
    for (const auto& e : row) {
      if (!e.is_number_integer()) throw IoError("cf entries must be integers");
      long long v = e.get<long long>();
      if (v < 0 || v >= static_cast<long long>(n))
        throw IoError("cf entry " + std::to_string(v) + " out of range");
      r.push_back(static_cast<Elem>(v));
    }
    a.cf.push_back(std::move(r));
  }
  return a;
}

std::string algebra_to_json(const VAlgebra& a, int indent) {
  size_t n = size_t{1} << a.atoms;
  if (a.cf.size() != n) throw IoError("algebra table does not match atom count");
  for (const auto& row : a.cf)
    if (row.size() != n) throw IoError("algebra table does not match atom count");
  json j;
  j["format"] = 1;
  j["atoms"] = a.atoms;
  j["cf"] = a.cf;
  return j.dump(indent) + "\n";
}

VAlgebra load_algebra(const std::string& path) {
  return algebra_from_json(slurp(path));
}

void save_algebra(const VAlgebra& a, const std::string& path) {
  spill(path, algebra_to_json(a));
}

// ---------------------------------------------------------------------------
// Alpha-models

AlphaModel alpha_from_json(const std::string& text) {
  json j = parse_json(text);
  AlphaModel s;
  s.points = world_list(j, "points");
  if (s.points.size() > 8) throw IoError("too many points (max 8)");
  int n = static_cast<int>(s.points.size());
  size_t subsets = size_t{1} << n;
  s.f.assign(subsets, std::vector<PointSet>(n, 0));
  if (!j.contains("f") || !j["f"].is_object())
    throw IoError("missing selection table \"f\"");
  size_t seen = 0;
  for (const auto& [key, val] : j["f"].items()) {
    size_t comma = key.find(',');
    if (comma == std::string::npos)
      throw IoError("f keys must look like \"A,i\": " + key);
    unsigned long amask, x, b;
    try {
      amask = std::stoul(key.substr(0, comma));
      x = std::stoul(key.substr(comma + 1));
    } catch (...) {
      throw IoError("bad f key: " + key);
    }
    if (amask >= subsets || x >= static_cast<unsigned long>(n))
      throw IoError("f key out of range: " + key);
    if (val.is_string()) {
      try {
        b = std::stoul(val.get<std::string>());
      } catch (...) {
        throw IoError("bad f value for key " + key);
      }
    } else if (val.is_number_unsigned() || val.is_number_integer()) {
      long long sv = val.get<long long>();
      if (sv < 0) throw IoError("negative f value for key " + key);
      b = static_cast<unsigned long>(sv);
    } else {
      throw IoError("f values must be masks (number or string)");
    }
    if (b >= subsets) throw IoError("f value out of range for key " + key);
    s.f[amask][x] = static_cast<PointSet>(b);
    ++seen;
  }
  if (seen != subsets * n)
    throw IoError("selection table is not dense: got " + std::to_string(seen) +
                  " of " + std::to_string(subsets * n) + " entries");
  return s;
}

std::string alpha_to_json(const AlphaModel& s, int indent) {
  json j;
  j["format"] = 1;
  j["points"] = s.points;
  json f = json::object();
  int n = s.n();
  for (size_t a = 0; a < s.f.size(); ++a)
    for (int x = 0; x < n; ++x)
      f[std::to_string(a) + "," + std::to_string(x)] =
          std::to_string(s.f[a][x]);
  j["f"] = f;
  return j.dump(indent) + "\n";
}

AlphaModel load_alpha(const std::string& path) {
  return alpha_from_json(slurp(path));
}

void save_alpha(const AlphaModel& s, const std::string& path) {
  spill(path, alpha_to_json(s));
}

// ---------------------------------------------------------------------------
// Proof scripts

namespace {

Formula parse_or_throw(const std::string& text, const std::string& where) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw IoError(where + ": " + e.what());
  }
}

}  // namespace

Proof proof_from_json(const std::string& text) {
  json j = parse_json(text);
  Proof p;
  if (j.contains("premises")) {
    if (!j["premises"].is_array()) throw IoError("\"premises\" must be an array");
    for (const auto& g : j["premises"]) {
      if (!g.is_string()) throw IoError("premises must be formula strings");
      p.premises.push_back(parse_or_throw(g.get<std::string>(), "premise"));
    }
  }
  if (!j.contains("lines") || !j["lines"].is_array())
    throw IoError("missing \"lines\" array");
  int lineno = 0;
  for (const auto& jl : j["lines"]) {
    ++lineno;
    std::string where = "line " + std::to_string(lineno);
    if (!jl.is_object() || !jl.contains("f") || !jl["f"].is_string())
      throw IoError(where + ": each line needs a formula string \"f\"");
    ProofLine ln;
    ln.f = parse_or_throw(jl["f"].get<std::string>(), where);
    if (!jl.contains("by") || !jl["by"].is_object())
      throw IoError(where + ": missing justification \"by\"");
    const json& by = jl["by"];
    auto cite = [&](const json& v, const char* what) {
      if (!v.is_number_integer()) throw IoError(where + ": " + what + " must be an integer");
      int i = v.get<int>();
      if (i < 1 || i >= lineno)
        throw IoError(where + ": " + what + " must cite an earlier line");
      return i;
    };
    if (by.contains("premise")) {
      if (by["premise"] != true) throw IoError(where + ": \"premise\" must be true");
      ln.by.kind = Justification::Kind::Premise;
    } else if (by.contains("axiom")) {
      ln.by.kind = Justification::Kind::Axiom;
      if (!by["axiom"].is_string()) throw IoError(where + ": \"axiom\" must be a string");
      ln.by.axiom_id = by["axiom"].get<std::string>();
      if (!is_schema_id(ln.by.axiom_id))
        throw IoError(where + ": unknown axiom id " + ln.by.axiom_id);
      if (by.contains("sub")) {
        if (!by["sub"].is_object()) throw IoError(where + ": \"sub\" must be an object");
        Substitution s;
        for (const auto& [v, fs] : by["sub"].items()) {
          if (!fs.is_string()) throw IoError(where + ": sub values must be formulas");
          s[v] = parse_or_throw(fs.get<std::string>(), where + " sub " + v);
        }
        ln.by.sub = std::move(s);
      }
    } else if (by.contains("mp")) {
      const json& v = by["mp"];
      if (!v.is_array() || v.size() != 2)
        throw IoError(where + ": \"mp\" must be [major, minor]");
      ln.by.kind = Justification::Kind::MP;
      ln.by.i = cite(v[0], "mp major");
      ln.by.j = cite(v[1], "mp minor");
    } else if (by.contains("c")) {
      ln.by.kind = Justification::Kind::RuleC;
      ln.by.i = cite(by["c"], "c");
    } else if (by.contains("dwc")) {
      const json& v = by["dwc"];
      if (!v.is_array() || v.size() != 2)
        throw IoError(where + ": \"dwc\" must be [n, line]");
      if (!v[0].is_number_integer() || v[0].get<int>() < 0)
        throw IoError(where + ": dwc arity must be a nonnegative integer");
      ln.by.kind = Justification::Kind::Dwc;
      ln.by.n = v[0].get<int>();
      ln.by.i = cite(v[1], "dwc source");
    } else {
      throw IoError(where + ": unrecognized justification");
    }
    p.lines.push_back(std::move(ln));
  }
  if (p.lines.empty()) throw IoError("proof has no lines");
  return p;
}

std::string proof_to_json(const Proof& p, int indent) {
  json j;
  j["format"] = 1;
  json prem = json::array();
  for (const auto& g : p.premises) prem.push_back(print(g));
  j["premises"] = prem;
  json lines = json::array();
  for (const auto& ln : p.lines) {
    json jl;
    jl["f"] = print(ln.f);
    json by;
    switch (ln.by.kind) {
      case Justification::Kind::Premise:
        by["premise"] = true;
        break;
      case Justification::Kind::Axiom: {
        by["axiom"] = ln.by.axiom_id;
        if (ln.by.sub) {
          json sub = json::object();
          for (const auto& [v, f] : *ln.by.sub) sub[v] = print(f);
          by["sub"] = sub;
        }
        break;
      }
      case Justification::Kind::MP:
        by["mp"] = {ln.by.i, ln.by.j};
        break;
      case Justification::Kind::RuleC:
        by["c"] = ln.by.i;
        break;
      case Justification::Kind::Dwc:
        by["dwc"] = {ln.by.n, ln.by.i};
        break;
    }
    jl["by"] = by;
    lines.push_back(jl);
  }
  j["lines"] = lines;
  return j.dump(indent) + "\n";
}

Proof load_proof(const std::string& path) {
  return proof_from_json(slurp(path));
}

void save_proof(const Proof& p, const std::string& path) {
  spill(path, proof_to_json(p));
}

}  // namespace lewiskit
