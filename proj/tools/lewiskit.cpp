// lewiskit: command-line front end for the Lewis conditional-logic toolkit.
//
// Exit codes: 0 success / check passed; 1 check failed or countermodel
// found; 2 usage or malformed input; 3 internal error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lewiskit/algebra.hpp"
#include "lewiskit/duality.hpp"
#include "lewiskit/formula.hpp"
#include "lewiskit/io.hpp"
#include "lewiskit/model_space.hpp"
#include "lewiskit/proof.hpp"
#include "lewiskit/sphere.hpp"

using nlohmann::json;
using namespace lewiskit;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool g_json = false;
std::string g_uniformity = "implication";

UniformityReading reading() {
  if (g_uniformity == "implication") return UniformityReading::Implication;
  if (g_uniformity == "counterfactual") return UniformityReading::Counterfactual;
  throw UsageError("--uniformity must be implication or counterfactual");
}

void emit(const json& j, const std::string& human) {
  if (g_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << human;
}

std::string set_text(WorldSet s, const std::vector<std::string>& names) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (s >> i & 1) {
      if (!first) out += ",";
      out += names[i];
      first = false;
    }
  return out + "}";
}

json set_names(WorldSet s, const std::vector<std::string>& names) {
  json arr = json::array();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (s >> i & 1) arr.push_back(names[i]);
  return arr;
}

std::string describe_model(const SphereModel& m) {
  std::string out = "  worlds:";
  for (const auto& w : m.worlds) out += " " + w;
  out += "\n";
  for (std::size_t w = 0; w < m.worlds.size(); ++w) {
    out += "  spheres(" + m.worlds[w] + "):";
    if (m.spheres[w].empty()) out += " (empty family)";
    for (WorldSet s : m.spheres[w]) out += " " + set_text(s, m.worlds);
    out += "\n";
  }
  for (const auto& [v, s] : m.valuation)
    out += "  valuation " + v + " = " + set_text(s, m.worlds) + "\n";
  return out;
}

Calculus calculus_or_throw(const std::string& name) {
  auto c = Calculus::parse(name);
  if (!c) throw UsageError("unknown calculus/logic name: " + name);
  c->uniformity = reading();
  return *c;
}

int world_index_or_throw(const SphereModel& m, const std::string& w) {
  for (std::size_t i = 0; i < m.worlds.size(); ++i)
    if (m.worlds[i] == w) return static_cast<int>(i);
  throw UsageError("unknown world name: " + w);
}

// A formula may be given positionally or via --formula, but not both ways.
std::string pick_formula(const std::string& positional, const std::string& flag,
                         const char* what) {
  if (positional.empty() == flag.empty())
    throw UsageError(std::string("give the ") + what +
                     " either positionally or via --formula (exactly one)");
  return positional.empty() ? flag : positional;
}

// ---------------------------------------------------------------------------

int cmd_parse(const std::string& text) {
  Formula f = parse(text);
  json j;
  j["ok"] = true;
  j["formula"] = print(f);
  j["variables"] = variables(f);
  j["size"] = dag_size(f);
  std::string human = print(f) + "\n";
  emit(j, human);
  return 0;
}

int cmd_eval(const std::string& model_path, const std::string& text,
             const std::string& world) {
  SphereModel m = load_model(model_path);
  Formula f = parse(text);
  WorldSet holds = eval(m, f);
  json j;
  j["ok"] = true;
  j["formula"] = print(f);
  j["holds_at"] = set_names(holds, m.worlds);
  std::string human =
      "holds at " + set_text(holds, m.worlds) + " of " +
      set_text(m.all_worlds(), m.worlds) + "\n";
  if (!world.empty()) {
    int w = world_index_or_throw(m, world);
    bool sat = holds >> w & 1;
    j["world"] = world;
    j["satisfied"] = sat;
    human = std::string(sat ? "satisfied" : "not satisfied") + " at " + world +
            "\n";
    emit(j, human);
    return sat ? 0 : 1;
  }
  emit(j, human);
  return 0;
}

int cmd_model_check(const std::string& model_path, const std::string& cls) {
  SphereModel m = load_model(model_path);
  auto mc = model_class_from_name(cls);
  if (!mc) throw UsageError("unknown model class: " + cls);
  ClassCheck r = check_class(m, *mc);
  json j;
  j["ok"] = true;
  j["class"] = to_string(*mc);
  j["holds"] = r.holds;
  std::string human;
  if (r.holds) {
    human = "model is " + to_string(*mc) + "\n";
  } else {
    j["witness"] = r.witness;
    human = "model is not " + to_string(*mc) + ": " + r.witness + "\n";
  }
  emit(j, human);
  return r.holds ? 0 : 1;
}

int cmd_algebra_check(const std::string& algebra_path,
                      const std::string& variety) {
  VAlgebra a = load_algebra(algebra_path);
  json j;
  j["ok"] = true;
  if (variety.empty()) {
    AxiomReport r = check_axioms(a);
    j["holds"] = r.ok;
    std::string human;
    if (r.ok) {
      human = "algebra satisfies (C1)-(C4)\n";
    } else {
      json fails = json::array();
      human = "algebra fails:";
      for (const auto& w : r.failures) {
        fails.push_back({{"axiom", w.axiom},
                         {"at", {w.at[0], w.at[1], w.at[2]}}});
        human += " " + w.axiom + " at (" + std::to_string(w.at[0]) + "," +
                 std::to_string(w.at[1]) + "," + std::to_string(w.at[2]) + ")";
      }
      human += "\n";
      j["failures"] = fails;
    }
    emit(j, human);
    return r.ok ? 0 : 1;
  }
  auto v = Variety::parse(variety);
  if (!v) throw UsageError("unknown variety: " + variety);
  VarietyReport r = check_variety(a, *v, reading());
  j["variety"] = v->name();
  j["holds"] = r.ok;
  std::string human;
  if (r.ok) {
    human = "algebra lies in " + v->name() + "\n";
  } else {
    j["detail"] = r.detail;
    human = "algebra is not in " + v->name() + ": " + r.detail + "\n";
  }
  emit(j, human);
  return r.ok ? 0 : 1;
}

int cmd_dualize(const std::string& algebra_path, const std::string& alpha_path,
                const std::string& sphere_path, const std::string& to) {
  if (!algebra_path.empty() && to == "alpha") {
    VAlgebra a = load_algebra(algebra_path);
    std::cout << alpha_to_json(alpha_from_algebra(a));
    return 0;
  }
  if (!alpha_path.empty() && to == "algebra") {
    AlphaModel s = load_alpha(alpha_path);
    std::cout << algebra_to_json(algebra_from_alpha(s));
    return 0;
  }
  if (!alpha_path.empty() && to == "sphere") {
    AlphaModel s = load_alpha(alpha_path);
    std::cout << structure_to_json(sphere_from_alpha(s));
    return 0;
  }
  if (!sphere_path.empty() && to == "alpha") {
    SphereStructure s = load_structure(sphere_path);
    std::cout << alpha_to_json(alpha_from_sphere(s));
    return 0;
  }
  throw UsageError(
      "supported: --algebra to alpha, --alpha to algebra|sphere, "
      "--sphere to alpha");
}

int cmd_roundtrip(const std::string& algebra_path,
                  const std::string& alpha_path) {
  json j;
  j["ok"] = true;
  if (!algebra_path.empty()) {
    VAlgebra a = load_algebra(algebra_path);
    VAlgebra back = algebra_from_alpha(alpha_from_algebra(a));
    bool same = a.atoms == back.atoms && a.cf == back.cf;
    bool stone = stone_roundtrip_check(a);
    j["kind"] = "algebra-alpha-algebra";
    j["identical_tables"] = same;
    j["stone_isomorphism"] = stone;
    bool pass = same && stone;
    emit(j, std::string("roundtrip through the dual alpha-model ") +
                (pass ? "recovers the algebra\n" : "FAILS\n"));
    return pass ? 0 : 1;
  }
  AlphaModel s = load_alpha(alpha_path);
  AlphaModel back = alpha_from_sphere(sphere_from_alpha(s));
  bool same = s.f == back.f;
  j["kind"] = "alpha-sphere-alpha";
  j["identical_tables"] = same;
  if (!same) {
    for (std::size_t a = 0; a < s.f.size() && !j.contains("mismatch"); ++a)
      for (int x = 0; x < s.n(); ++x)
        if (s.f[a][x] != back.f[a][x]) {
          j["mismatch"] = {{"A", a}, {"x", x}};
          break;
        }
  }
  emit(j, std::string("roundtrip through the induced sphere structure ") +
              (same ? "recovers the selection function\n" : "FAILS\n"));
  return same ? 0 : 1;
}

int cmd_enumerate(int atoms, const std::string& variety, bool count_only) {
  if (atoms < 0 || atoms > 2)
    throw UsageError("--atoms must be 0, 1 or 2 (the exhaustive range)");
  std::vector<VAlgebra> all = enumerate_v_algebras(atoms);
  if (!variety.empty()) {
    auto v = Variety::parse(variety);
    if (!v) throw UsageError("unknown variety: " + variety);
    std::erase_if(all, [&](const VAlgebra& a) {
      return !check_variety(a, *v, reading()).ok;
    });
  }
  json j;
  j["ok"] = true;
  j["atoms"] = atoms;
  j["count"] = all.size();
  std::string human = std::to_string(all.size()) + " algebra(s) with " +
                      std::to_string(atoms) + " atom(s)";
  if (!variety.empty()) human += " in " + variety;
  human += "\n";
  if (!count_only) {
    json arr = json::array();
    for (const auto& a : all) arr.push_back(json::parse(algebra_to_json(a)));
    j["algebras"] = arr;
    if (!g_json)
      for (const auto& a : all) human += algebra_to_json(a, -1);
  }
  emit(j, human);
  return 0;
}

int cmd_consequence(const std::string& logic,
                    const std::vector<std::string>& model_paths,
                    const std::vector<std::string>& algebra_paths,
                    const std::vector<std::string>& premises,
                    const std::string& conclusion, bool equational) {
  Calculus c = calculus_or_throw(logic);
  std::vector<Formula> gamma;
  for (const auto& g : premises) gamma.push_back(parse(g));
  Formula phi = parse(conclusion);
  json j;
  j["ok"] = true;
  j["logic"] = c.name();

  if (!model_paths.empty()) {
    if (!algebra_paths.empty())
      throw UsageError("give either models or algebras, not both");
    std::vector<SphereModel> models;
    for (const auto& p : model_paths) models.push_back(load_model(p));
    for (std::size_t i = 0; i < models.size(); ++i)
      if (!satisfies_extensions(models[i], c.extensions))
        throw UsageError("model #" + std::to_string(i + 1) +
                         " is outside the class required by " + c.name());
    if (c.strength == Strength::Local) {
      auto w = local_consequence(models, gamma, phi);
      j["holds"] = !w.has_value();
      if (w) {
        j["witness"] = {{"model", w->model + 1},
                        {"world", models[w->model].worlds[w->world]}};
        emit(j, "does not hold: fails in model #" +
                    std::to_string(w->model + 1) + " at world " +
                    models[w->model].worlds[w->world] + "\n");
        return 1;
      }
      emit(j, "holds locally in all given models\n");
      return 0;
    }
    auto w = global_consequence(models, gamma, phi);
    j["holds"] = !w.has_value();
    if (w) {
      j["witness"] = {{"model", *w + 1}};
      emit(j, "does not hold: fails in model #" + std::to_string(*w + 1) + "\n");
      return 1;
    }
    emit(j, "holds globally in all given models\n");
    return 0;
  }

  if (algebra_paths.empty())
    throw UsageError("consequence needs at least one --model or --algebra");
  std::vector<VAlgebra> algebras;
  for (const auto& p : algebra_paths) algebras.push_back(load_algebra(p));
  Variety v;
  v.ext = c.extensions;
  for (std::size_t i = 0; i < algebras.size(); ++i)
    if (!check_variety(algebras[i], v, c.uniformity).ok)
      throw UsageError("algebra #" + std::to_string(i + 1) +
                       " is outside the variety required by " + c.name());
  if (equational) {
    std::vector<Equation> eqs;
    for (const auto& g : gamma) eqs.push_back(tau(g));
    auto w = equational_consequence(algebras, eqs, tau(phi));
    j["holds"] = !w.has_value();
    j["mode"] = "equational";
    if (w) {
      json h = json::object();
      for (const auto& [var, e] : w->h) h[var] = e;
      j["witness"] = {{"algebra", w->algebra + 1}, {"assignment", h}};
      std::string human = "does not hold: algebra #" +
                          std::to_string(w->algebra + 1) + " under";
      for (const auto& [var, e] : w->h)
        human += " " + var + "=" + std::to_string(e);
      emit(j, human + "\n");
      return 1;
    }
    emit(j, "holds equationally in all given algebras\n");
    return 0;
  }
  auto w = degree_consequence(algebras, gamma, phi);
  j["holds"] = !w.has_value();
  j["mode"] = "degree";
  if (w) {
    json h = json::object();
    for (const auto& [var, e] : w->h) h[var] = e;
    j["witness"] = {{"algebra", w->algebra + 1},
                    {"assignment", h},
                    {"bound", w->bound}};
    std::string human = "does not hold: algebra #" +
                        std::to_string(w->algebra + 1) + " under";
    for (const auto& [var, e] : w->h)
      human += " " + var + "=" + std::to_string(e);
    human += " (premise meet " + std::to_string(w->bound) + ")";
    emit(j, human + "\n");
    return 1;
  }
  emit(j, "degree consequence holds in all given algebras\n");
  return 0;
}

int cmd_countermodel(const std::string& logic,
                     const std::vector<std::string>& premises,
                     const std::string& conclusion, int max_worlds,
                     int max_levels, std::uint64_t seed, int samples) {
  Calculus c = calculus_or_throw(logic);
  std::vector<Formula> gamma;
  for (const auto& g : premises) gamma.push_back(parse(g));
  Formula phi = parse(conclusion);
  CountermodelResult r = countermodel_search(gamma, phi, c.strength,
                                             c.extensions, max_worlds,
                                             max_levels, seed, samples);
  json j;
  j["ok"] = true;
  j["found"] = r.found;
  j["exhaustive"] = r.exhaustive;
  if (r.found) {
    j["model"] = json::parse(model_to_json(r.model));
    std::string human = "countermodel found:\n" + describe_model(r.model);
    if (c.strength == Strength::Local) {
      j["world"] = r.model.worlds[r.world];
      human += "  at world " + r.model.worlds[r.world] + "\n";
    }
    emit(j, human);
    return 1;
  }
  emit(j, std::string("no countermodel with at most ") +
              std::to_string(max_worlds) + " worlds (" +
              (r.exhaustive ? "exhaustive" : "sampled beyond 3 worlds") +
              ")\n");
  return 0;
}

int cmd_prove(const std::string& calculus, const std::string& script) {
  Calculus c = calculus_or_throw(calculus);
  Proof p = load_proof(script);
  CheckResult r = check_proof(c, p);
  json j;
  j["ok"] = true;
  j["calculus"] = c.name();
  j["accepted"] = r.accepted;
  if (r.accepted) {
    j["conclusion"] = print(p.lines.back().f);
    emit(j, "accepted: " + print(p.lines.back().f) + "\n");
    return 0;
  }
  j["line"] = r.line;
  j["reason"] = r.reason;
  emit(j, "rejected at line " + std::to_string(r.line) + ": " + r.reason + "\n");
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification and decision toolkit for Lewis's variably "
               "strict conditional logics"};
  app.require_subcommand(1);
  app.add_flag("--json", g_json, "machine-readable output");
  app.add_option("--uniformity", g_uniformity,
                 "reading of the (U) schema: implication|counterfactual")
      ->expected(1);

  std::string formula_text, formula_flag, model_path, world, cls, algebra_path;
  std::string variety, alpha_path, sphere_path, to, logic = "GV";
  std::string calculus = "GV", script, conclusion;
  std::vector<std::string> model_paths, algebra_paths, premises;
  int atoms = 2, max_worlds = 3, max_levels = 2, samples = 20000;
  std::uint64_t seed = 0;
  bool count_only = false, equational = false;

  auto* sub_parse = app.add_subcommand("parse", "parse and reprint a formula");
  sub_parse->add_option("text", formula_text, "formula text");
  sub_parse->add_option("--formula", formula_flag, "formula text");

  auto* sub_eval = app.add_subcommand("eval", "evaluate a formula in a model");
  sub_eval->add_option("--model", model_path, "model JSON file")->required();
  sub_eval->add_option("--world", world, "check satisfaction at this world");
  sub_eval->add_option("text", formula_text, "formula text");
  sub_eval->add_option("--formula", formula_flag, "formula text");

  auto* sub_mc = app.add_subcommand("model-check",
                                    "test a model-class predicate");
  sub_mc->add_option("--model", model_path, "model JSON file")->required();
  sub_mc->add_option("--class", cls, "model class name")->required();

  auto* sub_ac = app.add_subcommand("algebra-check",
                                    "check the algebra axioms or a variety");
  sub_ac->add_option("--algebra", algebra_path, "algebra JSON file")->required();
  sub_ac->add_option("--variety", variety, "variety name (V*, LC, CA)");

  auto* sub_du = app.add_subcommand("dualize", "translate between dual forms");
  sub_du->add_option("--algebra", algebra_path, "algebra JSON file");
  sub_du->add_option("--alpha", alpha_path, "alpha-model JSON file");
  sub_du->add_option("--sphere", sphere_path, "sphere structure JSON file");
  sub_du->add_option("--to", to, "target: alpha|algebra|sphere")->required();

  auto* sub_rt = app.add_subcommand("roundtrip", "check duality roundtrips");
  sub_rt->add_option("--algebra", algebra_path, "algebra JSON file");
  sub_rt->add_option("--alpha", alpha_path, "alpha-model JSON file");

  auto* sub_en = app.add_subcommand("enumerate",
                                    "list the algebras with k atoms");
  sub_en->add_option("--atoms", atoms, "number of atoms (0..2)")->required();
  sub_en->add_option("--variety", variety, "restrict to a variety");
  sub_en->add_flag("--count-only", count_only, "print only the count");

  auto* sub_cq = app.add_subcommand("consequence",
                                    "consequence over models or algebras");
  sub_cq->add_option("--logic", logic, "GV/LV plus extension letters");
  sub_cq->add_option("--model", model_paths, "model JSON file (repeatable)");
  sub_cq->add_option("--algebra", algebra_paths,
                     "algebra JSON file (repeatable)");
  sub_cq->add_option("--premises,--premise", premises,
                     "premise formula (repeatable)")
      ->allow_extra_args(false);
  sub_cq->add_flag("--equational", equational,
                   "equational instead of degree consequence (algebras)");
  sub_cq->add_option("conclusion", conclusion, "conclusion formula");
  sub_cq->add_option("--formula", formula_flag, "conclusion formula");

  auto* sub_cm = app.add_subcommand("countermodel",
                                    "bounded countermodel search");
  sub_cm->add_option("--logic", logic, "GV/LV plus extension letters");
  sub_cm->add_option("--premises,--premise", premises,
                     "premise formula (repeatable)")
      ->allow_extra_args(false);
  sub_cm->add_option("--max-worlds", max_worlds, "largest world count");
  sub_cm->add_option("--max-levels", max_levels, "largest sphere-family size");
  sub_cm->add_option("--seed", seed, "sampling seed");
  sub_cm->add_option("--samples", samples, "samples per size beyond 3 worlds");
  sub_cm->add_option("conclusion", conclusion, "conclusion formula");
  sub_cm->add_option("--formula", formula_flag, "conclusion formula");

  auto* sub_pr = app.add_subcommand("prove", "replay a proof script");
  sub_pr->add_option("--calculus", calculus, "GV/LV plus extension letters");
  sub_pr->add_option("--script", script, "proof JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(sub_parse))
      return cmd_parse(pick_formula(formula_text, formula_flag, "formula"));
    if (app.got_subcommand(sub_eval))
      return cmd_eval(model_path,
                      pick_formula(formula_text, formula_flag, "formula"),
                      world);
    if (app.got_subcommand(sub_mc)) return cmd_model_check(model_path, cls);
    if (app.got_subcommand(sub_ac))
      return cmd_algebra_check(algebra_path, variety);
    if (app.got_subcommand(sub_du))
      return cmd_dualize(algebra_path, alpha_path, sphere_path, to);
    if (app.got_subcommand(sub_rt)) {
      if (algebra_path.empty() == alpha_path.empty())
        throw UsageError("roundtrip needs exactly one of --algebra/--alpha");
      return cmd_roundtrip(algebra_path, alpha_path);
    }
    if (app.got_subcommand(sub_en))
      return cmd_enumerate(atoms, variety, count_only);
    if (app.got_subcommand(sub_cq))
      return cmd_consequence(logic, model_paths, algebra_paths, premises,
                             pick_formula(conclusion, formula_flag,
                                          "conclusion"),
                             equational);
    if (app.got_subcommand(sub_cm))
      return cmd_countermodel(logic, premises,
                              pick_formula(conclusion, formula_flag,
                                           "conclusion"),
                              max_worlds, max_levels, seed, samples);
    if (app.got_subcommand(sub_pr)) return cmd_prove(calculus, script);
    std::cerr << "error: no subcommand selected\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
