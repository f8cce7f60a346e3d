// Acceptance suite. Each criterion prints one [PASS]/[FAIL] line together
// with its runtime and budget; the process exits 0 only if every criterion
// passes within budget.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lewiskit/algebra.hpp"
#include "lewiskit/duality.hpp"
#include "lewiskit/formula.hpp"
#include "lewiskit/io.hpp"
#include "lewiskit/model_space.hpp"
#include "lewiskit/proof.hpp"
#include "lewiskit/sphere.hpp"

using namespace lewiskit;

namespace {

std::string fx(const std::string& rel) {
  return std::string(LEWISKIT_FIXTURES) + "/" + rel;
}

bool in_variety(const VAlgebra& a, const std::string& name) {
  auto v = Variety::parse(name);
  return v && check_variety(a, *v).ok;
}

// ---------------------------------------------------------------------------
// 1. The three published 4-element tables load, satisfy the axioms, land in
//    their varieties, and every single-cell mutation of the first one
//    breaks at least one of the checks.
// ---------------------------------------------------------------------------
bool criterion_fixtures(std::string& detail) {
  const std::vector<std::vector<Elem>> table_a = {
      {3, 3, 3, 3}, {0, 3, 0, 3}, {0, 0, 3, 3}, {0, 1, 2, 3}};
  const std::vector<std::vector<Elem>> table_b = {
      {3, 3, 3, 3}, {0, 3, 0, 3}, {0, 0, 3, 3}, {0, 0, 0, 3}};
  const std::vector<std::vector<Elem>> table_c = {
      {3, 3, 3, 3}, {0, 3, 0, 3}, {0, 0, 3, 3}, {0, 3, 0, 3}};
  VAlgebra a = load_algebra(fx("algebras/a.json"));
  VAlgebra b = load_algebra(fx("algebras/b.json"));
  VAlgebra c = load_algebra(fx("algebras/c.json"));
  if (a.cf != table_a || b.cf != table_b || c.cf != table_c) {
    detail = "fixture tables differ from the published ones";
    return false;
  }
  if (!check_axioms(a).ok || !check_axioms(b).ok || !check_axioms(c).ok) {
    detail = "a fixture fails the V-algebra axioms";
    return false;
  }
  if (!in_variety(a, "CA") || !in_variety(a, "VCSU")) {
    detail = "first fixture misses CA or VCSU";
    return false;
  }
  if (!in_variety(b, "VWA") || !in_variety(c, "VTSA")) {
    detail = "second or third fixture misses its variety";
    return false;
  }
  for (Elem x = 0; x < 4; ++x)
    for (Elem y = 0; y < 4; ++y)
      for (Elem v = 0; v < 4; ++v) {
        if (v == a.cf[x][y]) continue;
        VAlgebra m = a;
        m.cf[x][y] = v;
        if (check_axioms(m).ok && in_variety(m, "CA") &&
            in_variety(m, "VCSU")) {
          detail = "a mutation of the first fixture passes every check";
          return false;
        }
      }
  return true;
}

// ---------------------------------------------------------------------------
// 2. Filters, box values and congruences of the first fixture.
// ---------------------------------------------------------------------------
bool criterion_filters(std::string& detail) {
  VAlgebra a = load_algebra(fx("algebras/a.json"));
  auto lat = lattice_filters(a);
  if (lat.size() != 4) {
    detail = "expected 4 lattice filters";
    return false;
  }
  auto open = open_filters(a);
  if (open.size() != 2 || open[0] != std::vector<Elem>{3} ||
      open[1] != std::vector<Elem>{0, 1, 2, 3}) {
    detail = "open filters are not {unit} and the full algebra";
    return false;
  }
  if (a.box(3) != 3 || a.box(1) != 0 || a.box(2) != 0 || a.box(0) != 0) {
    detail = "box values differ from the published ones";
    return false;
  }
  if (congruences(a).size() != open.size()) {
    detail = "congruence count differs from the open-filter count";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 3. The two-world model refutes p |- box p locally, the bounded search
//    finds such a countermodel, and globally none exists up to 3 worlds.
// ---------------------------------------------------------------------------
bool criterion_countermodels(std::string& detail) {
  SphereModel m = load_model(fx("models/two_world.json"));
  Formula p = var("p");
  if (eval(m, box(p)) != 0) {
    detail = "box p should hold nowhere in the two-world model";
    return false;
  }
  std::vector<SphereModel> ms = {m};
  auto w = local_consequence(ms, {p}, box(p));
  if (!w || w->model != 0 || w->world != 0) {
    detail = "local consequence should fail exactly at w1";
    return false;
  }
  auto found = countermodel_search({p}, box(p), Strength::Local, {}, 2);
  if (!found.found || !found.exhaustive) {
    detail = "no local countermodel with at most 2 worlds";
    return false;
  }
  WorldSet vp = eval(found.model, p);
  WorldSet vb = eval(found.model, box(p));
  if (!((vp >> found.world) & 1) || ((vb >> found.world) & 1)) {
    detail = "search returned a model that is no countermodel";
    return false;
  }
  auto global = countermodel_search({p}, box(p), Strength::Global, {}, 3);
  if (global.found || !global.exhaustive) {
    detail = "global search up to 3 worlds should be exhaustive and empty";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 4. The exhaustive small-algebra enumeration matches a naive oracle that
//    assembles C4-consistent rows, and the duality roundtrips are the
//    identity on the whole corpus.
// ---------------------------------------------------------------------------
bool criterion_duality(std::string& detail) {
  // Independent oracle: candidate rows are the meet-preserving self-maps.
  auto naive_tables = [](int atoms) {
    const int n = 1 << atoms;
    const Elem top = static_cast<Elem>(n - 1);
    std::vector<std::vector<Elem>> rows;
    std::vector<Elem> row(n);
    std::function<void(int)> build = [&](int y) {
      if (y == n) {
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            if (row[a & b] != (row[a] & row[b])) return;
        rows.push_back(row);
        return;
      }
      for (Elem v = 0; v <= top; ++v) {
        row[y] = v;
        build(y + 1);
      }
    };
    build(0);

    auto leq = [&](Elem a, Elem b) { return (a & ~b) == 0; };
    auto eqv = [&](Elem a, Elem b) { return static_cast<Elem>(~(a ^ b)) & top; };
    std::vector<std::vector<std::vector<Elem>>> tables;
    std::vector<int> pick(n, 0);
    std::function<void(int)> assemble = [&](int x) {
      if (x == n) {
        std::vector<std::vector<Elem>> cf;
        for (int i = 0; i < n; ++i) cf.push_back(rows[pick[i]]);
        for (int i = 0; i < n; ++i)
          if (cf[i][i] != top) return;  // C1
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            for (int z = 0; z < n; ++z) {
              if (!leq(cf[a][b] & cf[b][a], eqv(cf[a][z], cf[b][z])))
                return;  // C2
              int ab = a | b;
              if ((cf[ab][a] | cf[ab][b] |
                   eqv(cf[ab][z], cf[a][z] & cf[b][z])) != top)
                return;  // C3
            }
        tables.push_back(std::move(cf));
        return;
      }
      for (std::size_t r = 0; r < rows.size(); ++r) {
        pick[x] = static_cast<int>(r);
        assemble(x + 1);
      }
    };
    assemble(0);
    return std::pair(rows.size(), tables);
  };

  for (int atoms = 0; atoms <= 2; ++atoms) {
    auto [row_count, naive] = naive_tables(atoms);
    if (atoms == 2 && row_count != 25) {
      detail = "expected 25 meet-preserving rows on 4 elements";
      return false;
    }
    auto lib = enumerate_v_algebras(atoms);
    if (lib.size() != naive.size()) {
      detail = "enumeration count mismatch at " + std::to_string(atoms) +
               " atoms: library " + std::to_string(lib.size()) + ", oracle " +
               std::to_string(naive.size());
      return false;
    }
    std::vector<std::vector<std::vector<Elem>>> lib_tables;
    for (const auto& a : lib) lib_tables.push_back(a.cf);
    std::sort(lib_tables.begin(), lib_tables.end());
    std::sort(naive.begin(), naive.end());
    if (lib_tables != naive) {
      detail = "enumeration and oracle disagree on the tables";
      return false;
    }
    const std::size_t expected =
        atoms == 0 ? 1 : (atoms == 1 ? 2 : 36);
    if (lib.size() != expected) {
      detail = "unexpected corpus size at " + std::to_string(atoms) + " atoms";
      return false;
    }
    for (const auto& a : lib) {
      if (!stone_roundtrip_check(a)) {
        detail = "stone roundtrip failed on an enumerated algebra";
        return false;
      }
      AlphaModel s = alpha_from_algebra(a);
      if (alpha_from_sphere(sphere_from_alpha(s)).f != s.f) {
        detail = "selection-sphere roundtrip is not the identity";
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 5. Randomized soundness: axioms evaluate to the full world set on models
//    of their classes, across 10,000 seeded samples.
// ---------------------------------------------------------------------------
bool criterion_soundness(std::string& detail) {
  std::mt19937_64 rng(20250814);
  const std::vector<std::set<char>> classes = {
      {}, {'W'}, {'C'}, {'N'}, {'T'}, {'S'}, {'U'}, {'A'}};
  const std::vector<std::string> base = {
      "A1", "A2", "A3", "AndDef1", "AndDef2", "OrDef1", "OrDef2",
      "ZeroDef1", "ZeroDef2", "OneDef1", "OneDef2", "Truth",
      "L1", "L2", "L3", "L4"};
  const std::vector<std::string> vars = {"p", "q", "r"};
  for (int it = 0; it < 10000; ++it) {
    const auto& ext = classes[it % classes.size()];
    SphereModel m = random_model(rng, ext, 4, 3, vars);
    std::vector<std::string> ids = base;
    for (char c : ext) ids.emplace_back(1, c);
    const std::string& id = ids[rng() % ids.size()];
    Formula pattern = schema(id);
    Substitution s;
    for (const auto& v : variables(pattern))
      s[v] = random_formula(rng, vars, 2);
    Formula inst = substitute(pattern, s);
    if (eval(m, inst) != m.all_worlds()) {
      detail = "axiom " + id + " failed on a matching model (sample " +
               std::to_string(it) + ")";
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 6. Exhaustively over models with at most 3 worlds, 2 sphere levels and
//    variables p, q: global consequence coincides with local consequence
//    from premises boxed up to some level n0 <= 3, on 50 sampled queries.
// ---------------------------------------------------------------------------
bool criterion_reduction(std::string& detail) {
  std::mt19937_64 rng(7);
  const std::vector<std::string> vars = {"p", "q"};
  struct Query {
    std::vector<Formula> gamma;
    Formula phi;
    std::vector<std::array<Formula, 4>> boxed;  // per premise, levels 0..3
    bool global = true;
    std::array<bool, 4> local{true, true, true, true};
  };
  std::vector<Query> queries;
  for (int i = 0; i < 50; ++i) {
    Query q;
    std::size_t size = rng() % 3;
    for (std::size_t k = 0; k < size; ++k)
      q.gamma.push_back(random_formula(rng, vars, 3));
    q.phi = random_formula(rng, vars, 3);
    for (const Formula& g : q.gamma) {
      std::array<Formula, 4> b{g, box(g), box_iterate(g, 2), box_iterate(g, 3)};
      q.boxed.push_back(b);
    }
    queries.push_back(std::move(q));
  }

  EnumLimits lim{3, 2, vars};
  for_each_model(lim, [&](const SphereModel& m) {
    const WorldSet all = m.all_worlds();
    for (Query& q : queries) {
      bool any_local =
          q.local[0] || q.local[1] || q.local[2] || q.local[3];
      if (!q.global && !any_local) continue;
      WorldSet vphi = eval(m, q.phi);
      if (q.global) {
        bool premises_global = true;
        for (const Formula& g : q.gamma)
          if (eval(m, g) != all) {
            premises_global = false;
            break;
          }
        if (premises_global && vphi != all) q.global = false;
      }
      if (any_local) {
        WorldSet cum = all;
        for (int n = 0; n <= 3; ++n) {
          for (const auto& b : q.boxed) cum &= eval(m, b[n]);
          if (q.local[n] && (cum & ~vphi) != 0) q.local[n] = false;
        }
      }
    }
    return true;
  });

  for (std::size_t i = 0; i < queries.size(); ++i) {
    const Query& q = queries[i];
    bool local_some = q.local[0] || q.local[1] || q.local[2] || q.local[3];
    if (q.global != local_some) {
      detail = "query " + std::to_string(i) +
               ": global/local verdicts differ (global " +
               (q.global ? "yes" : "no") + ")";
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 7. The bundled proof scripts replay under their calculi and their
//    conclusions are semantically sound on every small model.
// ---------------------------------------------------------------------------
bool criterion_proofs(std::string& detail) {
  const std::vector<std::pair<std::string, std::string>> bundle = {
      {"l1_instance", "LV"},        {"monotonicity", "LV"},
      {"dwc0", "LV"},               {"dwc0_from_premise", "GV"},
      {"dwc1_from_c_l4", "GV"},     {"dwc2_from_c_l4", "GV"},
      {"dwc3_from_c_l4", "GV"},     {"c_from_dwc2", "GV"},
      {"l4_from_dwc2", "LV"},
  };
  for (const auto& [name, cname] : bundle) {
    Proof pr = load_proof(fx("proofs/" + name + ".json"));
    auto c = Calculus::parse(cname);
    if (!c) {
      detail = "bad calculus name " + cname;
      return false;
    }
    CheckResult res = check_proof(*c, pr);
    if (!res.accepted) {
      detail = name + " rejected at line " + std::to_string(res.line) + ": " +
               res.reason;
      return false;
    }
    // Bounded semantic check over every model with at most 2 worlds on the
    // variables of the script.
    std::vector<std::string> vars;
    for (const auto& g : pr.premises)
      for (const auto& v : variables(g)) vars.push_back(v);
    for (const auto& v : variables(pr.lines.back().f)) vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    EnumLimits lim{2, 2, vars};
    bool sound = true;
    for_each_model(lim, [&](const SphereModel& m) {
      for (const auto& g : pr.premises)
        if (eval(m, g) != m.all_worlds()) return true;
      if (eval(m, pr.lines.back().f) != m.all_worlds()) {
        sound = false;
        return false;
      }
      return true;
    });
    if (!sound) {
      detail = name + ": conclusion fails on a small model";
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 8. Degree-preserving consequence over the 2-atom corpus agrees with local
//    consequence over the dual sphere structures under every valuation.
// ---------------------------------------------------------------------------
bool criterion_degrees(std::string& detail) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> vars = {"p", "q"};
  auto corpus = enumerate_v_algebras(2);
  if (corpus.size() != 36) {
    detail = "expected 36 algebras on 2 atoms";
    return false;
  }

  // For each algebra, the dual sphere structure under every valuation of
  // p and q by point sets.
  std::vector<std::vector<SphereModel>> duals;
  for (const auto& a : corpus) {
    SphereStructure s = sphere_from_alpha(alpha_from_algebra(a));
    std::vector<SphereModel> ms;
    const int subsets = 1 << s.n();
    for (int vp = 0; vp < subsets; ++vp)
      for (int vq = 0; vq < subsets; ++vq)
        ms.push_back(model_of_structure(
            s, {{"p", static_cast<PointSet>(vp)},
                {"q", static_cast<PointSet>(vq)}}));
    duals.push_back(std::move(ms));
  }

  for (int it = 0; it < 200; ++it) {
    std::vector<Formula> gamma;
    std::size_t size = rng() % 3;
    for (std::size_t k = 0; k < size; ++k)
      gamma.push_back(random_formula(rng, vars, 3));
    Formula phi = random_formula(rng, vars, 3);
    for (std::size_t ai = 0; ai < corpus.size(); ++ai) {
      std::vector<VAlgebra> one = {corpus[ai]};
      bool degree_holds = !degree_consequence(one, gamma, phi).has_value();
      bool local_holds =
          !local_consequence(duals[ai], gamma, phi).has_value();
      if (degree_holds != local_holds) {
        detail = "query " + std::to_string(it) + ", algebra " +
                 std::to_string(ai) + ": degree " +
                 (degree_holds ? "holds" : "fails") + " but local " +
                 (local_holds ? "holds" : "fails");
        return false;
      }
    }
  }
  return true;
}

struct Criterion {
  const char* name;
  double budget_s;
  bool (*run)(std::string&);
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"published algebra tables, varieties and mutation sensitivity", 1.0,
       criterion_fixtures},
      {"filters, box values and congruences of the first fixture", 1.0,
       criterion_filters},
      {"local refutation of p |- box p and exhaustive global agreement", 10.0,
       criterion_countermodels},
      {"enumeration oracle cross-check and duality roundtrips", 300.0,
       criterion_duality},
      {"axiom soundness on 10000 random class-matching models", 60.0,
       criterion_soundness},
      {"global-to-local reduction over the exhaustive model space", 300.0,
       criterion_reduction},
      {"bundled proof scripts replay and are semantically sound", 10.0,
       criterion_proofs},
      {"degree consequence agrees with dual sphere semantics", 300.0,
       criterion_degrees},
  };

  bool all_ok = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    std::string detail;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const bool within = dt <= c.budget_s;
    const bool pass = ok && within;
    std::printf("[%s] criterion %zu: %s (%.2fs, budget %.0fs)\n",
                pass ? "PASS" : "FAIL", i + 1, c.name, dt, c.budget_s);
    if (!ok && !detail.empty()) std::printf("       %s\n", detail.c_str());
    if (ok && !within) std::printf("       over budget\n");
    all_ok = all_ok && pass;
  }
  return all_ok ? 0 : 1;
}
