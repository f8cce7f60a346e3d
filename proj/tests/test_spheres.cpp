// Sphere-model semantics, model classes, generated submodels and
// local/global consequence.

#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "lewiskit/formula.hpp"
#include "lewiskit/io.hpp"
#include "lewiskit/model_space.hpp"
#include "lewiskit/sphere.hpp"

using namespace lewiskit;

namespace {

std::string fx(const std::string& rel) {
  return std::string(LEWISKIT_FIXTURES) + "/" + rel;
}

SphereModel two_world() { return load_model(fx("models/two_world.json")); }
SphereModel three_world() { return load_model(fx("models/three_world.json")); }

const Formula p = var("p");
const Formula q = var("q");

}  // namespace

TEST_CASE("two-world model: shape and basic evaluation") {
  SphereModel m = two_world();
  REQUIRE(m.worlds == std::vector<std::string>{"w1", "w2"});
  REQUIRE(m.spheres.size() == 2);
  CHECK(m.spheres[0] == std::vector<WorldSet>{0b10});
  CHECK(m.spheres[1] == std::vector<WorldSet>{0b10, 0b11});
  CHECK(m.valuation.at("p") == 0b01);
  CHECK(m.all_worlds() == 0b11);
  CHECK(m.world_index("w2") == 1);
  CHECK(m.world_index("nope") == -1);
  CHECK(m.sphere_union(0) == 0b10);
  CHECK(m.sphere_union(1) == 0b11);

  CHECK(eval(m, p) == 0b01);
  CHECK(eval(m, verum()) == 0b11);
  CHECK(eval(m, falsum()) == 0);
  CHECK(eval(m, neg(p)) == 0b10);
  CHECK(eval(m, q) == 0);  // variable absent from the valuation
  CHECK(eval(m, imp(p, q)) == 0b10);
}

TEST_CASE("two-world model: modal and counterfactual evaluation") {
  SphereModel m = two_world();
  // box p fails everywhere: every sphere union leaks outside v(p) = {w1}.
  CHECK(eval(m, box(p)) == 0);
  CHECK(eval(m, dia(p)) == 0b10);
  CHECK(eval(m, box(neg(p))) == 0b01);
  // p |> q holds vacuously at w1 (no sphere meets v(p)) and fails at w2.
  CHECK(eval(m, cf(p, q)) == 0b01);
  CHECK(eval(m, cf(p, p)) == 0b11);
  CHECK(eval(m, cf(neg(p), p)) == 0);       // the box p pattern again
  CHECK(eval(m, might_cf(p, p)) == 0b10);   // might: non-vacuous antecedent
}

TEST_CASE("accessibility relation of the two-world model") {
  SphereModel m = two_world();
  std::vector<std::pair<int, int>> want = {{0, 1}, {1, 0}, {1, 1}};
  CHECK(accessibility(m) == want);
}

TEST_CASE("box is the restriction of strict necessity to sphere unions") {
  EnumLimits lim{2, 2, {"p", "q"}};
  std::mt19937_64 rng(99);
  auto check_box = [](const SphereModel& m, const Formula& f) {
    WorldSet vf = eval(m, f);
    WorldSet vbox = eval(m, box(f));
    for (int w = 0; w < m.world_count(); ++w) {
      bool expect = (m.sphere_union(w) & ~vf) == 0;
      REQUIRE(((vbox >> w) & 1) == (expect ? 1u : 0u));
    }
  };
  for_each_model(lim, [&](const SphereModel& m) {
    check_box(m, p);
    check_box(m, conj(p, q));
    check_box(m, cf(p, q));
    return true;
  });
  for (int i = 0; i < 50; ++i) {
    SphereModel m = random_model(rng, {}, 3, 3, {"p", "q"});
    check_box(m, random_formula(rng, {"p", "q"}, 3));
  }
}

TEST_CASE("reach and generated submodels") {
  SphereModel m = three_world();
  // w1 and w2 see only each other; w3 sees everything.
  CHECK(reach(m, 0b001) == 0b011);
  CHECK(reach(m, 0b010) == 0b011);
  CHECK(reach(m, 0b100) == 0b111);
  CHECK(reach(m, 0) == 0);

  SphereModel sub = generated_submodel(m, 0b001);
  REQUIRE(sub.worlds == std::vector<std::string>{"w1", "w2"});
  CHECK(sub.spheres[0] == std::vector<WorldSet>{0b10});
  CHECK(sub.spheres[1] == std::vector<WorldSet>{0b10, 0b11});
  CHECK(sub.valuation.at("p") == 0b01);
  CHECK(sub.valuation.at("q") == 0b10);  // w3 dropped from v(q)

  // Truth is invariant under generated submodels on the retained worlds.
  for (const Formula& f : {p, q, box(p), cf(p, q), cf(q, p), dia(conj(p, q)),
                           might_cf(q, p), imp(box(q), cf(p, q))}) {
    WorldSet big = eval(m, f);
    WorldSet small = eval(sub, f);
    for (int w = 0; w < 2; ++w)
      REQUIRE(((big >> w) & 1) == ((small >> w) & 1));
  }
}

TEST_CASE("model class predicates on the two-world model") {
  SphereModel m = two_world();
  auto holds = [&](ModelClass c) { return check_class(m, c).holds; };
  CHECK(holds(ModelClass::Normal));
  CHECK(holds(ModelClass::Stalnakerian));
  CHECK_FALSE(holds(ModelClass::TotallyReflexive));
  CHECK_FALSE(holds(ModelClass::WeaklyCentered));
  CHECK_FALSE(holds(ModelClass::Centered));
  CHECK_FALSE(holds(ModelClass::Uniform));
  CHECK_FALSE(holds(ModelClass::Absolute));
  CHECK_FALSE(holds(ModelClass::WeaklyTrivial));
  CHECK_FALSE(holds(ModelClass::Trivial));
  // Failing checks name a witness world.
  CHECK(check_class(m, ModelClass::Centered).witness == "w1");
}

TEST_CASE("class inclusions hold on a handcrafted centered model") {
  SphereModel m;
  m.worlds = {"u", "v"};
  m.spheres = {{0b01, 0b11}, {0b10, 0b11}};
  m.valuation["p"] = 0b01;
  REQUIRE(normalize_model(m) == std::nullopt);
  CHECK(check_class(m, ModelClass::Centered).holds);
  CHECK(check_class(m, ModelClass::WeaklyCentered).holds);
  CHECK(check_class(m, ModelClass::TotallyReflexive).holds);
  CHECK(check_class(m, ModelClass::Normal).holds);
  CHECK(check_class(m, ModelClass::Uniform).holds);
  CHECK_FALSE(check_class(m, ModelClass::Absolute).holds);
  CHECK_FALSE(check_class(m, ModelClass::WeaklyTrivial).holds);
}

TEST_CASE("class name table") {
  CHECK(model_class_names().size() == 9);
  CHECK(model_class_from_name("weakly-centered") == ModelClass::WeaklyCentered);
  CHECK(model_class_from_name("stalnakerian") == ModelClass::Stalnakerian);
  CHECK_FALSE(model_class_from_name("Centered").has_value());
  CHECK(to_string(ModelClass::TotallyReflexive) == "totally-reflexive");
}

TEST_CASE("normalization drops empty spheres and rejects non-nested families") {
  SphereModel m;
  m.worlds = {"a", "b"};
  m.spheres = {{0b11, 0, 0b01}, {}};
  m.valuation["p"] = 0b01;
  REQUIRE(normalize_model(m) == std::nullopt);
  CHECK(m.spheres[0] == std::vector<WorldSet>{0b01, 0b11});

  SphereModel bad;
  bad.worlds = {"a", "b"};
  bad.spheres = {{0b01, 0b10}, {}};
  auto err = normalize_model(bad);
  REQUIRE(err.has_value());
  CHECK(err->find("nested") != std::string::npos);
}

TEST_CASE("local consequence: p does not force box p") {
  SphereModel m = two_world();
  std::vector<SphereModel> ms = {m};
  auto w = local_consequence(ms, {p}, box(p));
  REQUIRE(w.has_value());
  CHECK(w->model == 0);
  CHECK(w->world == 0);  // w1: p holds there but box p fails
  // Tautological and premise-repeating consequences hold.
  CHECK_FALSE(local_consequence(ms, {p}, p).has_value());
  CHECK_FALSE(local_consequence(ms, {p, q}, conj(p, q)).has_value());
  CHECK_FALSE(local_consequence(ms, {}, cf(p, p)).has_value());
  // The least witness in (model, world) order is returned.
  std::vector<SphereModel> two = {m, m};
  auto w2 = local_consequence(two, {p}, box(p));
  REQUIRE(w2.has_value());
  CHECK(w2->model == 0);
}

TEST_CASE("global consequence: p forces box p globally") {
  SphereModel m = two_world();
  std::vector<SphereModel> ms = {m};
  // v(p) is not the full world set, so m is no global counterexample.
  CHECK_FALSE(global_consequence(ms, {p}, box(p)).has_value());
  // Without premises the conclusion must hold globally.
  auto w = global_consequence(ms, {}, p);
  REQUIRE(w.has_value());
  CHECK(*w == 0);
  CHECK_FALSE(global_consequence(ms, {}, cf(p, p)).has_value());
}

TEST_CASE("reduce_global_to_local emits iterated boxes grouped by premise") {
  auto red = reduce_global_to_local({p, q}, 2);
  REQUIRE(red.size() == 6);
  CHECK(equal(red[0], p));
  CHECK(equal(red[1], box(p)));
  CHECK(equal(red[2], box(box(p))));
  CHECK(equal(red[3], q));
  CHECK(equal(red[4], box(q)));
  CHECK(equal(red[5], box(box(q))));
  CHECK(reduce_global_to_local({}, 3).empty());
}

TEST_CASE("global consequence reduces to local consequence with boxed premises") {
  // Over every model with at most 2 worlds: {p} globally forces box p, and
  // the local form needs one level of boxing.
  EnumLimits lim{2, 2, {"p"}};
  bool global_ok = true, local0_ok = true, local1_ok = true;
  for_each_model(lim, [&](const SphereModel& m) {
    WorldSet vp = eval(m, p);
    WorldSet vb = eval(m, box(p));
    if (vp == m.all_worlds() && vb != m.all_worlds()) global_ok = false;
    if ((vp & ~vb) != 0) local0_ok = false;
    if ((vp & eval(m, box(p)) & ~vb) != 0) local1_ok = false;
    return true;
  });
  CHECK(global_ok);
  CHECK_FALSE(local0_ok);  // the two-world fixture is a counterexample
  CHECK(local1_ok);
}

TEST_CASE("extension letters select model classes") {
  SphereModel m = two_world();
  CHECK(satisfies_extensions(m, {}));
  CHECK(satisfies_extensions(m, {'S'}));
  CHECK_FALSE(satisfies_extensions(m, {'C'}));
  CHECK_FALSE(satisfies_extensions(m, {'W'}));
  CHECK_FALSE(satisfies_extensions(m, {'T'}));
  CHECK_FALSE(satisfies_extensions(m, {'U'}));
  CHECK_FALSE(satisfies_extensions(m, {'A'}));
  CHECK_FALSE(satisfies_extensions(m, {'S', 'C'}));
  CHECK(extension_classes().size() == 7);
}

TEST_CASE("random models satisfy their requested classes") {
  std::mt19937_64 rng(4242);
  const std::vector<std::set<char>> exts = {
      {}, {'W'}, {'C'}, {'N'}, {'T'}, {'S'}, {'U'}, {'A'}, {'C', 'S'}};
  for (int i = 0; i < 200; ++i) {
    const auto& e = exts[i % exts.size()];
    SphereModel m = random_model(rng, e, 4, 3, {"p", "q"});
    CAPTURE(i);
    REQUIRE(satisfies_extensions(m, e));
    SphereModel copy = m;
    REQUIRE(normalize_model(copy) == std::nullopt);
  }
}

TEST_CASE("countermodel search: LV refutes p / box p, centering blocks p |> q") {
  auto r = countermodel_search({p}, box(p), Strength::Local, {}, 2);
  REQUIRE(r.found);
  CHECK(r.exhaustive);
  WorldSet vp = eval(r.model, p);
  WorldSet vb = eval(r.model, box(p));
  CHECK(((vp >> r.world) & 1) == 1);
  CHECK(((vb >> r.world) & 1) == 0);

  // Globally, p does force box p: exhaustive search up to 3 worlds agrees.
  auto g = countermodel_search({p}, box(p), Strength::Global, {}, 3);
  CHECK_FALSE(g.found);
  CHECK(g.exhaustive);

  // {p |> q} |- p -> q fails in LV but holds under centering.
  auto weak = countermodel_search({cf(p, q)}, imp(p, q), Strength::Local, {}, 3);
  REQUIRE(weak.found);
  auto cent = countermodel_search({cf(p, q)}, imp(p, q), Strength::Local,
                                  {'C'}, 3);
  CHECK_FALSE(cent.found);
  CHECK(cent.exhaustive);
}

TEST_CASE("countermodel search returns the least model in enumeration order") {
  // In (worlds, family, valuation) order the two empty-family one-world
  // models satisfy box p vacuously, so the least countermodel to |- box p
  // is the one-world model with S(w1) = {{w1}} and v(p) = {}.
  auto r = countermodel_search({}, box(p), Strength::Local, {}, 3);
  REQUIRE(r.found);
  CHECK(r.model.world_count() == 1);
  REQUIRE(r.model.spheres[0].size() == 1);
  CHECK(r.model.spheres[0][0] == 0b1);
  CHECK(eval(r.model, p) == 0);
  CHECK(r.world == 0);
}
