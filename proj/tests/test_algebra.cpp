// Finite V-algebras: axioms, varieties, filters, congruences, quotients,
// consequence relations and exhaustive enumeration.

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "doctest.h"
#include "lewiskit/algebra.hpp"
#include "lewiskit/io.hpp"

using namespace lewiskit;

namespace {

std::string fx(const std::string& rel) {
  return std::string(LEWISKIT_FIXTURES) + "/" + rel;
}

VAlgebra fixture(const std::string& name) {
  return load_algebra(fx("algebras/" + name + ".json"));
}

const std::vector<std::vector<Elem>> table_a = {
    {3, 3, 3, 3}, {0, 3, 0, 3}, {0, 0, 3, 3}, {0, 1, 2, 3}};
const std::vector<std::vector<Elem>> table_b = {
    {3, 3, 3, 3}, {0, 3, 0, 3}, {0, 0, 3, 3}, {0, 0, 0, 3}};
const std::vector<std::vector<Elem>> table_c = {
    {3, 3, 3, 3}, {0, 3, 0, 3}, {0, 0, 3, 3}, {0, 3, 0, 3}};

bool in_variety(const VAlgebra& a, const std::string& name) {
  auto v = Variety::parse(name);
  REQUIRE(v.has_value());
  return check_variety(a, *v).ok;
}

// Partition-based congruence oracle: every equivalence relation compatible
// with meet, join, complement and |>. Independent of the filter-based
// implementation in the library.
int count_congruences_by_partitions(const VAlgebra& a) {
  const int n = a.size();
  std::vector<int> block(n, -1);
  int found = 0;
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      auto same = [&](Elem x, Elem y) { return block[x] == block[y]; };
      for (Elem x = 0; x < static_cast<Elem>(n); ++x)
        for (Elem y = 0; y < static_cast<Elem>(n); ++y) {
          if (!same(x, y)) continue;
          if (!same(a.complement(x), a.complement(y))) return;
          for (Elem z = 0; z < static_cast<Elem>(n); ++z) {
            if (!same(a.meet(x, z), a.meet(y, z))) return;
            if (!same(a.join(x, z), a.join(y, z))) return;
            if (!same(a.cf[x][z], a.cf[y][z])) return;
            if (!same(a.cf[z][x], a.cf[z][y])) return;
          }
        }
      ++found;
      return;
    }
    for (int b = 0; b <= used; ++b) {
      block[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
    block[i] = -1;
  };
  rec(0, 0);
  return found;
}

}  // namespace

TEST_CASE("the classical two-element algebra") {
  VAlgebra two = classical_two();
  CHECK(two.atoms == 1);
  CHECK(two.size() == 2);
  CHECK(two.top() == 1);
  CHECK(two.cf == std::vector<std::vector<Elem>>{{1, 1}, {0, 1}});
  CHECK(check_axioms(two).ok);
  CHECK(in_variety(two, "CA"));
  CHECK(two.box(0) == 0);
  CHECK(two.box(1) == 1);
  CHECK(two.implies(1, 0) == 0);
  CHECK(two.equiv(0, 0) == 1);
}

TEST_CASE("boolean reducts behave as subset algebras") {
  VAlgebra a = fixture("a");
  CHECK(a.size() == 4);
  CHECK(a.top() == 3);
  CHECK(a.meet(1, 3) == 1);
  CHECK(a.join(1, 2) == 3);
  CHECK(a.complement(1) == 2);
  CHECK(a.implies(3, 1) == 1);
  CHECK(a.equiv(1, 2) == 0);
  CHECK(a.leq(1, 3));
  CHECK_FALSE(a.leq(3, 1));
}

TEST_CASE("fixture algebras match their published tables and pass the axioms") {
  VAlgebra a = fixture("a"), b = fixture("b"), c = fixture("c");
  CHECK(a.atoms == 2);
  CHECK(a.cf == table_a);
  CHECK(b.cf == table_b);
  CHECK(c.cf == table_c);
  CHECK(check_axioms(a).ok);
  CHECK(check_axioms(b).ok);
  CHECK(check_axioms(c).ok);
}

TEST_CASE("fixture algebras separate the main varieties") {
  VAlgebra a = fixture("a"), b = fixture("b"), c = fixture("c");
  CHECK(in_variety(a, "LC"));
  CHECK(in_variety(a, "CA"));
  CHECK(in_variety(a, "VCSU"));
  CHECK(in_variety(b, "VWA"));
  CHECK_FALSE(in_variety(b, "LC"));
  CHECK_FALSE(in_variety(b, "CA"));
  CHECK(in_variety(c, "VTSA"));
  CHECK_FALSE(in_variety(c, "LC"));
  // The failing check reports which identity broke.
  auto ca = Variety::parse("CA");
  REQUIRE(ca.has_value());
  auto rep = check_variety(b, *ca);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.detail.empty());
}

TEST_CASE("single-cell mutations of the first fixture break some check") {
  VAlgebra a = fixture("a");
  for (Elem x = 0; x < 4; ++x)
    for (Elem y = 0; y < 4; ++y)
      for (Elem v = 0; v < 4; ++v) {
        if (v == a.cf[x][y]) continue;
        VAlgebra m = a;
        m.cf[x][y] = v;
        CAPTURE(x);
        CAPTURE(y);
        CAPTURE(v);
        bool ok = check_axioms(m).ok && in_variety(m, "CA") &&
                  in_variety(m, "VCSU");
        REQUIRE_FALSE(ok);
      }
}

TEST_CASE("axiom failures carry a witness") {
  VAlgebra a = fixture("a");
  a.cf[1][1] = 0;  // break C1 at x = 1
  auto rep = check_axioms(a);
  REQUIRE_FALSE(rep.ok);
  bool saw_c1 = false;
  for (const auto& w : rep.failures)
    if (w.axiom == "C1" && w.at[0] == 1) saw_c1 = true;
  CHECK(saw_c1);
}

TEST_CASE("variety names parse and print") {
  auto v = Variety::parse("VWA");
  REQUIRE(v.has_value());
  CHECK(v->ext == std::set<char>{'W', 'A'});
  CHECK_FALSE(v->lc);
  CHECK(v->name() == "VWA");
  CHECK(Variety::parse("LC").has_value());
  CHECK(Variety::parse("CA").has_value());
  CHECK(Variety::parse("V").has_value());
  CHECK(Variety::parse("VTSA")->ext == std::set<char>{'T', 'S', 'A'});
  CHECK_FALSE(Variety::parse("XY").has_value());
  CHECK_FALSE(Variety::parse("VB").has_value());
  CHECK_FALSE(Variety::parse("").has_value());
}

TEST_CASE("lattice filters of the four-element fixture") {
  VAlgebra a = fixture("a");
  auto fs = lattice_filters(a);
  REQUIRE(fs.size() == 4);  // the principal filters of the 4-element algebra
  CHECK(fs[0] == std::vector<Elem>{3});
  CHECK(fs[1] == std::vector<Elem>{1, 3});
  CHECK(fs[2] == std::vector<Elem>{2, 3});
  CHECK(fs[3] == std::vector<Elem>{0, 1, 2, 3});
}

TEST_CASE("open filters are the box-closed filters") {
  VAlgebra a = fixture("a");
  // box collapses everything except the unit.
  CHECK(a.box(3) == 3);
  CHECK(a.box(1) == 0);
  CHECK(a.box(2) == 0);
  CHECK(a.box(0) == 0);
  auto open = open_filters(a);
  REQUIRE(open.size() == 2);
  CHECK(open[0] == std::vector<Elem>{3});
  CHECK(open[1] == std::vector<Elem>{0, 1, 2, 3});
}

TEST_CASE("congruences correspond to open filters") {
  for (const std::string& name : {"a", "b", "c"}) {
    VAlgebra alg = fixture(name);
    auto cong = congruences(alg);
    auto open = open_filters(alg);
    CAPTURE(name);
    CHECK(cong.size() == open.size());
    CHECK(cong.size() == 2);
    CHECK(count_congruences_by_partitions(alg) == 2);
    for (const auto& f : open) {
      Congruence th = congruence_of_filter(alg, f);
      CHECK(filter_of_congruence(alg, th) == f);
    }
  }
  // On the classical two-element algebra box is the identity, so both
  // lattice filters are open and the oracle agrees.
  VAlgebra two = classical_two();
  CHECK(open_filters(two).size() == 2);
  CHECK(count_congruences_by_partitions(two) == 2);
}

TEST_CASE("quotients by open-filter congruences") {
  VAlgebra a = fixture("a");
  auto cong = congruences(a);
  REQUIRE(cong.size() == 2);
  // The congruence of the unit filter is the identity relation.
  std::vector<Elem> proj;
  VAlgebra qa = quotient(a, cong.front(), &proj);
  CHECK(qa.size() == 4);
  CHECK(check_axioms(qa).ok);
  CHECK(check_homomorphism(a, qa, proj));
  // The congruence of the full filter collapses to the degenerate algebra.
  std::vector<Elem> proj2;
  VAlgebra q1 = quotient(a, cong.back(), &proj2);
  CHECK(q1.size() == 1);
  CHECK(check_axioms(q1).ok);
  CHECK(check_homomorphism(a, q1, proj2));
}

TEST_CASE("formula evaluation in an algebra") {
  VAlgebra a = fixture("a");
  Formula p = var("p"), q = var("q");
  Assignment h{{"p", 1}, {"q", 2}};
  CHECK(eval_formula(a, p, h) == 1);
  CHECK(eval_formula(a, conj(p, q), h) == 0);
  CHECK(eval_formula(a, disj(p, q), h) == 3);
  CHECK(eval_formula(a, neg(p), h) == 2);
  CHECK(eval_formula(a, imp(p, q), h) == 2);
  CHECK(eval_formula(a, cf(p, q), h) == a.cf[1][2]);
  CHECK(eval_formula(a, box(p), h) == 0);
  CHECK(eval_formula(a, cf(p, p), h) == 3);
  CHECK(eval_formula(a, verum(), {}) == 3);
  CHECK(eval_formula(a, falsum(), {}) == 0);
}

TEST_CASE("degree consequence returns the least failing assignment") {
  VAlgebra a = fixture("a");
  std::vector<VAlgebra> as = {a};
  Formula p = var("p");
  auto w = degree_consequence(as, {p}, box(p));
  REQUIRE(w.has_value());
  CHECK(w->algebra == 0);
  CHECK(w->h.at("p") == 1);
  CHECK(w->bound == 1);
  CHECK_FALSE(degree_consequence(as, {p}, p).has_value());
  CHECK_FALSE(degree_consequence(as, {p, var("q")}, conj(p, var("q")))
                  .has_value());
  CHECK_FALSE(degree_consequence(as, {}, cf(p, p)).has_value());
}

TEST_CASE("equational consequence differs from degree consequence") {
  VAlgebra a = fixture("a");
  std::vector<VAlgebra> as = {a};
  Formula p = var("p"), q = var("q");
  // tau(p) forces h(p) = 1, and box 1 = 1, so the equational form holds...
  CHECK_FALSE(equational_consequence(as, {tau(p)}, tau(box(p))).has_value());
  // ...even though the degree form fails (witness above).
  CHECK(degree_consequence(as, {p}, box(p)).has_value());
  // tau(p) does not force tau(p & q): the least witness sends p to the
  // unit and q to zero.
  auto w = equational_consequence(as, {tau(p)}, tau(conj(p, q)));
  REQUIRE(w.has_value());
  CHECK(w->algebra == 0);
  CHECK(w->h.at("p") == 3);
  CHECK(w->h.at("q") == 0);
}

TEST_CASE("homomorphism checking") {
  VAlgebra a = fixture("a");
  std::vector<Elem> ident = {0, 1, 2, 3};
  CHECK(check_homomorphism(a, a, ident));
  std::vector<Elem> swap = {0, 2, 1, 3};
  // Swapping the atoms is a Boolean automorphism, but |> is symmetric in
  // them here as well, so it is a V-algebra automorphism too.
  CHECK(check_homomorphism(a, a, swap));
  std::vector<Elem> bad = {0, 1, 2, 2};
  CHECK_FALSE(check_homomorphism(a, a, bad));
  std::vector<Elem> collapse(4, 0);
  CHECK_FALSE(check_homomorphism(a, a, collapse));  // 1 must map to 1
}

TEST_CASE("exhaustive enumeration of small V-algebras") {
  auto k0 = enumerate_v_algebras(0);
  auto k1 = enumerate_v_algebras(1);
  auto k2 = enumerate_v_algebras(2);
  CHECK(k0.size() == 1);
  CHECK(k1.size() == 2);
  CHECK(k2.size() == 36);

  for (const auto& a : k2) REQUIRE(check_axioms(a).ok);

  // The fixtures all appear in the enumeration.
  auto contains = [&](const std::vector<std::vector<Elem>>& t) {
    return std::any_of(k2.begin(), k2.end(),
                       [&](const VAlgebra& a) { return a.cf == t; });
  };
  CHECK(contains(table_a));
  CHECK(contains(table_b));
  CHECK(contains(table_c));

  // No duplicates.
  for (std::size_t i = 0; i < k2.size(); ++i)
    for (std::size_t j = i + 1; j < k2.size(); ++j)
      REQUIRE(k2[i].cf != k2[j].cf);

  // Exactly 4 of the 36 satisfy the centering-with-choice identities.
  int ca_count = 0;
  for (const auto& a : k2)
    if (in_variety(a, "CA")) ++ca_count;
  CHECK(ca_count == 4);

  // The classical algebra is one of the two on a single atom.
  CHECK((k1[0].cf == classical_two().cf || k1[1].cf == classical_two().cf));
}

TEST_CASE("rows of enumerated algebras preserve meets") {
  // C4 in row form: each antecedent row is a meet-homomorphism; on four
  // elements there are exactly 25 such maps.
  int meet_preserving = 0;
  for (int code = 0; code < 256; ++code) {
    Elem row[4] = {static_cast<Elem>(code & 3),
                   static_cast<Elem>((code >> 2) & 3),
                   static_cast<Elem>((code >> 4) & 3),
                   static_cast<Elem>((code >> 6) & 3)};
    bool ok = true;
    for (int y = 0; y < 4 && ok; ++y)
      for (int z = 0; z < 4 && ok; ++z)
        if (row[y & z] != (row[y] & row[z])) ok = false;
    if (ok) ++meet_preserving;
  }
  CHECK(meet_preserving == 25);

  for (const auto& a : enumerate_v_algebras(2))
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y)
        for (int z = 0; z < 4; ++z)
          REQUIRE(a.cf[x][y & z] == (a.cf[x][y] & a.cf[x][z]));
}
