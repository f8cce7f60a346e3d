#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lewiskit/algebra.hpp"
#include "lewiskit/sphere.hpp"

namespace lewiskit {

using PointSet = std::uint32_t;

// A finite selection-function model: f assigns to each subset A of points
// and each point x the set of A-worlds "closest to x". Required axioms:
//   a1  f(A,x) ⊆ A
//   a2  f(A,x) ⊆ B and f(B,x) ⊆ A imply f(A,x) = f(B,x)
//   a3  f(A∪B,x) ⊆ A, or f(A∪B,x) ⊆ B, or f(A∪B,x) = f(A,x) ∪ f(B,x)
// (Two further axioms about limits are vacuous on finite carriers.)
struct AlphaModel {
  std::vector<std::string> points;
  std::vector<std::vector<PointSet>> f;  // f[subset mask][point index]

  int n() const { return static_cast<int>(points.size()); }
  int subsets() const { return 1 << n(); }
};

// A sphere structure is a sphere model without a valuation.
struct SphereStructure {
  std::vector<std::string> points;
  std::vector<std::vector<PointSet>> spheres;  // ascending chains

  int n() const { return static_cast<int>(points.size()); }
  PointSet sphere_union(int x) const;
};

SphereStructure structure_of_model(const SphereModel& m);
SphereModel model_of_structure(const SphereStructure& s,
                               const std::map<std::string, PointSet>& valuation);

// Duality with finite V-algebras. Points of the dual are the atoms;
// f(stone(a), x) is the set of atoms below the meet of {c : x <= a|>c}.
AlphaModel alpha_from_algebra(const VAlgebra& a);

// Complex algebra of a selection model: elements are the subsets of points,
// A|>B = {x : f(A,x) ⊆ B}. Satisfies the V-algebra axioms whenever s does
// the alpha axioms.
VAlgebra algebra_from_alpha(const AlphaModel& s);

struct AlphaAxiomReport {
  bool ok = true;
  std::string axiom;  // "a1".."a3"
  PointSet a = 0, b = 0;
  int x = -1;
};
AlphaAxiomReport check_alpha_axioms(const AlphaModel& s);

struct SphereAxiomReport {
  bool ok = true;
  std::string detail;
};
// Nestedness plus existence of a least A-meeting sphere whenever some
// sphere meets A (the latter is automatic on finite nested families and is
// checked directly).
SphereAxiomReport check_sphere_axioms(const SphereStructure& s);

// The comparative-possibility preorder at x: A <= B iff f(B,x) = ∅, or
// f(A,x) ≠ ∅ and f(A,x) ⊆ f(A∪B,x). Total and transitive on valid models.
struct PointPreorder {
  int x;
  std::vector<std::vector<bool>> le;  // le[A][B]
  bool total = true;
  bool transitive = true;
};
PointPreorder preorder(const AlphaModel& s, int x);

// σ_f(x) = { ⋃_{A <= B} f(A,x) : B ⊆ points }, empty member dropped.
SphereStructure sphere_from_alpha(const AlphaModel& s);

// f_σ(A,x) = A ∩ least A-meeting sphere of σ(x); ∅ if no sphere meets A.
AlphaModel alpha_from_sphere(const SphereStructure& s);

// stone(a) = set of atoms below a is an isomorphism onto the complex
// algebra of the dual selection model, including |>.
bool stone_roundtrip_check(const VAlgebra& a);

// map sends point i of s to point map[i] of t.
// Conditions: images of selections stay selections (forward), and
// selections in the target lift along the map (backward).
bool is_alpha_morphism(const AlphaModel& s, const AlphaModel& t,
                       const std::vector<int>& map);
bool is_sphere_morphism(const SphereStructure& s, const SphereStructure& t,
                        const std::vector<int>& map);

// Dual of an algebra homomorphism h : a -> b, as a map from the dual points
// of b to the dual points of a (preimages of principal ultrafilters).
std::vector<int> dual_of_homomorphism(const VAlgebra& a, const VAlgebra& b,
                                      const std::vector<Elem>& h);

// f(A,x) = {x} whenever x ∈ A (alpha-1 models, dual to LC), and
// additionally |f(A,x)| <= 1 everywhere (alpha-2 models, dual to CA).
bool check_alpha1(const AlphaModel& s);
bool check_alpha2(const AlphaModel& s);

}  // namespace lewiskit
