#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "lewiskit/formula.hpp"

namespace lewiskit {

// A finite V-algebra: the Boolean algebra of subsets of `atoms` atoms
// (elements are bitmasks over atom indices) equipped with a binary
// operation |> ("cf") satisfying
//   C1  x |> x = 1
//   C2  (x|>y) & (y|>x)  <=  (x|>z) <-> (y|>z)
//   C3  ((x|y)|>x) | ((x|y)|>y) | (((x|y)|>z) <-> ((x|>z)&(y|>z))) = 1
//   C4  x |> (y&z) = (x|>y) & (x|>z)
// The degenerate algebra (atoms == 0, single element) is admitted.
using Elem = std::uint32_t;

struct VAlgebra {
  int atoms = 0;
  std::vector<std::vector<Elem>> cf;  // cf[antecedent][consequent]

  int size() const { return 1 << atoms; }
  Elem top() const { return static_cast<Elem>(size() - 1); }
  Elem meet(Elem a, Elem b) const { return a & b; }
  Elem join(Elem a, Elem b) const { return a | b; }
  Elem complement(Elem a) const { return ~a & top(); }
  Elem implies(Elem a, Elem b) const { return (~a | b) & top(); }
  Elem equiv(Elem a, Elem b) const { return ~(a ^ b) & top(); }
  bool leq(Elem a, Elem b) const { return (a & ~b) == 0; }
  Elem box(Elem a) const { return cf[complement(a)][a]; }  // box x == ~x |> x
  Elem dia(Elem a) const { return complement(box(complement(a))); }
};

// Identity of |> on the two-element Boolean algebra gives the classical
// (material) conditional; used in tests and as the quotient target.
VAlgebra classical_two();

struct AxiomWitness {
  std::string axiom;          // "C1".."C4"
  std::array<Elem, 3> at;     // x, y, z (unused slots zero)
};
struct AxiomReport {
  bool ok = true;
  std::vector<AxiomWitness> failures;  // first witness per failed axiom
};
AxiomReport check_axioms(const VAlgebra& a);

// Variety spec: "V" plus extension letters from {W,C,N,T,S,U,A}
// (e.g. "VCSU", "VWA"), or the named combinations "LC"
// (x&y <= x|>y <= x->y) and "CA" (LC plus (x|>y)|(x|>~y) = 1).
struct Variety {
  bool lc = false;
  bool ca = false;
  std::set<char> ext;

  static std::optional<Variety> parse(const std::string& name);
  std::string name() const;
};

struct VarietyReport {
  bool ok = true;
  std::string detail;  // failing identity and assignment
};
VarietyReport check_variety(const VAlgebra& a, const Variety& v,
                            UniformityReading u = UniformityReading::Implication);

// All lattice filters (upward-closed, meet-closed, nonempty), each as a
// sorted element list, ordered by size then generator. In a finite Boolean
// algebra these are exactly the principal filters.
std::vector<std::vector<Elem>> lattice_filters(const VAlgebra& a);

// Open filters: lattice filters additionally closed under box.
std::vector<std::vector<Elem>> open_filters(const VAlgebra& a);

// Congruences, in bijection with open filters: theta_F identifies x,y iff
// x<->y lies in F. Blocks are sorted; block lists sorted by least element.
struct Congruence {
  std::vector<std::vector<Elem>> blocks;
};
Congruence congruence_of_filter(const VAlgebra& a, const std::vector<Elem>& f);
std::vector<Elem> filter_of_congruence(const VAlgebra& a, const Congruence& th);
std::vector<Congruence> congruences(const VAlgebra& a);

// Quotient by a congruence arising from an open filter; the projection map
// is returned through *projection if requested (element -> quotient element).
VAlgebra quotient(const VAlgebra& a, const Congruence& th,
                  std::vector<Elem>* projection = nullptr);

using Assignment = std::map<std::string, Elem>;
Elem eval_formula(const VAlgebra& a, const Formula& f, const Assignment& h);

// Degree-preserving consequence over a list of algebras: for every algebra
// and assignment, meet of h(gamma) <= h(phi). Returns the least failing
// witness (algebra index, assignment in lexicographic order, the meet).
struct DegreeWitness {
  int algebra;
  Assignment h;
  Elem bound;  // meet of the premises under h
};
std::optional<DegreeWitness> degree_consequence(std::span<const VAlgebra> as,
                                                const std::vector<Formula>& gamma,
                                                const Formula& phi);

// Equational consequence: assignments satisfying all premise equations
// satisfy the conclusion equation.
struct EquationalWitness {
  int algebra;
  Assignment h;
};
std::optional<EquationalWitness> equational_consequence(
    std::span<const VAlgebra> as, const std::vector<Equation>& premises,
    const Equation& conclusion);

// h maps elements of a to elements of b, indexed by element of a; checks
// preservation of 0, 1, meet, join, complement, -> and |>.
bool check_homomorphism(const VAlgebra& a, const VAlgebra& b,
                        const std::vector<Elem>& h);

// All V-algebras on at most 2 atoms (exhaustive, deduplicated, in a fixed
// order). By C4 each row y -> x|>y preserves meets, hence is determined by
// its values on coatoms; candidates are filtered through check_axioms.
std::vector<VAlgebra> enumerate_v_algebras(int atoms);

}  // namespace lewiskit
