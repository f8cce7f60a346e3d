#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lewiskit {

// Propositional language of the variably strict conditional logics:
// primitive connectives 0, 1, &, |, ->, |> over named variables.
// ~x, x<->y, x m|> y, box x, dia x and the comparative operators are
// abbreviations expanded eagerly at construction time (~x == x->0, etc.),
// so every Formula is a DAG over the seven primitive node kinds.
enum class Kind : std::uint8_t { Var, Const0, Const1, And, Or, Imp, Cf };

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  std::string name;  // Kind::Var only
  Formula lhs, rhs;  // binary kinds only
};

// Primitive constructors. Constants and variables are interned, and the
// derived constructors share subterms, so formulas behave as DAGs: the
// n-fold box of p has node count linear in n.
Formula var(const std::string& name);
Formula falsum();
Formula verum();
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula imp(Formula a, Formula b);
Formula cf(Formula a, Formula b);  // a |> b  (would-counterfactual)

// Derived connectives (eagerly expanded).
Formula neg(Formula a);                    // ~a        == a -> 0
Formula iff(Formula a, Formula b);         // a <-> b   == (a->b) & (b->a)
Formula might_cf(Formula a, Formula b);    // a m|> b   == ~(a |> ~b)
Formula box(Formula a);                    // box a     == ~a |> a
Formula dia(Formula a);                    // dia a     == ~ box ~a
Formula prec_eq(Formula a, Formula b);     // a "at least as possible as" b
Formula prec(Formula a, Formula b);        // strictly more possible
Formula sim_eq(Formula a, Formula b);      // equally possible

bool equal(const Formula& a, const Formula& b);  // structural equality
std::size_t dag_size(const Formula& f);          // number of distinct nodes
std::vector<std::string> variables(const Formula& f);  // sorted, deduplicated

using Substitution = std::map<std::string, Formula>;
Formula substitute(const Formula& f, const Substitution& sigma);  // simultaneous

// box_iterate(f, n) == box box ... box f (n boxes), n >= 0.
Formula box_iterate(Formula f, int n);

struct Equation {
  Formula lhs, rhs;
};

Equation tau(const Formula& f);      // f  ~~>  f ≈ 1
Formula delta(const Equation& e);    // l ≈ r  ~~>  l <-> r

struct ParseError : std::runtime_error {
  std::size_t position;  // 0-based offset into the input
  ParseError(std::size_t pos, const std::string& what);
};

// Grammar (all binary operators right-associative; ~/box/dia bind tightest,
// then &, |, the conditionals |> and m|>, ->, and loosest <->):
//   formula := iff ;  iff := imp ("<->" imp)* ;  imp := cf ("->" cf)* ;
//   cf := or (("|>" | "m|>") or)* ;  or := and ("|" and)* ;
//   and := unary ("&" unary)* ;
//   unary := "~" unary | "box" unary | "dia" unary | atom ;
//   atom := ident | "0" | "1" | "(" formula ")" .
Formula parse(std::string_view text);  // throws ParseError

// Canonical printing; re-sugars box and ~ so that parse(print(f)) == f.
std::string print(const Formula& f);

// ---------------------------------------------------------------------------
// Axiom schemas. Patterns are formulas over the metavariables p, q, r;
// instances arise by substitution.
//
// Conditional axioms: L1..L4 (the base system), and the extensions
// W (weak centering), C (centering), N (normality), T (total reflexivity),
// S (Stalnaker's axiom), U (uniformity), A (absoluteness).
//
// Classical base (L0): A1 p->(q->p); A2 (p->(q->r))->((p->q)->(p->r));
// A3 (~q->~p)->(p->q); directional defining schemas AndDef1/2, OrDef1/2,
// ZeroDef1/2, OneDef1/2; and Truth (⊢ 1).
// ---------------------------------------------------------------------------

// The printed form of axiom U is ambiguous in the source material; both
// readings of its first conjunct are supported and both are sound on
// uniform structures.
enum class UniformityReading { Implication, Counterfactual };

// Schema ids: "A1","A2","A3","AndDef1","AndDef2","OrDef1","OrDef2",
// "ZeroDef1","ZeroDef2","OneDef1","OneDef2","Truth",
// "L1","L2","L3","L4","W","C","N","T","S","U","A".
const std::vector<std::string>& schema_ids();
bool is_schema_id(const std::string& id);
Formula schema(const std::string& id,
               UniformityReading u = UniformityReading::Implication);

// Pattern matching of a schema against a candidate instance; returns the
// unique witnessing substitution on the pattern's variables, if any.
bool match_schema(const Formula& pattern, const Formula& instance,
                  Substitution& out);

}  // namespace lewiskit
