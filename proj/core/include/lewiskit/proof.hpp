#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lewiskit/sphere.hpp"

namespace lewiskit {

// Hilbert calculi for the conditional logics. Names follow the usual
// scheme: GV / LV plus extension letters, e.g. "GVW", "LVCS". The Global
// calculi admit the rules (C) and (DWC_n) on arbitrary lines; the Local
// ("weak") calculi restrict both rules to premise-free lines.
struct Calculus {
  Strength strength = Strength::Global;
  std::set<char> extensions;  // subset of {W,C,N,T,S,U,A}
  UniformityReading uniformity = UniformityReading::Implication;

  static std::optional<Calculus> parse(const std::string& name);  // "GV...", "LV..."
  std::string name() const;
  bool axiom_available(const std::string& id) const;
};

struct Justification {
  enum class Kind { Premise, Axiom, MP, RuleC, Dwc };
  Kind kind = Kind::Premise;
  std::string axiom_id;            // Axiom
  std::optional<Substitution> sub; // Axiom; inferred when absent
  int i = -1;  // MP: implication line. RuleC/Dwc: the cited line.
  int j = -1;  // MP: antecedent line.
  int n = 0;   // Dwc: number of conjuncts peeled from the cited premise.
};

struct ProofLine {
  Formula f;
  Justification by;
};

struct Proof {
  std::vector<Formula> premises;
  std::vector<ProofLine> lines;
};

struct CheckResult {
  bool accepted = true;
  int line = -1;  // 1-based index of the offending line
  std::string reason;
};

// Verifies every line: premises must be listed, axiom instances must match
// their schema (with the provided substitution when one is given), MP must
// cite an implication and its antecedent, (C) turns a derived f -> g into
// (c |> f) -> (c |> g), and (DWC_n) turns (f1 & ... & fn) -> g into
// ((c|>f1) & ... & (c|>fn)) -> (c|>g), with DWC_0 turning g into c |> g.
// In Local calculi (C) and (DWC_n) may only cite premise-free lines.
CheckResult check_proof(const Calculus& c, const Proof& p);

// Premise-dependence of each line (used by the deduction transformation).
std::vector<bool> premise_dependent(const Proof& p);

}  // namespace lewiskit
