#pragma once

#include "lewiskit/proof.hpp"

namespace lewiskit {

// Incrementally builds a Proof, deduplicating lines that derive the same
// formula with the same premise-dependence.
class ProofBuilder {
 public:
  explicit ProofBuilder(std::vector<Formula> premises = {},
                        UniformityReading u = UniformityReading::Implication);

  int premise(const Formula& f);
  int axiom(const std::string& id, const Substitution& sub);
  int mp(int major, int minor);
  // (C): from line f -> g derive (gamma |> f) -> (gamma |> g).
  int rule_c(int line, const Formula& gamma);
  // (DWC_n): see check_proof. n == 0 turns g into gamma |> g.
  int dwc(int n, int line, const Formula& gamma);
  // Appends a verbatim duplicate of an existing line (no deduplication).
  int repeat(int line);

  Formula at(int line) const { return p_.lines[line].f; }
  bool premise_free(int line) const { return !dep_[line]; }
  const Proof& proof() const { return p_; }

 private:
  int add(Formula f, Justification by, bool dep);

  Proof p_;
  UniformityReading u_;
  std::vector<bool> dep_;
  std::map<std::string, int> memo_;
};

// Generators for the bundled derivations. All classical glue is emitted
// from the L0 base via the standard deduction-theorem transformation, so
// the resulting scripts use only the primitive justifications.

// ⊢ phi |> phi, as a single axiom line.
Proof prove_l1_instance(const Formula& phi);

// ⊢ (phi |> psi) -> (phi |> (psi | gamma)), via (C) and (L4).
Proof prove_monotonicity(const Formula& phi, const Formula& psi,
                         const Formula& gamma);

// ⊢ gamma |> 1, via (L4) and (L1). Accepted by GV and LV alike.
Proof derive_dwc0(const Formula& gamma);

// (DWC_n) derived from (C) + (L4): for n >= 1, from the premise
// (phi_1 & ... & phi_n) -> psi derives ((g|>phi_1) & ... ) -> (g|>psi);
// for n == 0, from the premise psi derives g |> psi. Global calculi only
// (rule (C) is applied to a premise-dependent line).
Proof prove_dwc_n(int n, const std::vector<Formula>& phis, const Formula& psi,
                  const Formula& gamma);

// (C) derived from (DWC_2): from the premise phi -> psi derives
// (gamma |> phi) -> (gamma |> psi).
Proof prove_c_from_dwc2(const Formula& phi, const Formula& psi,
                        const Formula& gamma);

// (L4) derived from (DWC_1)/(DWC_2) without citing the L4 axiom;
// premise-free, hence accepted by GV and LV alike.
Proof prove_l4_from_dwc2(const Formula& phi, const Formula& psi,
                         const Formula& gamma);

// (DWC_2) derived from (C) + (L4): from the premise (phi1 & phi2) -> psi.
Proof prove_dwc2_from_c_l4(const Formula& phi1, const Formula& phi2,
                           const Formula& psi, const Formula& gamma);

// Candidate local forms of the global consequence psi ⊨ phi:
// (box^0 psi & ... & box^n psi) -> phi for n <= n_max.
std::vector<Formula> global_deduction_candidates(const Formula& psi,
                                                 const Formula& phi, int n_max);

// Deduction transformation for Local calculi: from a proof of
// Gamma, psi ⊢ phi produces a proof of Gamma ⊢ psi -> phi under the same
// calculus. Throws std::invalid_argument if c is not Local, psi is not a
// premise, or p does not check.
Proof local_deduction(const Calculus& c, const Proof& p, const Formula& psi);

}  // namespace lewiskit
