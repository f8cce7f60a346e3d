#include "lewiskit/proof.hpp"

#include <algorithm>

namespace lewiskit {

std::optional<Calculus> Calculus::parse(const std::string& name) {
  Calculus c;
  std::size_t i = 0;
  if (name.size() >= 2 && name[0] == 'G' && name[1] == 'V') {
    c.strength = Strength::Global;
    i = 2;
  } else if (name.size() >= 2 && name[0] == 'L' && name[1] == 'V') {
    c.strength = Strength::Local;
    i = 2;
  } else {
    return std::nullopt;
  }
  for (; i < name.size(); ++i) {
    if (std::string("WCNTSUA").find(name[i]) == std::string::npos)
      return std::nullopt;
    c.extensions.insert(name[i]);
  }
  return c;
}

std::string Calculus::name() const {
  std::string s = (strength == Strength::Global) ? "GV" : "LV";
  for (char c : std::string("WCNTSUA"))
    if (extensions.count(c)) s += c;
  return s;
}

bool Calculus::axiom_available(const std::string& id) const {
  if (!is_schema_id(id)) return false;
  if (id.size() == 1 && std::string("WCNTSUA").find(id[0]) != std::string::npos)
    return extensions.count(id[0]) != 0;
  return true;  // classical base and L1..L4
}

std::vector<bool> premise_dependent(const Proof& p) {
  std::vector<bool> dep(p.lines.size(), false);
  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    const Justification& by = p.lines[i].by;
    switch (by.kind) {
      case Justification::Kind::Premise: dep[i] = true; break;
      case Justification::Kind::Axiom: dep[i] = false; break;
      case Justification::Kind::MP:
        // Line references are 1-based; out-of-range cites are caught by
        // check_proof, treat them as premise-free here.
        dep[i] = (by.i >= 1 && by.i <= static_cast<int>(i) && dep[by.i - 1]) ||
                 (by.j >= 1 && by.j <= static_cast<int>(i) && dep[by.j - 1]);
        break;
      case Justification::Kind::RuleC:
      case Justification::Kind::Dwc:
        dep[i] = by.i >= 1 && by.i <= static_cast<int>(i) && dep[by.i - 1];
        break;
    }
  }
  return dep;
}

namespace {

// Splits a right-nested conjunction into exactly n conjuncts:
// f1 & (f2 & (... & fn)). Returns false if the shape does not allow it.
bool peel_conjuncts(const Formula& f, int n, std::vector<Formula>& out) {
  out.clear();
  Formula cur = f;
  for (int k = 0; k + 1 < n; ++k) {
    if (cur->kind != Kind::And) return false;
    out.push_back(cur->lhs);
    cur = cur->rhs;
  }
  out.push_back(cur);
  return true;
}

}  // namespace

CheckResult check_proof(const Calculus& c, const Proof& p) {
  const std::vector<bool> dep = premise_dependent(p);
  auto reject = [&](int i, const std::string& why) {
    return CheckResult{false, i + 1, why};
  };

  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    const ProofLine& ln = p.lines[i];
    const Justification& by = ln.by;
    // References are 1-based and must point at strictly earlier lines.
    auto cited = [&](int k) -> bool { return k >= 1 && k <= static_cast<int>(i); };

    switch (by.kind) {
      case Justification::Kind::Premise: {
        bool found = false;
        for (const Formula& pre : p.premises)
          if (equal(pre, ln.f)) {
            found = true;
            break;
          }
        if (!found) return reject(i, "formula is not among the premises");
        break;
      }
      case Justification::Kind::Axiom: {
        if (!c.axiom_available(by.axiom_id))
          return reject(i, "axiom " + by.axiom_id + " is not part of " + c.name());
        const Formula pat = schema(by.axiom_id, c.uniformity);
        if (by.sub) {
          if (!equal(substitute(pat, *by.sub), ln.f))
            return reject(i, "formula is not the stated instance of " + by.axiom_id);
        } else {
          Substitution s;
          if (!match_schema(pat, ln.f, s))
            return reject(i, "formula does not match schema " + by.axiom_id);
        }
        break;
      }
      case Justification::Kind::MP: {
        if (!cited(by.i) || !cited(by.j))
          return reject(i, "mp must cite two earlier lines");
        const Formula& maj = p.lines[by.i - 1].f;
        const Formula& min = p.lines[by.j - 1].f;
        if (maj->kind != Kind::Imp || !equal(maj->lhs, min) ||
            !equal(maj->rhs, ln.f))
          return reject(i, "mp: cited lines do not yield this formula");
        break;
      }
      case Justification::Kind::RuleC: {
        if (!cited(by.i)) return reject(i, "rule (C) must cite an earlier line");
        if (c.strength == Strength::Local && dep[by.i - 1])
          return reject(i, "rule (C) requires a premise-free line in " + c.name());
        const Formula& src = p.lines[by.i - 1].f;
        const Formula& dst = ln.f;
        if (src->kind != Kind::Imp || dst->kind != Kind::Imp ||
            dst->lhs->kind != Kind::Cf || dst->rhs->kind != Kind::Cf ||
            !equal(dst->lhs->lhs, dst->rhs->lhs) ||
            !equal(dst->lhs->rhs, src->lhs) || !equal(dst->rhs->rhs, src->rhs))
          return reject(i, "rule (C): conclusion shape does not match");
        break;
      }
      case Justification::Kind::Dwc: {
        if (!cited(by.i)) return reject(i, "rule (DWC) must cite an earlier line");
        if (by.n < 0) return reject(i, "rule (DWC): n must be nonnegative");
        if (c.strength == Strength::Local && dep[by.i - 1])
          return reject(i, "rule (DWC) requires a premise-free line in " + c.name());
        const Formula& src = p.lines[by.i - 1].f;
        const Formula& dst = ln.f;
        if (by.n == 0) {
          if (dst->kind != Kind::Cf || !equal(dst->rhs, src))
            return reject(i, "rule (DWC_0): conclusion must be c |> (cited line)");
          break;
        }
        if (src->kind != Kind::Imp || dst->kind != Kind::Imp ||
            dst->rhs->kind != Kind::Cf)
          return reject(i, "rule (DWC): line shapes do not match");
        const Formula gamma = dst->rhs->lhs;
        if (!equal(dst->rhs->rhs, src->rhs))
          return reject(i, "rule (DWC): consequents do not match");
        std::vector<Formula> phis;
        if (!peel_conjuncts(src->lhs, by.n, phis))
          return reject(i, "rule (DWC): cited antecedent is not an n-fold conjunction");
        Formula want = cf(gamma, phis[by.n - 1]);
        for (int k = by.n - 2; k >= 0; --k) want = conj(cf(gamma, phis[k]), want);
        if (!equal(dst->lhs, want))
          return reject(i, "rule (DWC): conclusion antecedent does not match");
        break;
      }
    }
  }
  return {};
}

}  // namespace lewiskit
