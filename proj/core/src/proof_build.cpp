#include "lewiskit/proof_build.hpp"

#include <memory>
#include <stdexcept>
#include <unordered_map>

namespace lewiskit {

// ---------------------------------------------------------------------------
// ProofBuilder

ProofBuilder::ProofBuilder(std::vector<Formula> premises, UniformityReading u)
    : u_(u) {
  p_.premises = std::move(premises);
}

int ProofBuilder::add(Formula f, Justification by, bool dep) {
  std::string key = (dep ? "D:" : "F:") + print(f);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  p_.lines.push_back(ProofLine{std::move(f), std::move(by)});
  dep_.push_back(dep);
  int idx = static_cast<int>(p_.lines.size()) - 1;
  memo_.emplace(std::move(key), idx);
  return idx;
}

int ProofBuilder::premise(const Formula& f) {
  bool found = false;
  for (const auto& g : p_.premises)
    if (equal(g, f)) {
      found = true;
      break;
    }
  if (!found) throw std::logic_error("premise() formula is not a premise");
  Justification by;
  by.kind = Justification::Kind::Premise;
  return add(f, by, /*dep=*/true);
}

int ProofBuilder::axiom(const std::string& id, const Substitution& sub) {
  Justification by;
  by.kind = Justification::Kind::Axiom;
  by.axiom_id = id;
  by.sub = sub;
  return add(substitute(schema(id, u_), sub), by, /*dep=*/false);
}

int ProofBuilder::repeat(int line) {
  p_.lines.push_back(p_.lines[line]);
  dep_.push_back(dep_[line]);
  return static_cast<int>(p_.lines.size()) - 1;
}

int ProofBuilder::mp(int major, int minor) {
  const Formula& maj = at(major);
  if (maj->kind != Kind::Imp || !equal(maj->lhs, at(minor)))
    throw std::logic_error("mp() lines do not match: " + print(maj) +
                           " vs " + print(at(minor)));
  Justification by;
  by.kind = Justification::Kind::MP;
  by.i = major + 1;
  by.j = minor + 1;
  return add(maj->rhs, by, dep_[major] || dep_[minor]);
}

int ProofBuilder::rule_c(int line, const Formula& gamma) {
  const Formula& src = at(line);
  if (src->kind != Kind::Imp)
    throw std::logic_error("rule_c() source is not an implication");
  Justification by;
  by.kind = Justification::Kind::RuleC;
  by.i = line + 1;
  return add(imp(cf(gamma, src->lhs), cf(gamma, src->rhs)), by, dep_[line]);
}

namespace {
// Splits f into exactly n conjuncts, treating & as right-nested.
std::vector<Formula> peel_n(const Formula& f, int n) {
  std::vector<Formula> out;
  Formula cur = f;
  for (int k = 0; k + 1 < n; ++k) {
    if (cur->kind != Kind::And)
      throw std::logic_error("dwc() antecedent has too few conjuncts");
    out.push_back(cur->lhs);
    cur = cur->rhs;
  }
  out.push_back(cur);
  return out;
}
}  // namespace

int ProofBuilder::dwc(int n, int line, const Formula& gamma) {
  const Formula& src = at(line);
  Justification by;
  by.kind = Justification::Kind::Dwc;
  by.i = line + 1;
  by.n = n;
  if (n == 0) return add(cf(gamma, src), by, dep_[line]);
  if (src->kind != Kind::Imp)
    throw std::logic_error("dwc() source is not an implication");
  std::vector<Formula> phis = peel_n(src->lhs, n);
  Formula ante = cf(gamma, phis.back());
  for (int k = n - 2; k >= 0; --k) ante = conj(cf(gamma, phis[k]), ante);
  return add(imp(ante, cf(gamma, src->rhs)), by, dep_[line]);
}

// ---------------------------------------------------------------------------
// Derivation trees over the L0 base, compiled to proof lines. Hypotheses are
// discharged with the standard deduction-theorem transformation, which only
// needs A1 and A2.

namespace {

struct Deriv;
using DP = std::shared_ptr<const Deriv>;

struct Deriv {
  enum class K { Ax, Line, Hyp, App };
  K k;
  std::string ax;    // Ax
  Substitution sub;  // Ax
  int line = -1;     // Line (index in the target builder)
  int hyp = -1;      // Hyp
  DP a, b;           // App: a derives X -> Y, b derives X
  Formula f;         // formula this tree derives
};

DP dax(const std::string& id, const Substitution& sub) {
  auto d = std::make_shared<Deriv>();
  d->k = Deriv::K::Ax;
  d->ax = id;
  d->sub = sub;
  d->f = substitute(schema(id), sub);
  return d;
}

DP dline(const ProofBuilder& pb, int line) {
  auto d = std::make_shared<Deriv>();
  d->k = Deriv::K::Line;
  d->line = line;
  d->f = pb.at(line);
  return d;
}

DP dhyp(const Formula& f) {
  static int counter = 0;
  auto d = std::make_shared<Deriv>();
  d->k = Deriv::K::Hyp;
  d->hyp = counter++;
  d->f = f;
  return d;
}

DP dapp(const DP& a, const DP& b) {
  if (a->f->kind != Kind::Imp || !equal(a->f->lhs, b->f))
    throw std::logic_error("dapp() mismatch: " + print(a->f) + " applied to " +
                           print(b->f));
  auto d = std::make_shared<Deriv>();
  d->k = Deriv::K::App;
  d->a = a;
  d->b = b;
  d->f = a->f->rhs;
  return d;
}

bool has_hyp(const DP& d, int id) {
  switch (d->k) {
    case Deriv::K::Hyp:
      return d->hyp == id;
    case Deriv::K::App:
      return has_hyp(d->a, id) || has_hyp(d->b, id);
    default:
      return false;
  }
}

// ⊢ x -> x from A1/A2 alone.
DP d_ident(const Formula& x) {
  Formula xx = imp(x, x);
  return dapp(dapp(dax("A2", {{"p", x}, {"q", xx}, {"r", x}}),
                   dax("A1", {{"p", x}, {"q", xx}})),
              dax("A1", {{"p", x}, {"q", x}}));
}

// Deduction theorem: from a tree for f using hypothesis h, a tree for
// h.f -> f without it.
DP discharge(const DP& h, const DP& d) {
  if (d->k == Deriv::K::Hyp && d->hyp == h->hyp) return d_ident(h->f);
  if (!has_hyp(d, h->hyp))
    return dapp(dax("A1", {{"p", d->f}, {"q", h->f}}), d);
  // d is an App whose subtrees mention h.
  return dapp(dapp(dax("A2", {{"p", h->f}, {"q", d->b->f}, {"r", d->f}}),
                   discharge(h, d->a)),
              discharge(h, d->b));
}

// a -> b and b -> c give a -> c.
DP d_trans(const DP& ab, const DP& bc) {
  DP h = dhyp(ab->f->lhs);
  return discharge(h, dapp(bc, dapp(ab, h)));
}

// ⊢ y -> ~~y.
DP d_dneg_intro(const Formula& y) {
  DP hy = dhyp(y);
  DP hny = dhyp(neg(y));
  return discharge(hy, discharge(hny, dapp(hny, hy)));
}

// ⊢ ~~x -> x.
DP d_dne(const Formula& x) {
  return dapp(dax("A3", {{"p", neg(neg(x))}, {"q", x}}),
              d_dneg_intro(neg(x)));
}

// ⊢ 0 -> x.
DP d_efq(const Formula& x) {
  DP h = dhyp(falsum());
  DP nn = dapp(dax("A1", {{"p", falsum()}, {"q", neg(x)}}), h);
  return discharge(h, dapp(d_dne(x), nn));
}

// ⊢ (u -> v) -> (~v -> ~u).
DP d_contrapose(const Formula& u, const Formula& v) {
  DP huv = dhyp(imp(u, v));
  DP hnv = dhyp(neg(v));
  DP hu = dhyp(u);
  DP zero = dapp(hnv, dapp(huv, hu));
  return discharge(huv, discharge(hnv, discharge(hu, zero)));
}

// ⊢ (x & y) -> x.
DP d_and_e1(const Formula& x, const Formula& y) {
  // ~x -> (x -> ~y), then contrapose and cancel the double negation.
  DP hnx = dhyp(neg(x));
  DP hx = dhyp(x);
  DP t = discharge(hnx, discharge(hx, dapp(d_efq(neg(y)), dapp(hnx, hx))));
  DP cp = dapp(d_contrapose(neg(x), imp(x, neg(y))), t);
  DP core = d_trans(cp, d_dne(x));  // ~(x -> ~y) -> x
  return d_trans(dax("AndDef1", {{"p", x}, {"q", y}}), core);
}

// ⊢ (x & y) -> y.
DP d_and_e2(const Formula& x, const Formula& y) {
  DP t = dax("A1", {{"p", neg(y)}, {"q", x}});  // ~y -> (x -> ~y)
  DP cp = dapp(d_contrapose(neg(y), imp(x, neg(y))), t);
  DP core = d_trans(cp, d_dne(y));  // ~(x -> ~y) -> y
  return d_trans(dax("AndDef1", {{"p", x}, {"q", y}}), core);
}

// ⊢ x -> (y -> (x & y)).
DP d_and_i(const Formula& x, const Formula& y) {
  DP hx = dhyp(x);
  DP hy = dhyp(y);
  DP hn = dhyp(imp(x, neg(y)));
  DP notn = discharge(hn, dapp(dapp(hn, hx), hy));  // ~(x -> ~y)
  DP conj_ = dapp(dax("AndDef2", {{"p", x}, {"q", y}}), notn);
  return discharge(hx, discharge(hy, conj_));
}

// ⊢ x -> (x | y).
DP d_or_i1(const Formula& x, const Formula& y) {
  DP hx = dhyp(x);
  DP hnx = dhyp(neg(x));
  DP t = discharge(hnx, dapp(d_efq(y), dapp(hnx, hx)));  // ~x -> y
  return discharge(hx, dapp(dax("OrDef2", {{"p", x}, {"q", y}}), t));
}

// Combines closed trees for a -> b and b -> a into one for (a->b)&(b->a),
// i.e. a <-> b.
DP d_pair(const DP& ab, const DP& ba) {
  return dapp(dapp(d_and_i(ab->f, ba->f), ab), ba);
}

int compile(ProofBuilder& pb, const DP& d,
            std::unordered_map<const Deriv*, int>& memo) {
  if (auto it = memo.find(d.get()); it != memo.end()) return it->second;
  int out;
  switch (d->k) {
    case Deriv::K::Ax:
      out = pb.axiom(d->ax, d->sub);
      break;
    case Deriv::K::Line:
      out = d->line;
      break;
    case Deriv::K::App:
      out = pb.mp(compile(pb, d->a, memo), compile(pb, d->b, memo));
      break;
    default:
      throw std::logic_error("compile() reached an undischarged hypothesis");
  }
  memo.emplace(d.get(), out);
  return out;
}

int compile(ProofBuilder& pb, const DP& d) {
  std::unordered_map<const Deriv*, int> memo;
  return compile(pb, d, memo);
}

// From the line for an iff (L -> R) & (R -> L), extracts one direction.
int iff_dir(ProofBuilder& pb, int iff_line, bool forward) {
  const Formula& f = pb.at(iff_line);
  DP ex = forward ? d_and_e1(f->lhs, f->rhs) : d_and_e2(f->lhs, f->rhs);
  return compile(pb, dapp(ex, dline(pb, iff_line)));
}

// Emits ⊢ gamma |> 1 and returns its line.
int emit_cf_top(ProofBuilder& pb, const Formula& gamma) {
  // gamma -> (gamma & 1)
  DP hg = dhyp(gamma);
  DP truth = dax("Truth", {});
  int t1 = compile(
      pb, discharge(hg, dapp(dapp(d_and_i(gamma, verum()), hg), truth)));
  int c = pb.rule_c(t1, gamma);
  int l1 = pb.axiom("L1", {{"p", gamma}});
  int cf_and = pb.mp(c, l1);  // gamma |> (gamma & 1)
  int l4 = pb.axiom("L4", {{"p", gamma}, {"q", gamma}, {"r", verum()}});
  int fwd = iff_dir(pb, l4, /*forward=*/true);
  int pair = pb.mp(fwd, cf_and);  // (gamma |> gamma) & (gamma |> 1)
  return compile(
      pb, dapp(d_and_e2(cf(gamma, gamma), cf(gamma, verum())), dline(pb, pair)));
}

}  // namespace

// ---------------------------------------------------------------------------
// Bundled generators

Proof prove_l1_instance(const Formula& phi) {
  ProofBuilder pb;
  pb.axiom("L1", {{"p", phi}});
  return pb.proof();
}

Proof prove_monotonicity(const Formula& phi, const Formula& psi,
                         const Formula& gamma) {
  ProofBuilder pb;
  Formula por = disj(psi, gamma);
  // psi -> (psi & (psi | gamma))
  DP h = dhyp(psi);
  DP t =
      discharge(h, dapp(dapp(d_and_i(psi, por), h), dapp(d_or_i1(psi, gamma), h)));
  int grow = compile(pb, t);
  int c = pb.rule_c(grow, phi);  // (phi|>psi) -> (phi|>(psi & (psi|gamma)))
  int l4 = pb.axiom("L4", {{"p", phi}, {"q", psi}, {"r", por}});
  int fwd = iff_dir(pb, l4, /*forward=*/true);
  DP chain = d_trans(d_trans(dline(pb, c), dline(pb, fwd)),
                     d_and_e2(cf(phi, psi), cf(phi, por)));
  compile(pb, chain);
  return pb.proof();
}

Proof derive_dwc0(const Formula& gamma) {
  ProofBuilder pb;
  emit_cf_top(pb, gamma);
  return pb.proof();
}

Proof prove_dwc_n(int n, const std::vector<Formula>& phis, const Formula& psi,
                  const Formula& gamma) {
  if (n < 0 || static_cast<int>(phis.size()) != n)
    throw std::invalid_argument("prove_dwc_n: phis must have n entries");
  if (n == 0) {
    ProofBuilder pb({psi});
    int pr = pb.premise(psi);
    int lift = compile(
        pb, dapp(dax("A1", {{"p", psi}, {"q", verum()}}), dline(pb, pr)));
    int c = pb.rule_c(lift, gamma);  // (gamma|>1) -> (gamma|>psi)
    int top = emit_cf_top(pb, gamma);
    pb.mp(c, top);
    return pb.proof();
  }
  // Right-nested conjunction of the phis, and of the counterfactuals.
  std::vector<Formula> conj_tail(n), cf_tail(n);
  conj_tail[n - 1] = phis[n - 1];
  cf_tail[n - 1] = cf(gamma, phis[n - 1]);
  for (int k = n - 2; k >= 0; --k) {
    conj_tail[k] = conj(phis[k], conj_tail[k + 1]);
    cf_tail[k] = conj(cf(gamma, phis[k]), cf_tail[k + 1]);
  }
  ProofBuilder pb({imp(conj_tail[0], psi)});
  int pr = pb.premise(imp(conj_tail[0], psi));
  int c = pb.rule_c(pr, gamma);  // (gamma |> conj) -> (gamma |> psi)
  // bridge[k] : cf_tail[k] -> (gamma |> conj_tail[k])
  DP bridge = d_ident(cf(gamma, phis[n - 1]));
  for (int k = n - 2; k >= 0; --k) {
    DP h = dhyp(cf_tail[k]);
    DP head = dapp(d_and_e1(cf(gamma, phis[k]), cf_tail[k + 1]), h);
    DP rest = dapp(bridge, dapp(d_and_e2(cf(gamma, phis[k]), cf_tail[k + 1]), h));
    int l4 =
        pb.axiom("L4", {{"p", gamma}, {"q", phis[k]}, {"r", conj_tail[k + 1]}});
    int back = iff_dir(pb, l4, /*forward=*/false);
    DP paired = dapp(
        dapp(d_and_i(cf(gamma, phis[k]), cf(gamma, conj_tail[k + 1])), head),
        rest);
    bridge = discharge(h, dapp(dline(pb, back), paired));
  }
  compile(pb, d_trans(bridge, dline(pb, c)));
  return pb.proof();
}

Proof prove_c_from_dwc2(const Formula& phi, const Formula& psi,
                        const Formula& gamma) {
  ProofBuilder pb({imp(phi, psi)});
  int pr = pb.premise(imp(phi, psi));
  // (phi & phi) -> psi
  DP h = dhyp(conj(phi, phi));
  int squeezed =
      compile(pb, discharge(h, dapp(dline(pb, pr), dapp(d_and_e1(phi, phi), h))));
  int d2 = pb.dwc(2, squeezed, gamma);
  // (gamma|>phi) -> ((gamma|>phi) & (gamma|>phi))
  Formula cp = cf(gamma, phi);
  DP hc = dhyp(cp);
  DP dup = discharge(hc, dapp(dapp(d_and_i(cp, cp), hc), hc));
  compile(pb, d_trans(dup, dline(pb, d2)));
  return pb.proof();
}

Proof prove_l4_from_dwc2(const Formula& phi, const Formula& psi,
                         const Formula& gamma) {
  ProofBuilder pb;
  Formula pg = conj(psi, gamma);
  // Forward: (phi |> (psi & gamma)) -> ((phi|>psi) & (phi|>gamma)).
  int e1 = compile(pb, d_and_e1(psi, gamma));
  int e2 = compile(pb, d_and_e2(psi, gamma));
  int d1 = pb.dwc(1, e1, phi);
  int d2 = pb.dwc(1, e2, phi);
  DP h = dhyp(cf(phi, pg));
  DP fwd = discharge(
      h, dapp(dapp(d_and_i(cf(phi, psi), cf(phi, gamma)), dapp(dline(pb, d1), h)),
              dapp(dline(pb, d2), h)));
  // Backward: ((phi|>psi) & (phi|>gamma)) -> (phi |> (psi & gamma)).
  int idl = compile(pb, d_ident(pg));
  int back = pb.dwc(2, idl, phi);
  compile(pb, d_pair(fwd, dline(pb, back)));
  return pb.proof();
}

Proof prove_dwc2_from_c_l4(const Formula& phi1, const Formula& phi2,
                           const Formula& psi, const Formula& gamma) {
  Formula ante = conj(phi1, phi2);
  ProofBuilder pb({imp(ante, psi)});
  int pr = pb.premise(imp(ante, psi));
  int c = pb.rule_c(pr, gamma);  // (gamma |> (phi1 & phi2)) -> (gamma |> psi)
  int l4 = pb.axiom("L4", {{"p", gamma}, {"q", phi1}, {"r", phi2}});
  int back = iff_dir(pb, l4, /*forward=*/false);
  compile(pb, d_trans(dline(pb, back), dline(pb, c)));
  return pb.proof();
}

std::vector<Formula> global_deduction_candidates(const Formula& psi,
                                                 const Formula& phi,
                                                 int n_max) {
  std::vector<Formula> out;
  for (int n = 0; n <= n_max; ++n) {
    Formula ante = box_iterate(psi, n);
    for (int m = n - 1; m >= 0; --m) ante = conj(box_iterate(psi, m), ante);
    out.push_back(imp(ante, phi));
  }
  return out;
}

Proof local_deduction(const Calculus& c, const Proof& p, const Formula& psi) {
  if (c.strength != Strength::Local)
    throw std::invalid_argument("local_deduction requires a Local calculus");
  bool is_premise = false;
  for (const auto& g : p.premises)
    if (equal(g, psi)) {
      is_premise = true;
      break;
    }
  if (!is_premise)
    throw std::invalid_argument("local_deduction: psi is not a premise");
  CheckResult cr = check_proof(c, p);
  if (!cr.accepted)
    throw std::invalid_argument("local_deduction: input proof rejected at line " +
                                std::to_string(cr.line) + ": " + cr.reason);

  std::vector<Formula> rest;
  for (const auto& g : p.premises)
    if (!equal(g, psi)) rest.push_back(g);
  ProofBuilder pb(rest, c.uniformity);
  std::vector<bool> dep = premise_dependent(p);

  int n = static_cast<int>(p.lines.size());
  std::vector<int> copy_at(n, -1);  // verbatim copy, premise-free lines only
  std::vector<int> lift_at(n, -1);  // line proving psi -> f_i
  auto lift_free = [&](int i) {
    // psi -> f_i from the copied line via A1.
    lift_at[i] = compile(
        pb, dapp(dax("A1", {{"p", p.lines[i].f}, {"q", psi}}),
                 dline(pb, copy_at[i])));
  };

  for (int i = 0; i < n; ++i) {
    const ProofLine& ln = p.lines[i];
    if (!dep[i]) {
      // Re-derive the line as-is so that (C)/(DWC) can still cite it.
      const Justification& by = ln.by;
      switch (by.kind) {
        case Justification::Kind::Axiom: {
          Substitution s;
          if (by.sub)
            s = *by.sub;
          else if (!match_schema(schema(by.axiom_id, c.uniformity), ln.f, s))
            throw std::logic_error("accepted axiom line fails to re-match");
          copy_at[i] = pb.axiom(by.axiom_id, s);
          break;
        }
        case Justification::Kind::MP:
          copy_at[i] = pb.mp(copy_at[by.i - 1], copy_at[by.j - 1]);
          break;
        case Justification::Kind::RuleC: {
          Formula g = ln.f->lhs->lhs;  // (g |> x) -> (g |> y)
          copy_at[i] = pb.rule_c(copy_at[by.i - 1], g);
          break;
        }
        case Justification::Kind::Dwc: {
          Formula g = ln.f->kind == Kind::Cf ? ln.f->lhs : ln.f->rhs->lhs;
          copy_at[i] = pb.dwc(by.n, copy_at[by.i - 1], g);
          break;
        }
        default:
          throw std::logic_error("premise-free premise line");
      }
      lift_free(i);
      continue;
    }
    // Premise-dependent lines. In an accepted Local proof these can only be
    // premises or MP conclusions.
    switch (ln.by.kind) {
      case Justification::Kind::Premise:
        if (equal(ln.f, psi)) {
          lift_at[i] = compile(pb, d_ident(psi));
        } else {
          int pr = pb.premise(ln.f);
          lift_at[i] = compile(
              pb, dapp(dax("A1", {{"p", ln.f}, {"q", psi}}), dline(pb, pr)));
        }
        break;
      case Justification::Kind::MP: {
        int a = ln.by.i - 1, b = ln.by.j - 1;
        // A2: (psi -> (X -> Y)) -> ((psi -> X) -> (psi -> Y))
        int glue = pb.axiom(
            "A2", {{"p", psi}, {"q", p.lines[b].f}, {"r", ln.f}});
        lift_at[i] = pb.mp(pb.mp(glue, lift_at[a]), lift_at[b]);
        break;
      }
      default:
        throw std::logic_error(
            "local_deduction: rule applied to a premise-dependent line");
    }
  }
  // Ensure the transformed conclusion is the final line.
  int last = lift_at[n - 1];
  if (last != static_cast<int>(pb.proof().lines.size()) - 1) pb.repeat(last);
  return pb.proof();
}

}  // namespace lewiskit
