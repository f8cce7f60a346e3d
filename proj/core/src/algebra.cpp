#include "lewiskit/algebra.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace lewiskit {

VAlgebra classical_two() {
  VAlgebra a;
  a.atoms = 1;
  a.cf = {{1, 1}, {0, 1}};
  return a;
}

AxiomReport check_axioms(const VAlgebra& a) {
  AxiomReport rep;
  const int n = a.size();
  const Elem one = a.top();
  auto fail = [&](const char* ax, Elem x, Elem y, Elem z) {
    rep.ok = false;
    rep.failures.push_back({ax, {x, y, z}});
  };

  for (Elem x = 0; x < static_cast<Elem>(n); ++x)
    if (a.cf[x][x] != one) {
      fail("C1", x, 0, 0);
      break;
    }

  [&] {
    for (Elem x = 0; x < static_cast<Elem>(n); ++x)
      for (Elem y = 0; y < static_cast<Elem>(n); ++y)
        for (Elem z = 0; z < static_cast<Elem>(n); ++z) {
          Elem lhs = a.meet(a.cf[x][y], a.cf[y][x]);
          Elem rhs = a.equiv(a.cf[x][z], a.cf[y][z]);
          if (!a.leq(lhs, rhs)) {
            fail("C2", x, y, z);
            return;
          }
        }
  }();

  [&] {
    for (Elem x = 0; x < static_cast<Elem>(n); ++x)
      for (Elem y = 0; y < static_cast<Elem>(n); ++y)
        for (Elem z = 0; z < static_cast<Elem>(n); ++z) {
          Elem xy = a.join(x, y);
          Elem third = a.equiv(a.cf[xy][z], a.meet(a.cf[x][z], a.cf[y][z]));
          if (a.join(a.cf[xy][x], a.join(a.cf[xy][y], third)) != one) {
            fail("C3", x, y, z);
            return;
          }
        }
  }();

  [&] {
    for (Elem x = 0; x < static_cast<Elem>(n); ++x)
      for (Elem y = 0; y < static_cast<Elem>(n); ++y)
        for (Elem z = 0; z < static_cast<Elem>(n); ++z)
          if (a.cf[x][a.meet(y, z)] != a.meet(a.cf[x][y], a.cf[x][z])) {
            fail("C4", x, y, z);
            return;
          }
  }();

  return rep;
}

std::optional<Variety> Variety::parse(const std::string& name) {
  Variety v;
  if (name == "LC") {
    v.lc = true;
    return v;
  }
  if (name == "CA") {
    v.lc = v.ca = true;
    return v;
  }
  if (name.empty() || name[0] != 'V') return std::nullopt;
  for (std::size_t i = 1; i < name.size(); ++i) {
    char c = name[i];
    if (std::string("WCNTSUA").find(c) == std::string::npos) return std::nullopt;
    v.ext.insert(c);
  }
  return v;
}

std::string Variety::name() const {
  if (ca) return "CA";
  if (lc) return "LC";
  std::string s = "V";
  for (char c : std::string("WCNTSUA"))
    if (ext.count(c)) s += c;
  return s;
}

Elem eval_formula(const VAlgebra& a, const Formula& f, const Assignment& h) {
  std::unordered_map<const Node*, Elem> memo;
  auto rec = [&](auto&& self, const Node* n) -> Elem {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Elem v = 0;
    switch (n->kind) {
      case Kind::Var: {
        auto hv = h.find(n->name);
        v = (hv == h.end()) ? 0 : hv->second;
        break;
      }
      case Kind::Const0: v = 0; break;
      case Kind::Const1: v = a.top(); break;
      case Kind::And: v = a.meet(self(self, n->lhs.get()), self(self, n->rhs.get())); break;
      case Kind::Or: v = a.join(self(self, n->lhs.get()), self(self, n->rhs.get())); break;
      case Kind::Imp: v = a.implies(self(self, n->lhs.get()), self(self, n->rhs.get())); break;
      case Kind::Cf: v = a.cf[self(self, n->lhs.get())][self(self, n->rhs.get())]; break;
    }
    memo.emplace(n, v);
    return v;
  };
  return rec(rec, f.get());
}

namespace {

// Checks that an identity (formula == 1 under every assignment to its
// variables) holds; reports the first failing assignment.
bool identity_holds(const VAlgebra& a, const Formula& f, std::string* detail) {
  const auto vars = variables(f);
  const int n = a.size();
  std::vector<Elem> vals(vars.size(), 0);
  for (;;) {
    Assignment h;
    for (std::size_t i = 0; i < vars.size(); ++i) h[vars[i]] = vals[i];
    if (eval_formula(a, f, h) != a.top()) {
      if (detail) {
        *detail = print(f) + " fails at";
        for (std::size_t i = 0; i < vars.size(); ++i)
          *detail += " " + vars[i] + "=" + std::to_string(vals[i]);
      }
      return false;
    }
    int i = static_cast<int>(vals.size()) - 1;
    while (i >= 0 && vals[i] == static_cast<Elem>(n - 1)) vals[i--] = 0;
    if (i < 0) return true;
    ++vals[i];
  }
}

}  // namespace

VarietyReport check_variety(const VAlgebra& a, const Variety& v,
                            UniformityReading u) {
  VarietyReport rep;
  std::vector<Formula> identities;
  const Formula p = var("p"), q = var("q");
  for (const char* id : {"L1", "L2", "L3", "L4"})
    identities.push_back(schema(id, u));
  if (v.lc) {
    identities.push_back(imp(conj(p, q), cf(p, q)));
    identities.push_back(imp(cf(p, q), imp(p, q)));
  }
  if (v.ca) identities.push_back(disj(cf(p, q), cf(p, neg(q))));
  for (char c : v.ext) identities.push_back(schema(std::string(1, c), u));

  for (const Formula& f : identities) {
    std::string detail;
    if (!identity_holds(a, f, &detail)) {
      rep.ok = false;
      rep.detail = detail;
      return rep;
    }
  }
  return rep;
}

std::vector<std::vector<Elem>> lattice_filters(const VAlgebra& a) {
  // Finite lattice: every filter is principal.
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> gens;
  for (Elem g = 0; g < static_cast<Elem>(a.size()); ++g) gens.push_back(g);
  std::sort(gens.begin(), gens.end(), [&](Elem x, Elem y) {
    int px = std::popcount(a.complement(x)), py = std::popcount(a.complement(y));
    if (px != py) return px < py;  // fewer elements above == smaller filter
    return x < y;
  });
  for (Elem g : gens) {
    std::vector<Elem> f;
    for (Elem x = 0; x < static_cast<Elem>(a.size()); ++x)
      if (a.leq(g, x)) f.push_back(x);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<std::vector<Elem>> open_filters(const VAlgebra& a) {
  std::vector<std::vector<Elem>> out;
  for (auto& f : lattice_filters(a)) {
    bool open = true;
    for (Elem x : f)
      if (std::find(f.begin(), f.end(), a.box(x)) == f.end()) {
        open = false;
        break;
      }
    if (open) out.push_back(std::move(f));
  }
  return out;
}

Congruence congruence_of_filter(const VAlgebra& a, const std::vector<Elem>& f) {
  // The generator of a principal filter is the meet of its members.
  Elem c = a.top();
  for (Elem x : f) c &= x;
  Congruence th;
  std::vector<bool> done(a.size(), false);
  for (Elem x = 0; x < static_cast<Elem>(a.size()); ++x) {
    if (done[x]) continue;
    std::vector<Elem> block;
    for (Elem y = x; y < static_cast<Elem>(a.size()); ++y)
      if (a.leq(c, a.equiv(x, y))) {
        block.push_back(y);
        done[y] = true;
      }
    th.blocks.push_back(std::move(block));
  }
  return th;
}

std::vector<Elem> filter_of_congruence(const VAlgebra& a, const Congruence& th) {
  for (const auto& b : th.blocks)
    if (std::find(b.begin(), b.end(), a.top()) != b.end()) return b;
  return {};
}

std::vector<Congruence> congruences(const VAlgebra& a) {
  std::vector<Congruence> out;
  for (const auto& f : open_filters(a)) out.push_back(congruence_of_filter(a, f));
  return out;
}

VAlgebra quotient(const VAlgebra& a, const Congruence& th,
                  std::vector<Elem>* projection) {
  Elem c = a.top();
  for (Elem x : filter_of_congruence(a, th)) c &= x;

  // Quotient elements correspond to x & c; compress onto the atoms below c.
  std::vector<int> atom_pos(a.atoms, -1);
  int k = 0;
  for (int i = 0; i < a.atoms; ++i)
    if (c & (Elem(1) << i)) atom_pos[i] = k++;
  auto compress = [&](Elem x) {
    Elem r = 0;
    for (int i = 0; i < a.atoms; ++i)
      if ((x & (Elem(1) << i)) && atom_pos[i] >= 0) r |= Elem(1) << atom_pos[i];
    return r;
  };
  auto expand = [&](Elem x) {
    Elem r = 0;
    for (int i = 0; i < a.atoms; ++i)
      if (atom_pos[i] >= 0 && (x & (Elem(1) << atom_pos[i]))) r |= Elem(1) << i;
    return r;
  };

  VAlgebra q;
  q.atoms = k;
  q.cf.assign(q.size(), std::vector<Elem>(q.size(), 0));
  for (Elem x = 0; x < static_cast<Elem>(q.size()); ++x)
    for (Elem y = 0; y < static_cast<Elem>(q.size()); ++y)
      q.cf[x][y] = compress(a.cf[expand(x)][expand(y)] & c);
  if (projection) {
    projection->assign(a.size(), 0);
    for (Elem x = 0; x < static_cast<Elem>(a.size()); ++x)
      (*projection)[x] = compress(x & c);
  }
  return q;
}

namespace {

// Lexicographically ordered assignments over the joint variables.
template <typename Fn>
void for_each_assignment(const VAlgebra& a, const std::vector<std::string>& vars,
                         Fn fn) {
  std::vector<Elem> vals(vars.size(), 0);
  for (;;) {
    Assignment h;
    for (std::size_t i = 0; i < vars.size(); ++i) h[vars[i]] = vals[i];
    if (!fn(h)) return;
    int i = static_cast<int>(vals.size()) - 1;
    while (i >= 0 && vals[i] == a.top()) vals[i--] = 0;
    if (i < 0) return;
    ++vals[i];
  }
}

std::vector<std::string> joint_variables(const std::vector<Formula>& fs) {
  std::set<std::string> vs;
  for (const auto& f : fs)
    for (const auto& v : variables(f)) vs.insert(v);
  return {vs.begin(), vs.end()};
}

}  // namespace

std::optional<DegreeWitness> degree_consequence(std::span<const VAlgebra> as,
                                                const std::vector<Formula>& gamma,
                                                const Formula& phi) {
  std::vector<Formula> all = gamma;
  all.push_back(phi);
  const auto vars = joint_variables(all);
  for (std::size_t ai = 0; ai < as.size(); ++ai) {
    const VAlgebra& a = as[ai];
    std::optional<DegreeWitness> found;
    for_each_assignment(a, vars, [&](const Assignment& h) {
      Elem bound = a.top();
      for (const Formula& g : gamma) bound = a.meet(bound, eval_formula(a, g, h));
      if (!a.leq(bound, eval_formula(a, phi, h))) {
        found = DegreeWitness{static_cast<int>(ai), h, bound};
        return false;
      }
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

std::optional<EquationalWitness> equational_consequence(
    std::span<const VAlgebra> as, const std::vector<Equation>& premises,
    const Equation& conclusion) {
  std::vector<Formula> all;
  for (const auto& e : premises) {
    all.push_back(e.lhs);
    all.push_back(e.rhs);
  }
  all.push_back(conclusion.lhs);
  all.push_back(conclusion.rhs);
  const auto vars = joint_variables(all);
  for (std::size_t ai = 0; ai < as.size(); ++ai) {
    const VAlgebra& a = as[ai];
    std::optional<EquationalWitness> found;
    for_each_assignment(a, vars, [&](const Assignment& h) {
      for (const auto& e : premises)
        if (eval_formula(a, e.lhs, h) != eval_formula(a, e.rhs, h)) return true;
      if (eval_formula(a, conclusion.lhs, h) != eval_formula(a, conclusion.rhs, h)) {
        found = EquationalWitness{static_cast<int>(ai), h};
        return false;
      }
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

bool check_homomorphism(const VAlgebra& a, const VAlgebra& b,
                        const std::vector<Elem>& h) {
  if (h.size() != static_cast<std::size_t>(a.size())) return false;
  for (Elem x : h)
    if (x > b.top()) return false;
  if (h[0] != 0 || h[a.top()] != b.top()) return false;
  for (Elem x = 0; x < static_cast<Elem>(a.size()); ++x) {
    if (h[a.complement(x)] != b.complement(h[x])) return false;
    for (Elem y = 0; y < static_cast<Elem>(a.size()); ++y) {
      if (h[a.meet(x, y)] != b.meet(h[x], h[y])) return false;
      if (h[a.join(x, y)] != b.join(h[x], h[y])) return false;
      if (h[a.implies(x, y)] != b.implies(h[x], h[y])) return false;
      if (h[a.cf[x][y]] != b.cf[h[x]][h[y]]) return false;
    }
  }
  return true;
}

std::vector<VAlgebra> enumerate_v_algebras(int atoms) {
  std::vector<VAlgebra> out;
  if (atoms < 0 || atoms > 2) return out;

  if (atoms == 0) {
    VAlgebra a;
    a.atoms = 0;
    a.cf = {{0}};
    out.push_back(std::move(a));
    return out;
  }

  const int n = 1 << atoms;
  const Elem one = static_cast<Elem>(n - 1);
  // Coatoms: complements of atoms. A C4 row is determined by its coatom
  // values (y == meet of the coatoms above it, the empty meet being 1).
  std::vector<Elem> coatoms;
  for (int i = 0; i < atoms; ++i) coatoms.push_back(one ^ (Elem(1) << i));

  // Row candidates in lexicographic order of their coatom values.
  std::vector<std::vector<Elem>> rows;
  std::vector<Elem> cv(coatoms.size(), 0);
  for (;;) {
    std::vector<Elem> row(n);
    for (Elem y = 0; y < static_cast<Elem>(n); ++y) {
      Elem v = one;
      for (std::size_t i = 0; i < coatoms.size(); ++i)
        if ((y & ~coatoms[i]) == 0) v &= cv[i];
      row[y] = v;
    }
    rows.push_back(std::move(row));
    int i = static_cast<int>(cv.size()) - 1;
    while (i >= 0 && cv[i] == one) cv[i--] = 0;
    if (i < 0) break;
    ++cv[i];
  }

  // All row combinations, filtered through the axiom checker (C4 holds by
  // construction; C1-C3 filter).
  std::vector<std::size_t> pick(n, 0);
  for (;;) {
    VAlgebra a;
    a.atoms = atoms;
    a.cf.reserve(n);
    for (int x = 0; x < n; ++x) a.cf.push_back(rows[pick[x]]);
    if (check_axioms(a).ok) out.push_back(std::move(a));
    int i = n - 1;
    while (i >= 0 && pick[i] == rows.size() - 1) pick[i--] = 0;
    if (i < 0) break;
    ++pick[i];
  }
  return out;
}

}  // namespace lewiskit
