#include "lewiskit/duality.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace lewiskit {

namespace {

bool subset(PointSet a, PointSet b) { return (a & ~b) == 0; }

}  // namespace

PointSet SphereStructure::sphere_union(int x) const {
  PointSet u = 0;
  for (PointSet s : spheres[x]) u |= s;
  return u;
}

SphereStructure structure_of_model(const SphereModel& m) {
  return SphereStructure{m.worlds, m.spheres};
}

SphereModel model_of_structure(const SphereStructure& s,
                               const std::map<std::string, PointSet>& valuation) {
  SphereModel m;
  m.worlds = s.points;
  m.spheres = s.spheres;
  m.valuation = valuation;
  return m;
}

AlphaModel alpha_from_algebra(const VAlgebra& a) {
  AlphaModel s;
  for (int i = 0; i < a.atoms; ++i) s.points.push_back("x" + std::to_string(i + 1));
  s.f.assign(a.size(), std::vector<PointSet>(std::max(a.atoms, 1), 0));
  for (Elem amask = 0; amask < static_cast<Elem>(a.size()); ++amask) {
    for (int x = 0; x < a.atoms; ++x) {
      const Elem atom = Elem(1) << x;
      Elem m = a.top();
      for (Elem c = 0; c < static_cast<Elem>(a.size()); ++c)
        if (a.leq(atom, a.cf[amask][c])) m &= c;
      s.f[amask][x] = m;  // atoms below the meet; same bit encoding
    }
  }
  if (a.atoms == 0) s.f.assign(1, std::vector<PointSet>());
  return s;
}

VAlgebra algebra_from_alpha(const AlphaModel& s) {
  VAlgebra a;
  a.atoms = s.n();
  a.cf.assign(a.size(), std::vector<Elem>(a.size(), 0));
  for (int A = 0; A < s.subsets(); ++A)
    for (int B = 0; B < s.subsets(); ++B) {
      Elem v = 0;
      for (int x = 0; x < s.n(); ++x)
        if (subset(s.f[A][x], static_cast<PointSet>(B))) v |= Elem(1) << x;
      a.cf[A][B] = v;
    }
  return a;
}

AlphaAxiomReport check_alpha_axioms(const AlphaModel& s) {
  const int ns = s.subsets();
  for (int A = 0; A < ns; ++A)
    for (int x = 0; x < s.n(); ++x)
      if (!subset(s.f[A][x], static_cast<PointSet>(A)))
        return {false, "a1", static_cast<PointSet>(A), 0, x};
  for (int A = 0; A < ns; ++A)
    for (int B = 0; B < ns; ++B)
      for (int x = 0; x < s.n(); ++x) {
        if (subset(s.f[A][x], static_cast<PointSet>(B)) &&
            subset(s.f[B][x], static_cast<PointSet>(A)) &&
            s.f[A][x] != s.f[B][x])
          return {false, "a2", static_cast<PointSet>(A), static_cast<PointSet>(B), x};
      }
  for (int A = 0; A < ns; ++A)
    for (int B = 0; B < ns; ++B)
      for (int x = 0; x < s.n(); ++x) {
        PointSet u = s.f[A | B][x];
        if (!subset(u, static_cast<PointSet>(A)) &&
            !subset(u, static_cast<PointSet>(B)) &&
            u != (s.f[A][x] | s.f[B][x]))
          return {false, "a3", static_cast<PointSet>(A), static_cast<PointSet>(B), x};
      }
  // a4/a5 concern limits of infinite descending chains; vacuous here.
  return {};
}

SphereAxiomReport check_sphere_axioms(const SphereStructure& s) {
  for (int x = 0; x < s.n(); ++x) {
    const auto& fam = s.spheres[x];
    for (std::size_t i = 0; i + 1 < fam.size(); ++i)
      if (!subset(fam[i], fam[i + 1]))
        return {false, "spheres at " + s.points[x] + " are not nested"};
    for (PointSet a = 1; a < static_cast<PointSet>(1 << s.n()); ++a) {
      PointSet least = 0;
      bool have = false;
      for (PointSet sp : fam)
        if (sp & a) {
          least = sp;
          have = true;
          break;
        }
      if (!have) continue;
      for (PointSet sp : fam)
        if ((sp & a) && !subset(least, sp))
          return {false, "no least sphere meeting A at " + s.points[x]};
    }
  }
  return {};
}

PointPreorder preorder(const AlphaModel& s, int x) {
  const int ns = s.subsets();
  PointPreorder po;
  po.x = x;
  po.le.assign(ns, std::vector<bool>(ns, false));
  for (int A = 0; A < ns; ++A)
    for (int B = 0; B < ns; ++B)
      po.le[A][B] = (s.f[B][x] == 0) ||
                    (s.f[A][x] != 0 && subset(s.f[A][x], s.f[A | B][x]));
  for (int A = 0; A < ns && po.total; ++A)
    for (int B = 0; B < ns; ++B)
      if (!po.le[A][B] && !po.le[B][A]) {
        po.total = false;
        break;
      }
  for (int A = 0; A < ns && po.transitive; ++A)
    for (int B = 0; B < ns && po.transitive; ++B) {
      if (!po.le[A][B]) continue;
      for (int C = 0; C < ns; ++C)
        if (po.le[B][C] && !po.le[A][C]) {
          po.transitive = false;
          break;
        }
    }
  return po;
}

SphereStructure sphere_from_alpha(const AlphaModel& s) {
  SphereStructure t;
  t.points = s.points;
  t.spheres.resize(s.n());
  const int ns = s.subsets();
  for (int x = 0; x < s.n(); ++x) {
    PointPreorder po = preorder(s, x);
    std::set<PointSet> fam;
    for (int B = 0; B < ns; ++B) {
      PointSet u = 0;
      for (int A = 0; A < ns; ++A)
        if (po.le[A][B]) u |= s.f[A][x];
      if (u != 0) fam.insert(u);
    }
    t.spheres[x].assign(fam.begin(), fam.end());
    std::sort(t.spheres[x].begin(), t.spheres[x].end(),
              [](PointSet a, PointSet b) {
                return std::popcount(a) < std::popcount(b) ||
                       (std::popcount(a) == std::popcount(b) && a < b);
              });
  }
  return t;
}

AlphaModel alpha_from_sphere(const SphereStructure& s) {
  AlphaModel t;
  t.points = s.points;
  const int ns = 1 << s.n();
  t.f.assign(ns, std::vector<PointSet>(std::max(s.n(), 1), 0));
  if (s.n() == 0) t.f.assign(1, std::vector<PointSet>());
  for (int A = 0; A < ns; ++A)
    for (int x = 0; x < s.n(); ++x) {
      PointSet v = 0;
      for (PointSet sp : s.spheres[x])
        if (sp & static_cast<PointSet>(A)) {
          v = sp & static_cast<PointSet>(A);  // least meeting sphere
          break;
        }
      t.f[A][x] = v;
    }
  return t;
}

bool stone_roundtrip_check(const VAlgebra& a) {
  const AlphaModel dual = alpha_from_algebra(a);
  const VAlgebra b = algebra_from_alpha(dual);
  if (b.atoms != a.atoms) return false;
  // stone(x) = set of atoms below x, which in the bitmask encoding is x
  // itself; verify it is a bijective homomorphism preserving |>.
  std::vector<Elem> stone(a.size());
  for (Elem x = 0; x < static_cast<Elem>(a.size()); ++x) stone[x] = x;
  std::vector<bool> hit(b.size(), false);
  for (Elem x : stone) {
    if (hit[x]) return false;
    hit[x] = true;
  }
  return check_homomorphism(a, b, stone);
}

bool is_alpha_morphism(const AlphaModel& s, const AlphaModel& t,
                       const std::vector<int>& map) {
  if (map.size() != static_cast<std::size_t>(s.n())) return false;
  for (int i : map)
    if (i < 0 || i >= t.n()) return false;

  const int nt = t.subsets();
  auto preimage = [&](int aprime) {
    PointSet p = 0;
    for (int y = 0; y < s.n(); ++y)
      if (aprime & (1 << map[y])) p |= PointSet(1) << y;
    return p;
  };
  for (int Ap = 0; Ap < nt; ++Ap) {
    const PointSet pre = preimage(Ap);
    for (int x = 0; x < s.n(); ++x) {
      const PointSet fx = s.f[pre][x];
      const PointSet ftx = t.f[Ap][map[x]];
      // forward: phi[f(phi^-1 A', x)] ⊆ f'(A', phi x)
      for (int y = 0; y < s.n(); ++y)
        if ((fx & (PointSet(1) << y)) && !(ftx & (PointSet(1) << map[y])))
          return false;
      // backward: every y' ∈ f'(A', phi x) lifts to some y ∈ f(phi^-1 A', x)
      for (int yp = 0; yp < t.n(); ++yp) {
        if (!(ftx & (PointSet(1) << yp))) continue;
        bool lifted = false;
        for (int y = 0; y < s.n(); ++y)
          if (map[y] == yp && (fx & (PointSet(1) << y))) {
            lifted = true;
            break;
          }
        if (!lifted) return false;
      }
    }
  }
  return true;
}

bool is_sphere_morphism(const SphereStructure& s, const SphereStructure& t,
                        const std::vector<int>& map) {
  if (map.size() != static_cast<std::size_t>(s.n())) return false;
  for (int i : map)
    if (i < 0 || i >= t.n()) return false;

  auto least_meeting = [](const SphereStructure& st, int x, PointSet a) -> PointSet {
    for (PointSet sp : st.spheres[x])
      if (sp & a) return sp;
    return 0;  // no sphere meets a
  };
  const int nt = 1 << t.n();
  auto preimage = [&](int aprime) {
    PointSet p = 0;
    for (int y = 0; y < s.n(); ++y)
      if (aprime & (1 << map[y])) p |= PointSet(1) << y;
    return p;
  };
  for (int Ap = 0; Ap < nt; ++Ap) {
    const PointSet apm = static_cast<PointSet>(Ap);
    for (int x = 0; x < s.n(); ++x) {
      const PointSet pre = preimage(Ap);
      if (pre & s.sphere_union(x)) {
        const PointSet sig = least_meeting(s, x, pre);
        const PointSet tsig = least_meeting(t, map[x], apm);
        for (int y = 0; y < s.n(); ++y)
          if ((pre & sig & (PointSet(1) << y)) &&
              !(tsig & apm & (PointSet(1) << map[y])))
            return false;
      }
      if (apm & t.sphere_union(map[x])) {
        const PointSet tsig = least_meeting(t, map[x], apm);
        const PointSet sig = least_meeting(s, x, preimage(Ap));
        for (int yp = 0; yp < t.n(); ++yp) {
          if (!(apm & tsig & (PointSet(1) << yp))) continue;
          bool lifted = false;
          for (int y = 0; y < s.n(); ++y)
            if (map[y] == yp && (sig & (PointSet(1) << y))) {
              lifted = true;
              break;
            }
          if (!lifted) return false;
        }
      }
    }
  }
  return true;
}

std::vector<int> dual_of_homomorphism(const VAlgebra& a, const VAlgebra& b,
                                      const std::vector<Elem>& h) {
  std::vector<int> map(b.atoms, -1);
  for (int x = 0; x < b.atoms; ++x) {
    const Elem atom = Elem(1) << x;
    Elem m = a.top();
    for (Elem e = 0; e < static_cast<Elem>(a.size()); ++e)
      if (b.leq(atom, h[e])) m &= e;  // meet of the ultrafilter preimage
    map[x] = std::countr_zero(m);    // its generating atom
  }
  return map;
}

bool check_alpha1(const AlphaModel& s) {
  for (int A = 0; A < s.subsets(); ++A)
    for (int x = 0; x < s.n(); ++x)
      if (A & (1 << x)) {
        if (s.f[A][x] != (PointSet(1) << x)) return false;
      }
  return true;
}

bool check_alpha2(const AlphaModel& s) {
  if (!check_alpha1(s)) return false;
  for (int A = 0; A < s.subsets(); ++A)
    for (int x = 0; x < s.n(); ++x)
      if (std::popcount(s.f[A][x]) > 1) return false;
  return true;
}

}  // namespace lewiskit
