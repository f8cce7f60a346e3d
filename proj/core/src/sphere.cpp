#include "lewiskit/sphere.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace lewiskit {

namespace {

bool subset(WorldSet a, WorldSet b) { return (a & ~b) == 0; }

std::string set_to_string(const SphereModel& m, WorldSet s) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < m.world_count(); ++i) {
    if (s & (WorldSet(1) << i)) {
      if (!first) out += ",";
      out += m.worlds[i];
      first = false;
    }
  }
  return out + "}";
}

}  // namespace

int SphereModel::world_index(const std::string& name) const {
  for (int i = 0; i < world_count(); ++i)
    if (worlds[i] == name) return i;
  return -1;
}

WorldSet SphereModel::sphere_union(int w) const {
  WorldSet u = 0;
  for (WorldSet s : spheres[w]) u |= s;
  return u;
}

std::optional<std::string> normalize_model(SphereModel& m) {
  if (m.spheres.size() != m.worlds.size())
    m.spheres.resize(m.worlds.size());
  for (int w = 0; w < m.world_count(); ++w) {
    auto& fam = m.spheres[w];
    std::erase(fam, WorldSet(0));
    std::sort(fam.begin(), fam.end(), [](WorldSet a, WorldSet b) {
      return std::popcount(a) < std::popcount(b) || (std::popcount(a) == std::popcount(b) && a < b);
    });
    fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
    for (std::size_t i = 0; i + 1 < fam.size(); ++i) {
      if (!subset(fam[i], fam[i + 1])) {
        return "spheres at world " + m.worlds[w] + " are not nested: " +
               set_to_string(m, fam[i]) + " vs " + set_to_string(m, fam[i + 1]);
      }
    }
  }
  return std::nullopt;
}

WorldSet eval(const SphereModel& m, const Formula& f) {
  std::unordered_map<const Node*, WorldSet> memo;
  const WorldSet all = m.all_worlds();
  auto rec = [&](auto&& self, const Node* n) -> WorldSet {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    WorldSet v = 0;
    switch (n->kind) {
      case Kind::Var: {
        auto vi = m.valuation.find(n->name);
        v = (vi == m.valuation.end()) ? 0 : vi->second;
        break;
      }
      case Kind::Const0: v = 0; break;
      case Kind::Const1: v = all; break;
      case Kind::And: v = self(self, n->lhs.get()) & self(self, n->rhs.get()); break;
      case Kind::Or: v = self(self, n->lhs.get()) | self(self, n->rhs.get()); break;
      case Kind::Imp:
        v = (~self(self, n->lhs.get()) | self(self, n->rhs.get())) & all;
        break;
      case Kind::Cf: {
        WorldSet va = self(self, n->lhs.get());
        WorldSet vb = self(self, n->rhs.get());
        for (int w = 0; w < m.world_count(); ++w) {
          if ((m.sphere_union(w) & va) == 0) {
            v |= WorldSet(1) << w;  // vacuous: no sphere reaches the antecedent
            continue;
          }
          for (WorldSet s : m.spheres[w]) {
            WorldSet sa = s & va;
            if (sa != 0 && subset(sa, vb)) {
              v |= WorldSet(1) << w;
              break;
            }
          }
        }
        break;
      }
    }
    memo.emplace(n, v);
    return v;
  };
  return rec(rec, f.get());
}

const std::vector<std::pair<ModelClass, std::string>>& model_class_names() {
  static const std::vector<std::pair<ModelClass, std::string>> names = {
      {ModelClass::Normal, "normal"},
      {ModelClass::TotallyReflexive, "totally-reflexive"},
      {ModelClass::WeaklyCentered, "weakly-centered"},
      {ModelClass::Centered, "centered"},
      {ModelClass::Stalnakerian, "stalnakerian"},
      {ModelClass::Uniform, "uniform"},
      {ModelClass::Absolute, "absolute"},
      {ModelClass::WeaklyTrivial, "weakly-trivial"},
      {ModelClass::Trivial, "trivial"},
  };
  return names;
}

std::optional<ModelClass> model_class_from_name(const std::string& name) {
  for (const auto& [c, n] : model_class_names())
    if (n == name) return c;
  return std::nullopt;
}

std::string to_string(ModelClass c) {
  for (const auto& [cc, n] : model_class_names())
    if (cc == c) return n;
  return "?";
}

ClassCheck check_class(const SphereModel& m, ModelClass c) {
  const WorldSet all = m.all_worlds();
  for (int w = 0; w < m.world_count(); ++w) {
    const WorldSet bit = WorldSet(1) << w;
    const WorldSet uni = m.sphere_union(w);
    const auto& fam = m.spheres[w];
    switch (c) {
      case ModelClass::Normal:
        if (uni == 0) return {false, m.worlds[w]};
        break;
      case ModelClass::TotallyReflexive:
        if (!(uni & bit)) return {false, m.worlds[w]};
        break;
      case ModelClass::WeaklyCentered: {
        if (fam.empty()) return {false, m.worlds[w]};
        for (WorldSet s : fam)
          if (!(s & bit)) return {false, m.worlds[w]};
        break;
      }
      case ModelClass::Centered:
        if (std::find(fam.begin(), fam.end(), bit) == fam.end())
          return {false, m.worlds[w]};
        break;
      case ModelClass::Stalnakerian: {
        // Every set that meets ∪S(w) must meet some sphere in a singleton.
        for (WorldSet a = 1; a <= all; ++a) {
          if ((a & uni) == 0) continue;
          bool ok = false;
          for (WorldSet s : fam) {
            if (std::popcount(s & a) == 1) {
              ok = true;
              break;
            }
          }
          if (!ok)
            return {false, m.worlds[w] + " with A=" + set_to_string(m, a)};
        }
        break;
      }
      case ModelClass::Uniform:
        if (uni != m.sphere_union(0)) return {false, m.worlds[w]};
        break;
      case ModelClass::Absolute:
        if (fam != m.spheres[0]) return {false, m.worlds[w]};
        break;
      case ModelClass::WeaklyTrivial:
        if (fam.size() != 1 || fam[0] != all) return {false, m.worlds[w]};
        break;
      case ModelClass::Trivial:
        if (m.world_count() != 1 || fam.size() != 1 || fam[0] != all)
          return {false, m.worlds[w]};
        break;
    }
  }
  return {true, ""};
}

std::vector<std::pair<int, int>> accessibility(const SphereModel& m) {
  std::vector<std::pair<int, int>> r;
  for (int w = 0; w < m.world_count(); ++w) {
    WorldSet u = m.sphere_union(w);
    for (int v = 0; v < m.world_count(); ++v)
      if (u & (WorldSet(1) << v)) r.emplace_back(w, v);
  }
  return r;
}

WorldSet reach(const SphereModel& m, WorldSet x) {
  WorldSet cur = x & m.all_worlds();
  for (;;) {
    WorldSet nxt = cur;
    for (int w = 0; w < m.world_count(); ++w)
      if (cur & (WorldSet(1) << w)) nxt |= m.sphere_union(w);
    if (nxt == cur) return cur;
    cur = nxt;
  }
}

SphereModel generated_submodel(const SphereModel& m, WorldSet x) {
  WorldSet dom = reach(m, x);
  SphereModel out;
  std::vector<int> new_index(m.world_count(), -1);
  for (int w = 0; w < m.world_count(); ++w) {
    if (dom & (WorldSet(1) << w)) {
      new_index[w] = static_cast<int>(out.worlds.size());
      out.worlds.push_back(m.worlds[w]);
    }
  }
  auto remap = [&](WorldSet s) {
    WorldSet r = 0;
    for (int w = 0; w < m.world_count(); ++w)
      if ((s & (WorldSet(1) << w)) && new_index[w] >= 0)
        r |= WorldSet(1) << new_index[w];
    return r;
  };
  out.spheres.resize(out.worlds.size());
  for (int w = 0; w < m.world_count(); ++w) {
    if (new_index[w] < 0) continue;
    for (WorldSet s : m.spheres[w]) out.spheres[new_index[w]].push_back(remap(s));
  }
  for (const auto& [v, s] : m.valuation) out.valuation[v] = remap(s & dom);
  return out;
}

std::optional<LocalWitness> local_consequence(std::span<const SphereModel> models,
                                              const std::vector<Formula>& gamma,
                                              const Formula& phi) {
  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    const SphereModel& m = models[mi];
    WorldSet prem = m.all_worlds();
    for (const Formula& g : gamma) prem &= eval(m, g);
    WorldSet bad = prem & ~eval(m, phi) & m.all_worlds();
    if (bad != 0)
      return LocalWitness{static_cast<int>(mi), std::countr_zero(bad)};
  }
  return std::nullopt;
}

std::optional<int> global_consequence(std::span<const SphereModel> models,
                                      const std::vector<Formula>& gamma,
                                      const Formula& phi) {
  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    const SphereModel& m = models[mi];
    const WorldSet all = m.all_worlds();
    bool prem = true;
    for (const Formula& g : gamma)
      if (eval(m, g) != all) {
        prem = false;
        break;
      }
    if (prem && eval(m, phi) != all) return static_cast<int>(mi);
  }
  return std::nullopt;
}

std::vector<Formula> reduce_global_to_local(const std::vector<Formula>& gamma,
                                            int n0) {
  std::vector<Formula> out;
  for (const Formula& g : gamma)
    for (int n = 0; n <= n0; ++n) out.push_back(box_iterate(g, n));
  return out;
}

}  // namespace lewiskit
