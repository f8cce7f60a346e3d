#include "lewiskit/model_space.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace lewiskit {

const std::vector<std::pair<char, ModelClass>>& extension_classes() {
  static const std::vector<std::pair<char, ModelClass>> table = {
      {'W', ModelClass::WeaklyCentered}, {'C', ModelClass::Centered},
      {'N', ModelClass::Normal},         {'T', ModelClass::TotallyReflexive},
      {'S', ModelClass::Stalnakerian},   {'U', ModelClass::Uniform},
      {'A', ModelClass::Absolute},
  };
  return table;
}

bool satisfies_extensions(const SphereModel& m, const std::set<char>& ext) {
  for (const auto& [letter, cls] : extension_classes())
    if (ext.count(letter) && !check_class(m, cls).holds) return false;
  return true;
}

const std::vector<std::vector<WorldSet>>& nested_families(int n_worlds,
                                                          int max_levels) {
  static std::map<std::pair<int, int>, std::vector<std::vector<WorldSet>>> cache;
  auto key = std::make_pair(n_worlds, max_levels);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<std::vector<WorldSet>> fams;
  const WorldSet top = n_worlds == 0 ? 0 : (WorldSet(~0u) >> (32 - n_worlds));
  std::vector<WorldSet> chain;
  auto extend = [&](auto&& self, WorldSet least_above) -> void {
    fams.push_back(chain);
    if (static_cast<int>(chain.size()) >= max_levels) return;
    for (WorldSet s = least_above; s <= top; ++s) {
      if (s == 0) continue;
      if (!chain.empty()) {
        WorldSet prev = chain.back();
        if ((prev & ~s) != 0 || prev == s) continue;  // must strictly extend
      }
      chain.push_back(s);
      self(self, s + 1);
      chain.pop_back();
    }
  };
  extend(extend, 1);
  std::stable_sort(fams.begin(), fams.end(),
                   [](const auto& a, const auto& b) {
                     if (a.size() != b.size()) return a.size() < b.size();
                     return a < b;
                   });
  return cache.emplace(key, std::move(fams)).first->second;
}

bool for_each_model(const EnumLimits& lim,
                    const std::function<bool(const SphereModel&)>& fn) {
  for (int n = 1; n <= lim.max_worlds; ++n) {
    const auto& fams = nested_families(n, lim.max_levels);
    const int nf = static_cast<int>(fams.size());
    const int nv = static_cast<int>(lim.var_names.size());
    const WorldSet top = WorldSet(~0u) >> (32 - n);

    SphereModel m;
    for (int i = 0; i < n; ++i) m.worlds.push_back("w" + std::to_string(i + 1));
    m.spheres.resize(n);

    std::vector<int> fam_idx(n, 0);
    for (;;) {
      for (int w = 0; w < n; ++w) m.spheres[w] = fams[fam_idx[w]];
      std::vector<WorldSet> vals(nv, 0);
      for (;;) {
        m.valuation.clear();
        for (int v = 0; v < nv; ++v) m.valuation[lim.var_names[v]] = vals[v];
        if (!fn(m)) return false;
        int v = nv - 1;
        while (v >= 0 && vals[v] == top) vals[v--] = 0;
        if (v < 0) break;
        ++vals[v];
      }
      int w = n - 1;
      while (w >= 0 && fam_idx[w] == nf - 1) fam_idx[w--] = 0;
      if (w < 0) break;
      ++fam_idx[w];
    }
  }
  return true;
}

namespace {

WorldSet random_subset(std::mt19937_64& rng, WorldSet top, bool allow_empty) {
  std::uniform_int_distribution<WorldSet> d(allow_empty ? 0 : 1, top);
  return d(rng);
}

// A random nested family over `top`, at most max_levels spheres.
std::vector<WorldSet> random_family(std::mt19937_64& rng, WorldSet top,
                                    int max_levels) {
  std::uniform_int_distribution<int> nd(0, max_levels);
  int n = nd(rng);
  std::vector<WorldSet> fam;
  WorldSet cur = 0;
  for (int i = 0; i < n; ++i) {
    WorldSet grow = random_subset(rng, top, true);
    cur |= grow;
    if (cur == 0) continue;
    if (fam.empty() || fam.back() != cur) fam.push_back(cur);
  }
  return fam;
}

}  // namespace

SphereModel random_model(std::mt19937_64& rng, const std::set<char>& ext,
                         int max_worlds, int max_levels,
                         const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> wd(1, max_worlds);
  const int n = wd(rng);
  const WorldSet top = WorldSet(~0u) >> (32 - n);

  SphereModel m;
  for (int i = 0; i < n; ++i) m.worlds.push_back("w" + std::to_string(i + 1));
  m.spheres.resize(n);

  const bool stal = ext.count('S') != 0;
  for (int w = 0; w < n; ++w) {
    if (stal) {
      // Grow spheres one world at a time: every subset that meets the union
      // is then met by some sphere in exactly one world.
      WorldSet pool = random_subset(rng, top, true);
      std::vector<int> order;
      for (int i = 0; i < n; ++i)
        if (pool & (WorldSet(1) << i)) order.push_back(i);
      std::shuffle(order.begin(), order.end(), rng);
      WorldSet cur = 0;
      for (int i : order) {
        cur |= WorldSet(1) << i;
        m.spheres[w].push_back(cur);
      }
    } else {
      m.spheres[w] = random_family(rng, top, max_levels);
    }
  }

  // Patch families to the requested classes; each patch preserves nesting
  // and everything established before it.
  if (ext.count('U') && !ext.count('A')) {
    WorldSet u = 0;
    for (int w = 0; w < n; ++w) u |= m.sphere_union(w);
    for (int w = 0; w < n; ++w) {
      if (u == 0) {
        m.spheres[w].clear();
      } else if (m.sphere_union(w) != u) {
        m.spheres[w].push_back(u);  // u contains every sphere: nesting kept
      }
    }
  }
  if (ext.count('A'))
    for (int w = 1; w < n; ++w) m.spheres[w] = m.spheres[0];
  if (ext.count('C') || ext.count('W')) {
    for (int w = 0; w < n; ++w) {
      const WorldSet bit = WorldSet(1) << w;
      for (WorldSet& s : m.spheres[w]) s |= bit;
      if (ext.count('C')) {
        if (m.spheres[w].empty() || m.spheres[w].front() != bit)
          m.spheres[w].insert(m.spheres[w].begin(), bit);
      } else if (m.spheres[w].empty()) {
        m.spheres[w].push_back(bit);
      }
    }
  }
  if (ext.count('N') || ext.count('T')) {
    for (int w = 0; w < n; ++w) {
      const WorldSet bit = WorldSet(1) << w;
      if (m.spheres[w].empty()) {
        m.spheres[w].push_back(ext.count('T') ? bit : random_subset(rng, top, false));
      }
      if (ext.count('T') && !(m.sphere_union(w) & bit)) {
        m.spheres[w].back() |= bit;
      }
    }
  }

  auto err = normalize_model(m);
  (void)err;  // construction preserves nesting
  for (const auto& v : vars) m.valuation[v] = random_subset(rng, top, true);
  return m;
}

Formula random_formula(std::mt19937_64& rng,
                       const std::vector<std::string>& vars, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 8 : 2);
  switch (pick(rng)) {
    case 0: return falsum();
    case 1: return verum();
    case 2: {
      std::uniform_int_distribution<std::size_t> vi(0, vars.size() - 1);
      return var(vars[vi(rng)]);
    }
    case 3: return neg(random_formula(rng, vars, depth - 1));
    case 4: return box(random_formula(rng, vars, depth - 1));
    case 5:
      return conj(random_formula(rng, vars, depth - 1),
                  random_formula(rng, vars, depth - 1));
    case 6:
      return disj(random_formula(rng, vars, depth - 1),
                  random_formula(rng, vars, depth - 1));
    case 7:
      return imp(random_formula(rng, vars, depth - 1),
                 random_formula(rng, vars, depth - 1));
    default:
      return cf(random_formula(rng, vars, depth - 1),
                random_formula(rng, vars, depth - 1));
  }
}

CountermodelResult countermodel_search(const std::vector<Formula>& gamma,
                                       const Formula& phi, Strength strength,
                                       const std::set<char>& ext,
                                       int max_worlds, int max_levels,
                                       std::uint64_t seed,
                                       int samples_per_size) {
  std::vector<std::string> vars;
  {
    std::set<std::string> vs;
    for (const auto& g : gamma)
      for (const auto& v : variables(g)) vs.insert(v);
    for (const auto& v : variables(phi)) vs.insert(v);
    vars.assign(vs.begin(), vs.end());
  }

  CountermodelResult res;
  auto test = [&](const SphereModel& m) -> bool {  // true == countermodel
    if (!satisfies_extensions(m, ext)) return false;
    const SphereModel ms[] = {m};
    if (strength == Strength::Local) {
      auto w = local_consequence(ms, gamma, phi);
      if (w) {
        res.found = true;
        res.model = m;
        res.world = w->world;
        return true;
      }
      return false;
    }
    auto w = global_consequence(ms, gamma, phi);
    if (w) {
      res.found = true;
      res.model = m;
      return true;
    }
    return false;
  };

  constexpr int kExhaustiveBound = 3;
  EnumLimits lim;
  lim.max_worlds = std::min(max_worlds, kExhaustiveBound);
  lim.max_levels = max_levels;
  lim.var_names = vars;
  if (!for_each_model(lim, [&](const SphereModel& m) { return !test(m); }))
    return res;

  if (max_worlds > kExhaustiveBound) {
    res.exhaustive = false;
    std::mt19937_64 rng(seed);
    for (int n = kExhaustiveBound + 1; n <= max_worlds; ++n) {
      for (int i = 0; i < samples_per_size; ++i) {
        SphereModel m = random_model(rng, ext, n, max_levels, vars);
        if (test(m)) return res;
      }
    }
  }
  return res;
}

}  // namespace lewiskit
