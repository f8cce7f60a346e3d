#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lewiskit/formula.hpp"

namespace lewiskit {

// Worlds are indexed by their position in SphereModel::worlds; sets of
// worlds are bitmasks over those indices (so models are capped at 32
// worlds, far above every bound used here).
using WorldSet = std::uint32_t;

// A finite sphere model: per-world nested families of spheres plus a
// valuation. Families are kept normalized: no empty spheres, strictly
// increasing under inclusion.
struct SphereModel {
  std::vector<std::string> worlds;
  std::vector<std::vector<WorldSet>> spheres;  // spheres[w] ascending by inclusion
  std::map<std::string, WorldSet> valuation;   // absent variable == empty set

  int world_count() const { return static_cast<int>(worlds.size()); }
  WorldSet all_worlds() const {
    return world_count() == 0 ? 0 : (WorldSet(~0u) >> (32 - world_count()));
  }
  int world_index(const std::string& name) const;  // -1 if unknown
  WorldSet sphere_union(int w) const;              // ∪S(w)
};

// Normalizes sphere families in place (drops empty spheres, sorts,
// deduplicates) and checks nestedness. On a nestedness violation returns a
// message naming the offending pair of spheres.
std::optional<std::string> normalize_model(SphereModel& m);

// v(f) as a world set. Linear in dag_size(f) times the sphere count.
WorldSet eval(const SphereModel& m, const Formula& f);

enum class ModelClass {
  Normal,
  TotallyReflexive,
  WeaklyCentered,
  Centered,
  Stalnakerian,
  Uniform,
  Absolute,
  WeaklyTrivial,
  Trivial,
};

const std::vector<std::pair<ModelClass, std::string>>& model_class_names();
std::optional<ModelClass> model_class_from_name(const std::string& name);
std::string to_string(ModelClass c);

struct ClassCheck {
  bool holds = false;
  std::string witness;  // failing world (and subset, for Stalnakerian)
};
ClassCheck check_class(const SphereModel& m, ModelClass c);

// Accessibility w R u iff u ∈ ∪S(w), as index pairs in world order.
std::vector<std::pair<int, int>> accessibility(const SphereModel& m);

// Image of X under the reflexive-transitive closure of R.
WorldSet reach(const SphereModel& m, WorldSet x);

// Submodel generated by X: domain reach(m, X), spheres untouched on the
// retained worlds, valuation restricted.
SphereModel generated_submodel(const SphereModel& m, WorldSet x);

enum class Strength { Global, Local };

struct LocalWitness {
  int model;
  int world;
};

// Local consequence over a list of models: at every world of every model
// where all of gamma hold, phi holds. Returns the least countermodel in
// (model, world) order, or nullopt if the consequence is valid.
std::optional<LocalWitness> local_consequence(std::span<const SphereModel> models,
                                              const std::vector<Formula>& gamma,
                                              const Formula& phi);

// Global consequence: every model of the list that globally satisfies all
// of gamma globally satisfies phi. Returns the least countermodel index.
std::optional<int> global_consequence(std::span<const SphereModel> models,
                                      const std::vector<Formula>& gamma,
                                      const Formula& phi);

// {box^n g : g in gamma, 0 <= n <= n0}, ordered by premise then n.
std::vector<Formula> reduce_global_to_local(const std::vector<Formula>& gamma,
                                            int n0);

}  // namespace lewiskit
