#pragma once

#include <functional>
#include <random>
#include <set>

#include "lewiskit/sphere.hpp"

namespace lewiskit {

// Extension letters (subsets of {W,C,N,T,S,U,A}) select the corresponding
// model classes; a model "matches" a letter set if it lies in every class.
const std::vector<std::pair<char, ModelClass>>& extension_classes();
bool satisfies_extensions(const SphereModel& m, const std::set<char>& ext);

// All nested families over n worlds with at most max_levels spheres, in a
// fixed canonical order (by length, then lexicographically on the chain).
const std::vector<std::vector<WorldSet>>& nested_families(int n_worlds,
                                                          int max_levels);

// Enumerates models in (world count, sphere-family code, valuation code)
// order: world counts 1..max_worlds, per-world family indices in canonical
// order (last world fastest), then valuations over var_names (last variable
// fastest). The callback returns false to stop; for_each_model returns
// false iff it was stopped early.
struct EnumLimits {
  int max_worlds = 3;
  int max_levels = 2;
  std::vector<std::string> var_names;
};
bool for_each_model(const EnumLimits& lim,
                    const std::function<bool(const SphereModel&)>& fn);

// Random model guaranteed to satisfy the given extension letters (sphere
// families are constructed to the class, not rejection-sampled).
SphereModel random_model(std::mt19937_64& rng, const std::set<char>& ext,
                         int max_worlds, int max_levels,
                         const std::vector<std::string>& vars);

// Random formula over the given variables with bounded connective depth.
Formula random_formula(std::mt19937_64& rng,
                       const std::vector<std::string>& vars, int depth);

// Bounded countermodel search for Gamma |- phi over the class selected by
// ext. Exhaustive for world counts up to min(max_worlds, exhaustive bound 3);
// beyond that, seeded random sampling (samples_per_size draws per size).
struct CountermodelResult {
  bool found = false;
  SphereModel model;
  int world = -1;   // meaningful for Strength::Local
  bool exhaustive = true;  // search space fully enumerated up to max_worlds
};
CountermodelResult countermodel_search(const std::vector<Formula>& gamma,
                                       const Formula& phi, Strength strength,
                                       const std::set<char>& ext,
                                       int max_worlds, int max_levels = 2,
                                       std::uint64_t seed = 0,
                                       int samples_per_size = 20000);

}  // namespace lewiskit
