#pragma once

#include <stdexcept>
#include <string>

#include "lewiskit/algebra.hpp"
#include "lewiskit/duality.hpp"
#include "lewiskit/proof.hpp"
#include "lewiskit/sphere.hpp"

namespace lewiskit {

// Raised on malformed input: bad JSON, missing keys, out-of-range entries,
// unknown world names, non-nested sphere families, and the like.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sphere models:
// {"format":1, "worlds":["w1",...],
//  "spheres":{"w1":[["w1"],["w1","w2"]],...},
//  "valuation":{"p":["w1"],...}}
// Worlds missing from "spheres" get an empty family; empty spheres are
// dropped; families must be nested after normalization.
SphereModel model_from_json(const std::string& text);
std::string model_to_json(const SphereModel& m, int indent = 2);
SphereModel load_model(const std::string& path);
void save_model(const SphereModel& m, const std::string& path);

// Sphere structures reuse the model layout without the valuation.
SphereStructure structure_from_json(const std::string& text);
std::string structure_to_json(const SphereStructure& s, int indent = 2);
SphereStructure load_structure(const std::string& path);
void save_structure(const SphereStructure& s, const std::string& path);

// Algebras: {"format":1, "atoms":k, "cf":[[...2^k ints...] x 2^k]}.
// Row index = antecedent element, column = consequent, both as atom
// bitmasks; entries must lie in [0, 2^k).
VAlgebra algebra_from_json(const std::string& text);
std::string algebra_to_json(const VAlgebra& a, int indent = 2);
VAlgebra load_algebra(const std::string& path);
void save_algebra(const VAlgebra& a, const std::string& path);

// Alpha-models: {"format":1, "points":["x1",...],
//  "f":{"A,i":"B", ...}} with A, B subset bitmasks over the points and i a
// point index; the table must be dense. Rejected above 8 points.
AlphaModel alpha_from_json(const std::string& text);
std::string alpha_to_json(const AlphaModel& s, int indent = 2);
AlphaModel load_alpha(const std::string& path);
void save_alpha(const AlphaModel& s, const std::string& path);

// Proof scripts: {"format":1, "premises":["p -> q",...],
//  "lines":[{"f":"...", "by":{...}}, ...]} where "by" is one of
//  {"premise":true} | {"axiom":"L4","sub":{"p":"..."}} (sub optional)
//  | {"mp":[i,j]} | {"c":i} | {"dwc":[n,i]}, line references 1-based.
Proof proof_from_json(const std::string& text);
std::string proof_to_json(const Proof& p, int indent = 2);
Proof load_proof(const std::string& path);
void save_proof(const Proof& p, const std::string& path);

}  // namespace lewiskit
