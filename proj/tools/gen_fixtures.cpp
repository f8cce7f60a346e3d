// Regenerates the committed fixtures (models, algebras, alpha-models and
// proof scripts). Every proof script is replayed through the checker before
// being written; the tool fails loudly on any rejection.

#include <filesystem>
#include <iostream>

#include "lewiskit/duality.hpp"
#include "lewiskit/io.hpp"
#include "lewiskit/proof_build.hpp"

using namespace lewiskit;
namespace fs = std::filesystem;

namespace {

SphereModel two_world_model() {
  // Two worlds; w2's system contains {w2} and {w1,w2}, w1 only sees w2.
  SphereModel m;
  m.worlds = {"w1", "w2"};
  m.spheres = {{0b10u}, {0b10u, 0b11u}};
  m.valuation = {{"p", 0b01u}};
  return m;
}

SphereModel three_world_model() {
  SphereModel m;
  m.worlds = {"w1", "w2", "w3"};
  m.spheres = {{0b010u}, {0b010u, 0b011u}, {0b100u, 0b110u, 0b111u}};
  m.valuation = {{"p", 0b001u}, {"q", 0b110u}};
  return m;
}

// The three 4-element algebras over atoms {a, ~a}: element masks are
// 0 = bottom, 1 = a, 2 = ~a, 3 = top. Rows are antecedents.
VAlgebra algebra_a() {
  VAlgebra x;
  x.atoms = 2;
  x.cf = {{3, 3, 3, 3}, {0, 3, 0, 3}, {0, 0, 3, 3}, {0, 1, 2, 3}};
  return x;
}

VAlgebra algebra_b() {
  VAlgebra x = algebra_a();
  x.cf[3] = {0, 0, 0, 3};
  return x;
}

VAlgebra algebra_c() {
  VAlgebra x = algebra_a();
  x.cf[3] = {0, 3, 0, 3};
  return x;
}

void check_and_save(const Proof& p, const std::string& calculus,
                    const fs::path& path) {
  Calculus c = *Calculus::parse(calculus);
  CheckResult r = check_proof(c, p);
  if (!r.accepted) {
    std::cerr << path.string() << ": rejected under " << calculus
              << " at line " << r.line << ": " << r.reason << "\n";
    std::exit(1);
  }
  save_proof(p, path.string());
  std::cout << "wrote " << path.string() << " (" << p.lines.size()
            << " lines, " << calculus << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  fs::path root = argc > 1 ? argv[1] : "fixtures";
  fs::create_directories(root / "models");
  fs::create_directories(root / "algebras");
  fs::create_directories(root / "alpha");
  fs::create_directories(root / "proofs");

  save_model(two_world_model(), (root / "models" / "two_world.json").string());
  save_model(three_world_model(),
             (root / "models" / "three_world.json").string());
  save_algebra(algebra_a(), (root / "algebras" / "a.json").string());
  save_algebra(algebra_b(), (root / "algebras" / "b.json").string());
  save_algebra(algebra_c(), (root / "algebras" / "c.json").string());
  save_alpha(alpha_from_algebra(algebra_a()),
             (root / "alpha" / "a_dual.json").string());
  std::cout << "wrote models, algebras and the dual alpha-model\n";

  Formula p = var("p"), q = var("q"), r = var("r"), s = var("s");

  check_and_save(prove_l1_instance(p), "LV",
                 root / "proofs" / "l1_instance.json");
  check_and_save(prove_monotonicity(p, q, r), "LV",
                 root / "proofs" / "monotonicity.json");
  check_and_save(derive_dwc0(p), "LV", root / "proofs" / "dwc0.json");
  check_and_save(prove_dwc_n(0, {}, q, p), "GV",
                 root / "proofs" / "dwc0_from_premise.json");
  check_and_save(prove_dwc_n(1, {q}, r, p), "GV",
                 root / "proofs" / "dwc1_from_c_l4.json");
  check_and_save(prove_dwc_n(2, {q, r}, s, p), "GV",
                 root / "proofs" / "dwc2_from_c_l4.json");
  check_and_save(prove_dwc_n(3, {q, r, s}, var("t"), p), "GV",
                 root / "proofs" / "dwc3_from_c_l4.json");
  check_and_save(prove_c_from_dwc2(q, r, p), "GV",
                 root / "proofs" / "c_from_dwc2.json");
  check_and_save(prove_l4_from_dwc2(p, q, r), "LV",
                 root / "proofs" / "l4_from_dwc2.json");
  return 0;
}
