#pragma once

#include "lkt/lparams.hpp"

#include <string>
#include <vector>

namespace lkt {

// One group of the test corpus.
struct GroupCase {
  std::string label;  // e.g. "A2 sc s"
  std::string spec;
  Isogeny isogeny;
  std::string inner;  // "c", "s", or "swap" for exchanging two equal factors
};

std::vector<GroupCase> corpus_groups();
// Groups with finitely many points in every fiber.
std::vector<GroupCase> finite_corpus_groups();
InnerClass inner_class_of(const GroupCase& g);
Isogeny parse_isogeny(const std::string& s);

// Fundamental weights in the root span: <omega_i, alpha_j^vee> = delta_ij.
std::vector<QVec> fundamental_weights(const RootDatum& d);
// Basis of the character-side vectors orthogonal to every coroot.
std::vector<QVec> central_directions(const RootDatum& d);
// sum c_i omega_i with c_i in {0, 1/2, 1, 3/2}, plus central coordinates in {0, 1/2, 1}.
std::vector<QVec> lambda_grid(const RootDatum& d);

// Standard-form parameters over the grid, one per conjugacy class.
std::vector<LParameter> corpus_parameters(const Context& ctx);

}  // namespace lkt
