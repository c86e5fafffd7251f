#pragma once

#include "lkt/lparams.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace lkt {

struct NoDualTrack : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct BadWeylElement : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct AlreadyOnWall : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// (x, Lambda) with Lambda recorded by its differential and kappa in rho + X^*.
struct AtlasParameter {
  KgbElement x;
  QVec lambda;
  QVec kappa;
  std::optional<LParameter> dual;  // L-parameter tracked alongside, when known
  bool same_as(const AtlasParameter& o) const { return x == o.x && lambda == o.lambda && kappa == o.kappa; }
};

std::string str(const AtlasParameter& p);

// The atlas parameter attached to (p, u) for p in standard form and u final.
AtlasParameter atlas_parameter(const Context& ctx, const LParameter& p, const IVec& u);

struct DominanceReport {
  std::vector<int> negative_imaginary;  // positive imaginary roots pairing negatively with lambda
  std::vector<int> singular_compact;    // simple imaginary roots that are compact and singular
  bool holds() const { return negative_imaginary.empty() && singular_compact.empty(); }
};
DominanceReport check_dominance(const Context& ctx, const AtlasParameter& p);

// Singular real root whose dual image is noncompact; needs the dual track.
bool parity_fails(const Context& ctx, const AtlasParameter& p, int root);
// Dominance holds and every singular real root satisfies parity.
bool is_final(const Context& ctx, const AtlasParameter& p);

// Half sum of the positive real roots at a group fiber.
QVec real_rho(const Context& ctx, int group_fiber);
// Twist used when moving a parameter by w: w rho_r(tau) - rho_r(w tau w^-1).
QVec twist_shift(const Context& ctx, int group_fiber, int w);
// Weyl elements keeping the positive imaginary roots positive.
bool twist_admissible(const Context& ctx, int group_fiber, int w);
AtlasParameter weyl_twist(const Context& ctx, const AtlasParameter& p, int w);

// Deforms to the wall of the restricted simple root with index `simple` in restricted_system(...).simple.
AtlasParameter deform_to_wall(const Context& ctx, const AtlasParameter& p, std::size_t simple);
// Removes the central split part of lambda.
AtlasParameter deform_central(const Context& ctx, const AtlasParameter& p);

// Minimum over admissible Weyl twists; equal for parameters related by a twist.
std::string atlas_key(const Context& ctx, const AtlasParameter& p);

}  // namespace lkt
