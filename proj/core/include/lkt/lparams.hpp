#pragma once

#include "lkt/chartorus.hpp"

#include <stdexcept>
#include <vector>

namespace lkt {

struct NotAnLHom : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotFinal : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotTempiric : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Both KGB structures of an inner class: the group side and the dual side.
// Dual root r carries the coroot of group root r, so root indices agree.
class Context {
 public:
  explicit Context(const InnerClass& ic);
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  const Kgb& group() const { return group_; }
  const Kgb& dual() const { return dual_; }
  const RootDatum& datum() const { return group_.datum(); }
  const WeylGroup& weyl() const { return group_.weyl(); }
  int dual_root(int root) const { return to_dual_root_[root]; }
  // Dual Weyl element acting on X^*(H) as w does.
  int dual_weyl(int w) const { return to_dual_weyl_[w]; }
  // Group fiber whose involution is -tau_check^T.
  int group_fiber(int dual_fiber) const { return to_group_fiber_[dual_fiber]; }

 private:
  Kgb group_, dual_;
  std::vector<int> to_dual_root_, to_dual_weyl_, to_group_fiber_;
};

// lambda in X^*(H) (x) Q; y a dual strong involution with y^2 = e(lambda), up to dual torus conjugation.
struct LParameter {
  QVec lambda;
  KgbElement y;
  bool operator==(const LParameter& o) const = default;
  auto operator<=>(const LParameter& o) const = default;
};

std::string str(const LParameter& p);

// Builds a parameter from y = e(t) sigma_w delta given absolutely.
LParameter make_parameter(const Context& ctx, const QVec& lambda, const TitsElement& y);
void validate(const Context& ctx, const LParameter& p);
// All parameters with this lambda, over every dual fiber.
std::vector<LParameter> parameters_with_lambda(const Context& ctx, const QVec& lambda);

const IntMatrix& dual_tau(const Context& ctx, const LParameter& p);
int group_fiber(const Context& ctx, const LParameter& p);
// (1 + tau_check) lambda / 2: the part of lambda on the split torus.
QVec split_part(const Context& ctx, const LParameter& p);
// Component of a character-side vector orthogonal to every coroot.
QVec central_part(const RootDatum& d, const QVec& v);

// Roots orthogonal to lambda and tau_check lambda: the root system of the centralizer.
RootSubsystem centralizer_system(const Context& ctx, const LParameter& p);
// Grading of a group-real integral root, read on the dual side.
int dual_grading(const Context& ctx, const LParameter& p, int root);
bool is_standard(const Context& ctx, const LParameter& p);

enum class MoveKind { Conjugate, Cross, Cayley, CentralDeform, ComplementDeform, WallDeform };
const char* move_name(MoveKind k);

// One step of a reduction; fibers are group fibers before and after.
struct Move {
  MoveKind kind;
  int root = -1;  // root index, or restricted simple index for a wall deformation
  int weyl = 0;   // group Weyl element for conjugations and crosses
  QVec shift;     // lambda decreases by shift in a deformation
  int fiber_before = 0, fiber_after = 0;
};

// Least centralizer-simple complex root sent to a negative root by tau, or -1.
int next_cross_root(const Context& ctx, const LParameter& p);
// Least centralizer-simple real root that is noncompact on the dual side, or -1.
int next_cayley_root(const Context& ctx, const LParameter& p);

struct StandardForm {
  LParameter param;
  std::vector<Move> trail;
};
StandardForm standard_form(const Context& ctx, const LParameter& p);

// Conjugation by the Tits representative of w.
LParameter dual_cross(const Context& ctx, const LParameter& p, int w);
// y -> sigma_alpha y for a group-real, dual-noncompact, integral root.
LParameter dual_cayley(const Context& ctx, const LParameter& p, int root);
// lambda -> lambda - shift, y -> e(-shift/2) y, for tau_check-fixed shift.
LParameter deform(const Context& ctx, const LParameter& p, const QVec& shift);

QVec infinitesimal_character(const RootDatum& d, const QVec& lambda);

bool is_tempiric(const Context& ctx, const LParameter& p);
// lambda restricted to the split part of the group-side Lie algebra vanishes.
bool vanishes_on_split_part(const Context& ctx, const LParameter& p);
LParameter tempiric_reduce(const Context& ctx, const LParameter& p);

// Classes of U_tau on which every singular imaginary root is trivial.
Subgroup final_characters(const Context& ctx, const LParameter& p);
// u . x_b in the group fiber of p.
KgbElement e_phi(const Context& ctx, const LParameter& p, const IVec& u);

// kappa = lambda - (1 + tau_check) t_y, reduced mod (1 + tau_check) X^*.
QVec kappa(const Context& ctx, const LParameter& p);
QVec reduce_kappa(const Context& ctx, int group_fiber, const QVec& kappa);

// Minimum over the Weyl orbit; equal for conjugate parameters.
std::string parameter_key(const Context& ctx, const LParameter& p);

}  // namespace lkt
