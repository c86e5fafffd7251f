#include "lkt/atlasparams.hpp"

namespace lkt {

namespace {

const IntMatrix& tau_of(const Context& ctx, const AtlasParameter& p) { return ctx.group().fiber(p.x.fiber).tau; }

QVec split_of(const Context& ctx, const AtlasParameter& p) {
  const IntMatrix& tau = tau_of(ctx, p);
  return scale(Rat(1, 2), sub(p.lambda, act_on_character(tau, p.lambda)));
}

}  // namespace

std::string str(const AtlasParameter& p) {
  return "x=" + str(p.x) + " lambda=" + str(p.lambda) + " kappa=" + str(p.kappa);
}

AtlasParameter atlas_parameter(const Context& ctx, const LParameter& p, const IVec& u) {
  return {e_phi(ctx, p, u), p.lambda, kappa(ctx, p), p};
}

DominanceReport check_dominance(const Context& ctx, const AtlasParameter& p) {
  const RootDatum& d = ctx.datum();
  DominanceReport rep;
  for (int r : ctx.group().fiber(p.x.fiber).imaginary)
    if (dot(p.lambda, to_rational(d.roots()[r].coroot)) < 0) rep.negative_imaginary.push_back(r);
  for (int r : ctx.group().simple_imaginary(p.x.fiber))
    if (dot(p.lambda, to_rational(d.roots()[r].coroot)) == 0 && !ctx.group().is_noncompact(p.x, r))
      rep.singular_compact.push_back(r);
  return rep;
}

bool parity_fails(const Context& ctx, const AtlasParameter& p, int root) {
  if (!p.dual) throw NoDualTrack("parity needs the dual parameter");
  if (ctx.group().root_type(p.x.fiber, root) != RootType::Real) throw WrongRootType("parity needs a real root");
  if (dot(p.lambda, to_rational(ctx.datum().roots()[root].coroot)) != 0)
    throw std::invalid_argument("parity needs a singular root");
  return dual_grading(ctx, *p.dual, root) == Noncompact;
}

bool is_final(const Context& ctx, const AtlasParameter& p) {
  if (!check_dominance(ctx, p).holds()) return false;
  const RootDatum& d = ctx.datum();
  for (int r : ctx.group().fiber(p.x.fiber).real)
    if (dot(p.lambda, to_rational(d.roots()[r].coroot)) == 0 && parity_fails(ctx, p, r)) return false;
  return true;
}

QVec real_rho(const Context& ctx, int group_fiber) {
  const RootDatum& d = ctx.datum();
  QVec s = zeros(d.rank());
  for (int r : ctx.group().fiber(group_fiber).real) s = add(s, to_rational(d.roots()[r].root));
  return scale(Rat(1, 2), s);
}

QVec twist_shift(const Context& ctx, int group_fiber, int w) {
  int target = cross_fiber(ctx.group(), group_fiber, w);
  QVec moved = to_rational(ctx.weyl().character_matrix(w)) * real_rho(ctx, group_fiber);
  return sub(moved, real_rho(ctx, target));
}

bool twist_admissible(const Context& ctx, int group_fiber, int w) {
  const RootDatum& d = ctx.datum();
  for (int r : ctx.group().fiber(group_fiber).imaginary)
    if (!d.roots()[ctx.weyl().act_on_root(w, r)].positive) return false;
  return true;
}

AtlasParameter weyl_twist(const Context& ctx, const AtlasParameter& p, int w) {
  if (w < 0 || static_cast<std::size_t>(w) >= ctx.weyl().size()) throw BadWeylElement("Weyl element out of range");
  if (!twist_admissible(ctx, p.x.fiber, w)) throw BadWeylElement("w does not preserve the positive imaginary roots");
  AtlasParameter q;
  q.x = ctx.group().cross(w, p.x);
  IntMatrix cm = ctx.weyl().character_matrix(w);
  q.lambda = to_rational(cm) * p.lambda;
  q.kappa = reduce_kappa(ctx, q.x.fiber, add(to_rational(cm) * p.kappa, twist_shift(ctx, p.x.fiber, w)));
  if (p.dual) q.dual = dual_cross(ctx, *p.dual, w);
  return q;
}

AtlasParameter deform_to_wall(const Context& ctx, const AtlasParameter& p, std::size_t simple) {
  RestrictedSystem rs = restricted_system(ctx.datum(), tau_of(ctx, p));
  if (simple >= rs.simple.size()) throw std::out_of_range("no such restricted simple root");
  QVec nu = split_of(ctx, p);
  Rat c = dot(nu, rs.coroots[rs.simple[simple]]);
  if (c == 0) throw AlreadyOnWall("parameter already lies on this wall");
  QVec shift = scale(c, rs.fundamental[simple]);
  AtlasParameter q = p;
  q.lambda = sub(p.lambda, shift);
  if (p.dual) q.dual = deform(ctx, *p.dual, shift);
  return q;
}

AtlasParameter deform_central(const Context& ctx, const AtlasParameter& p) {
  QVec shift = central_part(ctx.datum(), split_of(ctx, p));
  AtlasParameter q = p;
  q.lambda = sub(p.lambda, shift);
  if (p.dual) q.dual = deform(ctx, *p.dual, shift);
  return q;
}

std::string atlas_key(const Context& ctx, const AtlasParameter& p) {
  std::string best;
  bool first = true;
  for (std::size_t w = 0; w < ctx.weyl().size(); ++w) {
    if (!twist_admissible(ctx, p.x.fiber, static_cast<int>(w))) continue;
    AtlasParameter q = p;
    q.dual.reset();
    q = weyl_twist(ctx, q, static_cast<int>(w));
    std::string s = str(q);
    if (first || s < best) best = s;
    first = false;
  }
  return best;
}

}  // namespace lkt
