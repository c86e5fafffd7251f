#include "lkt/lparams.hpp"

#include <algorithm>
#include <set>

namespace lkt {

namespace {

QVec character_action(const WeylGroup& W, int w, const QVec& v) { return to_rational(W.character_matrix(w)) * v; }

bool is_positive_root(const RootDatum& d, const QVec& v) {
  int r = d.find_root(to_integer(v));
  return r >= 0 && d.roots()[r].positive;
}

}  // namespace

Context::Context(const InnerClass& ic) : group_(ic), dual_(dual_inner_class(ic)) {
  const RootDatum& d = group_.datum();
  for (const auto& r : d.roots()) {
    int j = dual_.datum().find_root(r.coroot);
    if (j < 0) throw std::logic_error("coroot missing from the dual root system");
    to_dual_root_.push_back(j);
  }
  for (std::size_t w = 0; w < group_.weyl().size(); ++w) {
    int j = dual_.weyl().find(group_.weyl().character_matrix(static_cast<int>(w)));
    if (j < 0) throw std::logic_error("Weyl element missing from the dual Weyl group");
    to_dual_weyl_.push_back(j);
  }
  for (std::size_t k = 0; k < dual_.nfibers(); ++k) {
    int g = group_.fiber_of_tau(-dual_.fiber(static_cast<int>(k)).tau.transpose());
    if (g < 0) throw std::logic_error("dual involution has no group counterpart");
    to_group_fiber_.push_back(g);
  }
}

std::string str(const LParameter& p) { return "lambda=" + str(p.lambda) + " y=" + str(p.y); }

LParameter make_parameter(const Context& ctx, const QVec& lambda, const TitsElement& y) {
  if (lambda.size() != ctx.datum().rank()) throw NotAnLHom("lambda has the wrong length");
  if (!y.flag) throw NotAnLHom("y lies in the identity component");
  if (ctx.dual().fiber_of_weyl(y.w) < 0) throw NotAnLHom("y does not normalize the torus by an involution");
  LParameter p{lambda, ctx.dual().from_tits(y)};
  validate(ctx, p);
  return p;
}

void validate(const Context& ctx, const LParameter& p) {
  const IntMatrix& tc = dual_tau(ctx, p);
  if (!is_integral(sub(p.lambda, to_rational(tc) * p.lambda)))
    throw NotAnLHom("lambda - tau_check lambda is not integral");
  if (frac(ctx.dual().square(p.y)) != frac(p.lambda)) throw NotAnLHom("y^2 differs from e(lambda)");
}

std::vector<LParameter> parameters_with_lambda(const Context& ctx, const QVec& lambda) {
  std::vector<LParameter> out;
  for (std::size_t k = 0; k < ctx.dual().nfibers(); ++k) {
    const IntMatrix& tc = ctx.dual().fiber(static_cast<int>(k)).tau;
    if (!is_integral(sub(lambda, to_rational(tc) * lambda))) continue;
    for (const auto& y : ctx.dual().fiber_with_square(static_cast<int>(k), lambda)) {
      LParameter p{lambda, y};
      validate(ctx, p);
      out.push_back(p);
    }
  }
  return out;
}

const IntMatrix& dual_tau(const Context& ctx, const LParameter& p) { return ctx.dual().fiber(p.y.fiber).tau; }

int group_fiber(const Context& ctx, const LParameter& p) { return ctx.group_fiber(p.y.fiber); }

QVec split_part(const Context& ctx, const LParameter& p) {
  return scale(Rat(1, 2), add(p.lambda, to_rational(dual_tau(ctx, p)) * p.lambda));
}

QVec central_part(const RootDatum& d, const QVec& v) {
  const std::size_t r = d.semisimple_rank();
  if (r == 0) return v;
  QMatrix a = to_rational(d.cartan());  // a(i,j) = <alpha_i, alpha_j^vee>
  QVec pairings(r);
  for (std::size_t j = 0; j < r; ++j) pairings[j] = dot(v, to_rational(d.simple_coroots().row(j)));
  auto c = solve_rational(a.transpose(), pairings);
  QVec out = v;
  for (std::size_t i = 0; i < r; ++i) out = sub(out, scale((*c)[i], to_rational(d.simple_roots().row(i))));
  return out;
}

RootSubsystem centralizer_system(const Context& ctx, const LParameter& p) {
  const RootDatum& d = ctx.datum();
  QVec tl = to_rational(dual_tau(ctx, p)) * p.lambda;
  std::vector<bool> m(d.roots().size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    QVec c = to_rational(d.roots()[i].coroot);
    m[i] = dot(p.lambda, c) == 0 && dot(tl, c) == 0;
  }
  return subsystem(d, m);
}

int dual_grading(const Context& ctx, const LParameter& p, int root) {
  const RootDatum& d = ctx.datum();
  if (classify_root(d, ctx.group().fiber(group_fiber(ctx, p)).tau, root) != RootType::Real)
    throw WrongRootType("dual grading needs a group-real root");
  if (dot(p.lambda, to_rational(d.roots()[root].coroot)).get_den() != 1)
    throw std::invalid_argument("dual grading needs an integral root");
  return ctx.dual().grading(p.y, ctx.dual_root(root));
}

bool is_standard(const Context& ctx, const LParameter& p) {
  const RootDatum& d = ctx.datum();
  const IntMatrix& tau = ctx.group().fiber(group_fiber(ctx, p)).tau;
  for (int r : centralizer_system(ctx, p).positive)
    if (classify_root(d, tau, r) == RootType::Real && dual_grading(ctx, p, r) == Noncompact) return false;
  for (std::size_t r = 0; r < d.npos(); ++r) {
    if (classify_root(d, tau, static_cast<int>(r)) != RootType::Imaginary) continue;
    Rat v = dot(p.lambda, to_rational(d.roots()[r].coroot));
    if (v.get_den() == 1 && v < 0) return false;
  }
  return true;
}

const char* move_name(MoveKind k) {
  switch (k) {
    case MoveKind::Conjugate:
      return "conjugate";
    case MoveKind::Cross:
      return "cross";
    case MoveKind::Cayley:
      return "cayley";
    case MoveKind::CentralDeform:
      return "central-deform";
    case MoveKind::ComplementDeform:
      return "complement-deform";
    default:
      return "wall-deform";
  }
}

int next_cross_root(const Context& ctx, const LParameter& p) {
  const RootDatum& d = ctx.datum();
  const IntMatrix& tau = ctx.group().fiber(group_fiber(ctx, p)).tau;
  for (int r : centralizer_system(ctx, p).simple) {
    if (classify_root(d, tau, r) != RootType::Complex) continue;
    if (!is_positive_root(d, to_rational(act_on_character(tau, d.roots()[r].root)))) return r;
  }
  return -1;
}

int next_cayley_root(const Context& ctx, const LParameter& p) {
  const RootDatum& d = ctx.datum();
  const IntMatrix& tau = ctx.group().fiber(group_fiber(ctx, p)).tau;
  for (int r : centralizer_system(ctx, p).simple)
    if (classify_root(d, tau, r) == RootType::Real && dual_grading(ctx, p, r) == Noncompact) return r;
  return -1;
}

LParameter dual_cross(const Context& ctx, const LParameter& p, int w) {
  return {character_action(ctx.weyl(), w, p.lambda), ctx.dual().cross(ctx.dual_weyl(w), p.y)};
}

LParameter dual_cayley(const Context& ctx, const LParameter& p, int root) {
  if (dual_grading(ctx, p, root) != Noncompact) throw NotNoncompact("root is compact on the dual side");
  return {p.lambda, ctx.dual().cayley(ctx.dual_root(root), p.y)};
}

LParameter deform(const Context& ctx, const LParameter& p, const QVec& shift) {
  if (to_rational(dual_tau(ctx, p)) * shift != shift) throw std::invalid_argument("deformation must be tau_check-fixed");
  return {sub(p.lambda, shift), ctx.dual().make(p.y.fiber, sub(p.y.t, scale(Rat(1, 2), shift)))};
}

StandardForm standard_form(const Context& ctx, const LParameter& p) {
  validate(ctx, p);
  const RootDatum& d = ctx.datum();
  const WeylGroup& W = ctx.weyl();
  StandardForm out{p, {}};
  for (;;) {
    int neg = -1;
    for (std::size_t i = 0; i < d.semisimple_rank() && neg < 0; ++i)
      if (dot(out.param.lambda, to_rational(d.simple_coroots().row(i))) < 0) neg = static_cast<int>(i);
    if (neg < 0) break;
    Move m{MoveKind::Conjugate, neg, W.simple(neg), {}, group_fiber(ctx, out.param), 0};
    out.param = dual_cross(ctx, out.param, m.weyl);
    m.fiber_after = group_fiber(ctx, out.param);
    out.trail.push_back(m);
  }
  for (;;) {
    int r = next_cross_root(ctx, out.param);
    MoveKind kind = MoveKind::Cross;
    if (r < 0) {
      r = next_cayley_root(ctx, out.param);
      kind = MoveKind::Cayley;
    }
    if (r < 0) break;
    Move m{kind, r, W.reflection(r), {}, group_fiber(ctx, out.param), 0};
    out.param = kind == MoveKind::Cross ? dual_cross(ctx, out.param, m.weyl) : dual_cayley(ctx, out.param, r);
    m.fiber_after = group_fiber(ctx, out.param);
    out.trail.push_back(m);
  }
  return out;
}

QVec infinitesimal_character(const RootDatum& d, const QVec& lambda) {
  QVec v = lambda;
  for (;;) {
    bool moved = false;
    for (std::size_t i = 0; i < d.semisimple_rank(); ++i) {
      Rat c = dot(v, to_rational(d.simple_coroots().row(i)));
      if (c < 0) {
        v = sub(v, scale(c, to_rational(d.simple_roots().row(i))));
        moved = true;
      }
    }
    if (!moved) return v;
  }
}

bool is_tempiric(const Context& ctx, const LParameter& p) {
  return to_rational(dual_tau(ctx, p)) * p.lambda == neg(p.lambda);
}

bool vanishes_on_split_part(const Context& ctx, const LParameter& p) {
  const IntMatrix& tau = ctx.group().fiber(group_fiber(ctx, p)).tau;
  QMatrix k = rational_kernel(to_rational(IntMatrix::identity(tau.rows()) + tau));
  for (std::size_t j = 0; j < k.cols(); ++j)
    if (dot(p.lambda, k.col(j)) != 0) return false;
  return true;
}

LParameter tempiric_reduce(const Context& ctx, const LParameter& p) { return deform(ctx, p, split_part(ctx, p)); }

Subgroup final_characters(const Context& ctx, const LParameter& p) {
  const RootDatum& d = ctx.datum();
  const Kgb& g = ctx.group();
  const int k = group_fiber(ctx, p);
  std::vector<int> singular;
  for (int r : g.fiber(k).imaginary)
    if (dot(p.lambda, to_rational(d.roots()[r].coroot)) == 0) singular.push_back(r);
  std::vector<IVec> members;
  for (const auto& u : g.u_tau(k).elements()) {
    bool ok = true;
    for (int r : singular) ok = ok && alpha_bar(g, k, r, u) == 0;
    if (ok) members.push_back(u);
  }
  return make_subgroup(g.u_tau(k).factors(), members);
}

KgbElement e_phi(const Context& ctx, const LParameter& p, const IVec& u) {
  const int k = group_fiber(ctx, p);
  Subgroup f = final_characters(ctx, p);
  IVec r = ctx.group().u_tau(k).reduce(u);
  if (!std::binary_search(f.members.begin(), f.members.end(), r)) throw NotFinal("character is not final");
  return ctx.group().act(r, ctx.group().basepoint(k));
}

QVec kappa(const Context& ctx, const LParameter& p) {
  const IntMatrix& tc = dual_tau(ctx, p);
  QVec k = sub(p.lambda, to_rational(IntMatrix::identity(tc.rows()) + tc) * p.y.t);
  return reduce_kappa(ctx, group_fiber(ctx, p), k);
}

QVec reduce_kappa(const Context& ctx, int group_fiber, const QVec& kappa) {
  const RootDatum& d = ctx.datum();
  const std::size_t n = d.rank();
  QVec m = sub(kappa, d.rho());
  if (!is_integral(m)) throw std::invalid_argument("kappa is not in rho + X^*");
  const IntMatrix& tau = ctx.group().fiber(group_fiber).tau;
  SmithForm s = smith_normal_form(IntMatrix::identity(n) - tau.transpose());
  IVec c = s.l * to_integer(m);
  for (std::size_t i = 0; i < s.rank; ++i) {
    Int q = s.d(i, i);
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), c[i].get_mpz_t(), q.get_mpz_t());
    c[i] = r;
  }
  QVec back = *inverse(to_rational(s.l)) * to_rational(c);
  return add(d.rho(), back);
}

std::string parameter_key(const Context& ctx, const LParameter& p) {
  std::string best;
  for (std::size_t w = 0; w < ctx.weyl().size(); ++w) {
    LParameter q = dual_cross(ctx, p, static_cast<int>(w));
    std::string s = str(q.lambda) + "|" + std::to_string(q.y.fiber) + "|" + str(q.y.t);
    if (w == 0 || s < best) best = s;
  }
  return best;
}

}  // namespace lkt
