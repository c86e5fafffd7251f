#include "lkt/lkt.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lkt {

namespace {

void sort_unique(std::vector<KgbElement>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool has_singular_compact(const Context& ctx, const QVec& lambda, const KgbElement& x) {
  for (int r : ctx.group().simple_imaginary(x.fiber))
    if (dot(lambda, to_rational(ctx.datum().roots()[r].coroot)) == 0 && !ctx.group().is_noncompact(x, r)) return true;
  return false;
}

// Simple complex root whose image under the fiber involution is negative.
int simple_descent(const Context& ctx, const LParameter& p) {
  const RootDatum& d = ctx.datum();
  const IntMatrix& tau = ctx.group().fiber(group_fiber(ctx, p)).tau;
  for (std::size_t i = 0; i < d.semisimple_rank(); ++i) {
    int r = d.find_root(d.simple_roots().row(i));
    if (classify_root(d, tau, r) != RootType::Complex) continue;
    if (!d.roots()[d.find_root(act_on_character(tau, d.roots()[r].root))].positive) return r;
  }
  return -1;
}

// Simple real root in the centralizer system on which the dual grading is noncompact.
int simple_cayley(const Context& ctx, const LParameter& p) {
  const RootDatum& d = ctx.datum();
  const IntMatrix& tau = ctx.group().fiber(group_fiber(ctx, p)).tau;
  const auto sys = centralizer_system(ctx, p);
  for (std::size_t i = 0; i < d.semisimple_rank(); ++i) {
    int r = d.find_root(d.simple_roots().row(i));
    if (std::find(sys.roots.begin(), sys.roots.end(), r) == sys.roots.end()) continue;
    if (classify_root(d, tau, r) == RootType::Real && dual_grading(ctx, p, r) == Noncompact) return r;
  }
  return -1;
}

// Crosses and Cayley transforms until the dual parameter is standard, moving xs alongside.
// Simple roots go first, so that basepoints are carried to basepoints.
void standardize(const Context& ctx, LParameter& p, std::vector<KgbElement>& xs, std::vector<Move>& trail) {
  const WeylGroup& W = ctx.weyl();
  for (;;) {
    int r = simple_descent(ctx, p);
    bool cayley = false;
    if (r < 0) {
      r = simple_cayley(ctx, p);
      cayley = r >= 0;
    }
    if (r < 0) r = next_cross_root(ctx, p);
    if (r < 0) {
      r = next_cayley_root(ctx, p);
      cayley = true;
    }
    if (r < 0) return;
    if (!cayley) {
      Move m{MoveKind::Cross, r, W.reflection(r), {}, group_fiber(ctx, p), 0};
      p = dual_cross(ctx, p, m.weyl);
      for (auto& x : xs) x = ctx.group().cross(m.weyl, x);
      m.fiber_after = group_fiber(ctx, p);
      trail.push_back(m);
      continue;
    }
    Move m{MoveKind::Cayley, r, W.reflection(r), {}, group_fiber(ctx, p), 0};
    p = dual_cayley(ctx, p, r);
    std::vector<KgbElement> next;
    for (const auto& x : xs) {
      auto pre = ctx.group().inverse_cayley(r, x);
      if (pre.empty()) throw EmptyPreimage("inverse Cayley transform has no preimage");
      // Terms with a singular compact simple imaginary root are zero.
      for (const auto& c : pre)
        if (!has_singular_compact(ctx, p.lambda, c)) next.push_back(c);
    }
    sort_unique(next);
    xs = next;
    m.fiber_after = group_fiber(ctx, p);
    trail.push_back(m);
  }
}

}  // namespace

LktRun lkt_algorithm(const Context& ctx, const LParameter& p, const IVec& u, WallOrder order) {
  if (!is_standard(ctx, p)) throw std::invalid_argument("parameter is not in standard form");
  LktRun run;
  run.start = p;
  LParameter cur = p;
  std::vector<KgbElement> xs{e_phi(ctx, p, u)};
  QVec central = central_part(ctx.datum(), split_part(ctx, cur));
  if (!is_zero(central)) {
    int k = group_fiber(ctx, cur);
    cur = deform(ctx, cur, central);
    run.trail.push_back({MoveKind::CentralDeform, -1, 0, central, k, k});
  }
  const std::size_t first = run.trail.size();
  std::size_t most_simple = 0;
  const std::size_t limit = 4 * (ctx.datum().rank() + 2 * ctx.weyl().size()) + 8;
  while (!is_tempiric(ctx, cur)) {
    if (run.trail.size() > limit) throw NonTermination("reduction exceeded its step limit");
    const int k = group_fiber(ctx, cur);
    RestrictedSystem rs = restricted_system(ctx.datum(), ctx.group().fiber(k).tau);
    most_simple = std::max(most_simple, rs.simple.size());
    QVec nu = split_part(ctx, cur);
    // The part of nu orthogonal to every restricted coroot moves no real root; remove it first.
    QVec complement = nu;
    for (std::size_t j = 0; j < rs.simple.size(); ++j)
      complement = sub(complement, scale(dot(nu, rs.coroots[rs.simple[j]]), rs.fundamental[j]));
    if (!is_zero(complement)) {
      cur = deform(ctx, cur, complement);
      run.trail.push_back({MoveKind::ComplementDeform, -1, 0, complement, k, k});
      standardize(ctx, cur, xs, run.trail);
      continue;
    }
    int pick = -1;
    for (std::size_t j = 0; j < rs.simple.size(); ++j) {
      std::size_t idx = order == WallOrder::Least ? j : rs.simple.size() - 1 - j;
      if (dot(nu, rs.coroots[rs.simple[idx]]) != 0) {
        pick = static_cast<int>(idx);
        break;
      }
    }
    if (pick < 0) throw std::logic_error("split part is nonzero but orthogonal to every restricted coroot");
    QVec shift = scale(dot(nu, rs.coroots[rs.simple[pick]]), rs.fundamental[pick]);
    cur = deform(ctx, cur, shift);
    run.trail.push_back({MoveKind::WallDeform, pick, 0, shift, k, k});
    standardize(ctx, cur, xs, run.trail);
  }
  run.final_param = cur;
  run.outputs = xs;
  sort_unique(run.outputs);
  run.loop_steps = run.trail.size() - first;
  run.step_bound = most_simple + 2 * ctx.weyl().size();
  for (const auto& x : run.outputs)
    if (x.fiber != group_fiber(ctx, cur)) throw TrailMismatch("group points left the fiber of the dual parameter");
  return run;
}

IVec pull_back(const Context& ctx, const std::vector<Move>& trail, const IVec& u) {
  const Kgb& g = ctx.group();
  IVec cur = u;
  for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
    switch (it->kind) {
      case MoveKind::CentralDeform:
      case MoveKind::ComplementDeform:
      case MoveKind::WallDeform:
        break;
      case MoveKind::Conjugate:
      case MoveKind::Cross: {
        int back = ctx.weyl().inverse(it->weyl);
        if (cross_fiber(g, it->fiber_after, back) != it->fiber_before) throw TrailMismatch("cross step fibers disagree");
        cur = cross_char_map(g, it->fiber_after, back, cur);
        break;
      }
      case MoveKind::Cayley: {
        if (cayley_fiber(g, it->fiber_after, it->root) != it->fiber_before)
          throw TrailMismatch("Cayley step fibers disagree");
        if (alpha_bar(g, it->fiber_after, it->root, cur) != 0)
          throw TrailMismatch("class leaves V_{tau,alpha} along the trail");
        cur = cayley_char_map(g, it->fiber_after, it->root, cur);
        break;
      }
    }
  }
  return cur;
}

ResMap res_map(const Context& ctx, const LktRun& run) {
  ResMap out{final_characters(ctx, run.final_param), final_characters(ctx, run.start), {}};
  out.hom.source = out.source.group.factors();
  out.hom.target = out.target.group.factors();
  out.hom.m = IntMatrix(out.target.group.ngens(), out.source.group.ngens());
  for (std::size_t j = 0; j < out.source.group.ngens(); ++j) {
    IVec image = pull_back(ctx, run.trail, out.source.embed.col(j));
    auto c = out.target.coords_of(image);
    if (!c) throw TrailMismatch("pulled-back class is not final at the start");
    for (std::size_t i = 0; i < c->size(); ++i) out.hom.m(i, j) = (*c)[i];
  }
  return out;
}

GroupHom iota(const ResMap& res) { return res.hom.dual(); }

RealFormLabel real_form_label(const Kgb& kgb, const KgbElement& x) {
  return {frac(kgb.square(x)), kgb.component_label(x)};
}

bool largeness_check(const Kgb& kgb, const KgbElement& x) {
  for (int r : kgb.simple_imaginary(x.fiber))
    if (!kgb.is_noncompact(x, r)) return false;
  return true;
}

LktResult lowest_k_types(const Context& ctx, const LParameter& p, const IVec& chi, WallOrder order) {
  Subgroup f = final_characters(ctx, p);
  IVec u = f.parent_element(chi);
  LktResult res{p, chi, {}, {}, lkt_algorithm(ctx, p, u, order)};
  const LktRun& run = res.run;
  res.tempiric = run.final_param;
  if (parameter_key(ctx, run.final_param) != parameter_key(ctx, standard_form(ctx, tempiric_reduce(ctx, p)).param))
    throw CrossCheckFailure("end of the trail is not conjugate to the tempiric reduction");
  ResMap rm = res_map(ctx, run);
  const int k = group_fiber(ctx, run.final_param);
  std::vector<KgbElement> from_res;
  QVec kap = kappa(ctx, run.final_param);
  for (const auto& v : rm.source.members) {
    if (pull_back(ctx, run.trail, v) != u) continue;
    KgbElement x = ctx.group().act(v, ctx.group().basepoint(k));
    from_res.push_back(x);
    LktEntry e;
    e.chi = v;
    e.param = {x, run.final_param.lambda, kap, run.final_param};
    e.label = real_form_label(ctx.group(), x);
    e.large = largeness_check(ctx.group(), x);
    res.entries.push_back(e);
  }
  std::sort(from_res.begin(), from_res.end());
  if (from_res != run.outputs) throw CrossCheckFailure("Res fiber and lockstep outputs differ");
  std::sort(res.entries.begin(), res.entries.end(),
            [](const LktEntry& a, const LktEntry& b) { return a.param.x < b.param.x; });
  return res;
}

TempiricPacket tempiric_packet(const Context& ctx, const LParameter& p) {
  if (!is_tempiric(ctx, p)) throw NotTempiric("parameter is not tempiric");
  TempiricPacket out;
  out.param = standard_form(ctx, p).param;
  out.characters = final_characters(ctx, out.param);
  QVec kap = kappa(ctx, out.param);
  for (const auto& c : out.characters.group.elements()) {
    IVec u = out.characters.parent_element(c);
    KgbElement x = e_phi(ctx, out.param, u);
    out.entries.push_back({c, {x, out.param.lambda, kap, out.param}, real_form_label(ctx.group(), x)});
  }
  return out;
}

}  // namespace lkt
