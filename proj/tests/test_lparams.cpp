#include "lkt/corpus.hpp"
#include "lkt/lparams.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace lkt;

namespace {

Rat q(long a, long b = 1) {
  Rat r(a, b);
  r.canonicalize();
  return r;
}

// Rank-one worked example. Dual fiber 0 pairs with the split group Cartan and
// dual fiber 1 with the compact one.
struct SL2 {
  Context ctx{make_inner_class(build_datum("A1", Isogeny::SimplyConnected), "c")};
  LParameter spherical_ps{{q(1, 3)}, {0, {q(2, 3)}}};
  LParameter nonspherical_ps{{q(1, 3)}, {0, {q(1, 6)}}};
  LParameter case_a{{q(0)}, {0, {q(1, 2)}}};
  LParameter case_b{{q(0)}, {0, {q(0)}}};
  LParameter case_b_normalized{{q(0)}, {1, {q(0)}}};
  LParameter discrete_series{{q(1)}, {1, {q(0)}}};
};

// (rho, dual basepoint over the fundamental group fiber): y^2 = e(rho).
LParameter fundamental_parameter(const Context& ctx) {
  int fundamental = ctx.group().fiber_of_weyl(ctx.weyl().identity());
  for (std::size_t f = 0; f < ctx.dual().nfibers(); ++f)
    if (ctx.group_fiber(static_cast<int>(f)) == fundamental) return {ctx.datum().rho(), ctx.dual().basepoint(static_cast<int>(f))};
  throw std::logic_error("no dual fiber over the fundamental fiber");
}

std::vector<LParameter> all_parameters(const Context& ctx) {
  std::vector<LParameter> out;
  for (const auto& lambda : lambda_grid(ctx.datum()))
    for (const auto& p : parameters_with_lambda(ctx, lambda)) out.push_back(p);
  return out;
}

}  // namespace

TEST(Lparams, ValidateExamples) {
  SL2 s;
  for (const auto& p : {s.spherical_ps, s.nonspherical_ps, s.case_a, s.case_b, s.discrete_series}) EXPECT_NO_THROW(validate(s.ctx, p));
  // y^2 = e(0) is not e(1/3).
  EXPECT_THROW(validate(s.ctx, LParameter{{q(1, 3)}, {0, {q(0)}}}), NotAnLHom);
  // On the compact dual fiber lambda - tau_check lambda = 2 lambda must be integral.
  EXPECT_THROW(validate(s.ctx, LParameter{{q(1, 3)}, {1, {q(0)}}}), NotAnLHom);

  for (const auto& g : finite_corpus_groups()) {
    Context ctx(inner_class_of(g));
    LParameter f = fundamental_parameter(ctx);
    EXPECT_NO_THROW(validate(ctx, f)) << g.label;
    EXPECT_EQ(frac(ctx.dual().square(f.y)), frac(ctx.datum().rho())) << g.label;
    EXPECT_EQ(infinitesimal_character(ctx.datum(), f.lambda), ctx.datum().rho());
  }
}

TEST(Lparams, StandardFormRankOne) {
  SL2 s;
  EXPECT_TRUE(is_standard(s.ctx, s.spherical_ps));
  EXPECT_TRUE(is_standard(s.ctx, s.nonspherical_ps));
  EXPECT_TRUE(is_standard(s.ctx, s.case_a));
  EXPECT_FALSE(is_standard(s.ctx, s.case_b));
  StandardForm sf = standard_form(s.ctx, s.case_b);
  EXPECT_EQ(sf.param, s.case_b_normalized);
  ASSERT_EQ(sf.trail.size(), 1u);
  EXPECT_EQ(sf.trail[0].kind, MoveKind::Cayley);
  EXPECT_TRUE(standard_form(s.ctx, s.case_a).trail.empty());
  EXPECT_EQ(standard_form(s.ctx, s.case_a).param, s.case_a);
  // The normalizing move is the dual Cayley transform.
  EXPECT_EQ(dual_cayley(s.ctx, s.case_b, 0), s.case_b_normalized);
}

TEST(Lparams, FinalCharactersRankOne) {
  SL2 s;
  EXPECT_EQ(final_characters(s.ctx, s.spherical_ps).members.size(), 1u);
  EXPECT_EQ(final_characters(s.ctx, s.nonspherical_ps).members.size(), 1u);
  EXPECT_EQ(final_characters(s.ctx, s.case_a).members.size(), 1u);
  Subgroup b = final_characters(s.ctx, s.case_b_normalized);
  EXPECT_EQ(b.members.size(), 2u);
  // Regular infinitesimal character: every character is final.
  int k = group_fiber(s.ctx, s.discrete_series);
  EXPECT_EQ(Int(final_characters(s.ctx, s.discrete_series).members.size()), s.ctx.group().u_tau(k).order());

  // The two limits of discrete series sit on the noncompact compact-Cartan points of SL(2,R).
  std::set<KgbElement> images;
  for (const auto& u : b.members) {
    KgbElement x = e_phi(s.ctx, s.case_b_normalized, u);
    images.insert(x);
    EXPECT_TRUE(s.ctx.group().is_noncompact(x, 0));
    EXPECT_EQ(frac(s.ctx.group().square(x)), frac(s.ctx.group().z_star()));
  }
  EXPECT_EQ(images.size(), 2u);
  EXPECT_EQ(*images.begin(), s.ctx.group().basepoint(k));
}

TEST(Lparams, InfinitesimalCharacter) {
  SL2 s;
  EXPECT_EQ(infinitesimal_character(s.ctx.datum(), QVec{q(0)}), QVec{q(0)});
  EXPECT_EQ(infinitesimal_character(s.ctx.datum(), QVec{q(-3, 2)}), QVec{q(3, 2)});
  EXPECT_EQ(infinitesimal_character(s.ctx.datum(), QVec{q(1)}), QVec{q(1)});
  for (const auto& g : finite_corpus_groups()) {
    RootDatum d = build_datum(g.spec, g.isogeny);
    WeylGroup W(inner_class_of(g));
    for (const auto& lambda : lambda_grid(d)) {
      QVec dom = infinitesimal_character(d, lambda);
      for (std::size_t i = 0; i < d.semisimple_rank(); ++i) EXPECT_GE(dot(dom, to_rational(d.simple_coroots().row(i))), 0);
      // Constant on Weyl orbits.
      for (std::size_t w = 0; w < W.size(); ++w)
        EXPECT_EQ(infinitesimal_character(d, to_rational(W.character_matrix(static_cast<int>(w))) * lambda), dom) << g.label;
    }
  }
}

TEST(Lparams, TempiricRankOne) {
  SL2 s;
  EXPECT_TRUE(is_tempiric(s.ctx, s.case_b_normalized));
  EXPECT_TRUE(is_tempiric(s.ctx, s.case_a));
  EXPECT_FALSE(is_tempiric(s.ctx, s.spherical_ps));
  EXPECT_EQ(tempiric_reduce(s.ctx, s.spherical_ps), s.case_a);
  EXPECT_EQ(tempiric_reduce(s.ctx, s.nonspherical_ps), s.case_b);
  EXPECT_EQ(tempiric_reduce(s.ctx, s.case_a), s.case_a);
  EXPECT_EQ(infinitesimal_character(s.ctx.datum(), tempiric_reduce(s.ctx, s.nonspherical_ps).lambda), QVec{q(0)});
}

TEST(Lparams, TempiricCalculusOnGrid) {
  for (const auto& g : finite_corpus_groups()) {
    Context ctx(inner_class_of(g));
    for (const auto& p : all_parameters(ctx)) {
      EXPECT_EQ(is_tempiric(ctx, p), vanishes_on_split_part(ctx, p)) << g.label << " " << str(p);
      LParameter c = tempiric_reduce(ctx, p);
      EXPECT_NO_THROW(validate(ctx, c));
      EXPECT_TRUE(is_tempiric(ctx, c)) << g.label;
      EXPECT_EQ(tempiric_reduce(ctx, c), c) << g.label;
      if (is_tempiric(ctx, p)) EXPECT_EQ(c, p);
    }
  }
}

TEST(Lparams, OperationsPreserveValidity) {
  for (const auto& g : finite_corpus_groups()) {
    Context ctx(inner_class_of(g));
    const RootDatum& d = ctx.datum();
    for (const auto& p : all_parameters(ctx)) {
      EXPECT_EQ(dual_cross(ctx, p, ctx.weyl().identity()), p);
      for (std::size_t w = 0; w < ctx.weyl().size(); ++w) EXPECT_NO_THROW(validate(ctx, dual_cross(ctx, p, static_cast<int>(w))));
      const IntMatrix& tau = ctx.group().fiber(group_fiber(ctx, p)).tau;
      for (std::size_t r = 0; r < d.npos(); ++r) {
        if (classify_root(d, tau, static_cast<int>(r)) != RootType::Real) continue;
        if (dot(p.lambda, to_rational(d.roots()[r].coroot)).get_den() != 1) continue;
        if (dual_grading(ctx, p, static_cast<int>(r)) != Noncompact) continue;
        LParameter c = dual_cayley(ctx, p, static_cast<int>(r));
        EXPECT_NO_THROW(validate(ctx, c)) << g.label;
        EXPECT_EQ(frac(ctx.dual().square(c.y)), frac(p.lambda));
      }
      StandardForm sf = standard_form(ctx, p);
      EXPECT_TRUE(is_standard(ctx, sf.param)) << g.label << " " << str(p);
      EXPECT_NO_THROW(validate(ctx, sf.param));
      EXPECT_EQ(parameter_key(ctx, dual_cross(ctx, p, ctx.weyl().longest())), parameter_key(ctx, p));
    }
  }
}

TEST(Lparams, EPhiInjectiveAndPacketSizes) {
  for (const auto& g : finite_corpus_groups()) {
    Context ctx(inner_class_of(g));
    for (const auto& p : corpus_parameters(ctx)) {
      Subgroup f = final_characters(ctx, p);
      int k = group_fiber(ctx, p);
      EXPECT_EQ(e_phi(ctx, p, ctx.group().u_tau(k).zero()), ctx.group().basepoint(k));
      std::set<KgbElement> images;
      for (const auto& u : f.members) {
        KgbElement x = e_phi(ctx, p, u);
        images.insert(x);
        // Every singular imaginary simple root is noncompact at the image.
        for (int r : ctx.group().simple_imaginary(k))
          if (dot(p.lambda, to_rational(ctx.datum().roots()[r].coroot)) == 0) EXPECT_TRUE(ctx.group().is_noncompact(x, r)) << g.label;
        if (ctx.group().in_u0(k, u)) EXPECT_EQ(frac(ctx.group().square(x)), frac(ctx.group().z_star())) << g.label;
      }
      EXPECT_EQ(images.size(), f.members.size()) << g.label;
      for (const auto& u : ctx.group().u_tau(k).elements())
        if (!std::binary_search(f.members.begin(), f.members.end(), u)) EXPECT_THROW(e_phi(ctx, p, u), NotFinal);
    }
  }
}
