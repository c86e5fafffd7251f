#include "lkt/corpus.hpp"
#include "lkt/lkt.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace lkt;

namespace {

Rat q(long a, long b = 1) {
  Rat r(a, b);
  r.canonicalize();
  return r;
}

struct SL2 {
  Context ctx{make_inner_class(build_datum("A1", Isogeny::SimplyConnected), "c")};
  LParameter spherical_ps{{q(1, 3)}, {0, {q(2, 3)}}};
  LParameter nonspherical_ps{{q(1, 3)}, {0, {q(1, 6)}}};
  LParameter case_a{{q(0)}, {0, {q(1, 2)}}};
  LParameter case_b{{q(0)}, {1, {q(0)}}};
  LParameter discrete_series{{q(1)}, {1, {q(0)}}};
  IVec trivial{};
};

std::vector<MoveKind> kinds(const LktRun& run) {
  std::vector<MoveKind> out;
  for (const auto& m : run.trail) out.push_back(m.kind);
  return out;
}

}  // namespace

TEST(Lkt, TempiricInputIsItsOwnAnswer) {
  SL2 s;
  for (const auto& chi : final_characters(s.ctx, s.case_b).group.elements()) {
    LktResult r = lowest_k_types(s.ctx, s.case_b, chi);
    EXPECT_TRUE(r.run.trail.empty());
    ASSERT_EQ(r.entries.size(), 1u);
    EXPECT_EQ(r.tempiric, s.case_b);
    EXPECT_EQ(r.entries[0].param.x, e_phi(s.ctx, s.case_b, final_characters(s.ctx, s.case_b).parent_element(chi)));
    ResMap rm = res_map(s.ctx, r.run);
    EXPECT_EQ(rm.hom.m, IntMatrix::identity(1));
  }
  LktResult a = lowest_k_types(s.ctx, s.case_a, s.trivial);
  EXPECT_TRUE(a.run.trail.empty());
  EXPECT_EQ(a.entries.size(), 1u);
}

TEST(Lkt, NonsphericalPrincipalSeries) {
  SL2 s;
  LktResult r = lowest_k_types(s.ctx, s.nonspherical_ps, s.trivial);
  EXPECT_EQ(kinds(r.run), (std::vector<MoveKind>{MoveKind::WallDeform, MoveKind::Cayley}));
  EXPECT_EQ(r.tempiric, s.case_b);
  ASSERT_EQ(r.entries.size(), 2u);
  int compact = s.ctx.group().fiber_of_weyl(0);
  std::set<KgbElement> xs;
  for (const auto& e : r.entries) {
    EXPECT_EQ(e.param.x.fiber, compact);
    EXPECT_EQ(e.param.lambda, QVec{q(0)});
    EXPECT_TRUE(s.ctx.group().is_noncompact(e.param.x, 0));
    xs.insert(e.param.x);
  }
  EXPECT_EQ(xs.size(), 2u);
  // iota embeds the trivial group into Z/2; Res has fibers of size 2.
  ResMap rm = res_map(s.ctx, r.run);
  EXPECT_EQ(rm.source.group.order(), 2);
  EXPECT_EQ(rm.target.group.order(), 1);
  EXPECT_TRUE(rm.hom.surjective());
  EXPECT_TRUE(iota(rm).injective());
  EXPECT_FALSE(iota(rm).surjective());
}

TEST(Lkt, SphericalPrincipalSeries) {
  SL2 s;
  LktResult r = lowest_k_types(s.ctx, s.spherical_ps, s.trivial);
  EXPECT_EQ(kinds(r.run), (std::vector<MoveKind>{MoveKind::WallDeform}));
  EXPECT_EQ(r.tempiric, s.case_a);
  ASSERT_EQ(r.entries.size(), 1u);
  int split = s.ctx.group().fiber_of_weyl(s.ctx.weyl().simple(0));
  EXPECT_EQ(r.entries[0].param.x.fiber, split);
  ResMap rm = res_map(s.ctx, r.run);
  EXPECT_EQ(rm.source.group.order(), 1);
  EXPECT_EQ(rm.target.group.order(), 1);
}

TEST(Lkt, TempiricPackets) {
  SL2 s;
  TempiricPacket b = tempiric_packet(s.ctx, s.case_b);
  ASSERT_EQ(b.entries.size(), 2u);
  EXPECT_EQ(b.entries[0].label, b.entries[1].label);
  EXPECT_EQ(b.entries[0].label.z, frac(s.ctx.group().z_star()));
  EXPECT_EQ(tempiric_packet(s.ctx, s.case_a).entries.size(), 1u);
  EXPECT_THROW(tempiric_packet(s.ctx, s.spherical_ps), NotTempiric);

  // Regular discrete series: one entry per strong real form point, SL(2,R) points large.
  TempiricPacket ds = tempiric_packet(s.ctx, s.discrete_series);
  EXPECT_EQ(ds.entries.size(), 4u);
  std::size_t large = 0;
  for (const auto& e : ds.entries) large += largeness_check(s.ctx.group(), e.param.x);
  EXPECT_EQ(large, 2u);
}

TEST(Lkt, FundamentalPacketTrivialEntryIsLargeBasepoint) {
  for (const auto& g : finite_corpus_groups()) {
    Context ctx(inner_class_of(g));
    int fundamental = ctx.group().fiber_of_weyl(ctx.weyl().identity());
    for (std::size_t f = 0; f < ctx.dual().nfibers(); ++f) {
      if (ctx.group_fiber(static_cast<int>(f)) != fundamental) continue;
      LParameter rho_param{ctx.datum().rho(), ctx.dual().basepoint(static_cast<int>(f))};
      LParameter pc = tempiric_reduce(ctx, rho_param);
      TempiricPacket pk = tempiric_packet(ctx, pc);
      ASSERT_FALSE(pk.entries.empty());
      const PacketEntry& trivial = pk.entries.front();
      EXPECT_TRUE(pk.characters.group.is_zero(trivial.chi));
      EXPECT_EQ(trivial.param.x, ctx.group().basepoint(group_fiber(ctx, pk.param))) << g.label;
      EXPECT_TRUE(largeness_check(ctx.group(), trivial.param.x)) << g.label;
      std::set<KgbElement> distinct;
      for (const auto& e : pk.entries) distinct.insert(e.param.x);
      EXPECT_EQ(distinct.size(), pk.entries.size()) << g.label;
    }
  }
}

TEST(Lkt, Largeness) {
  SL2 s;
  int compact = s.ctx.group().fiber_of_weyl(0);
  int split = s.ctx.group().fiber_of_weyl(s.ctx.weyl().simple(0));
  for (const auto& x : s.ctx.group().enumerate_fiber(compact))
    EXPECT_EQ(largeness_check(s.ctx.group(), x), s.ctx.group().is_noncompact(x, 0));
  EXPECT_TRUE(largeness_check(s.ctx.group(), s.ctx.group().basepoint(split)));
  for (const auto& g : finite_corpus_groups()) {
    Kgb kgb(inner_class_of(g));
    for (std::size_t k = 0; k < kgb.nfibers(); ++k) EXPECT_TRUE(largeness_check(kgb, kgb.basepoint(static_cast<int>(k)))) << g.label;
  }
}

TEST(Lkt, EntryCountIsResIndexAndConstantOverCharacters) {
  for (const auto& g : finite_corpus_groups()) {
    Context ctx(inner_class_of(g));
    for (const auto& p : corpus_parameters(ctx)) {
      Subgroup f = final_characters(ctx, p);
      std::set<std::size_t> sizes;
      for (const auto& chi : f.group.elements()) {
        LktResult r = lowest_k_types(ctx, p, chi);
        ResMap rm = res_map(ctx, r.run);
        EXPECT_EQ(Int(r.entries.size()) * rm.target.group.order(), rm.source.group.order()) << g.label << " " << str(p);
        sizes.insert(r.entries.size());
        for (const auto& e : r.entries) EXPECT_EQ(rm.hom.apply(*rm.source.coords_of(e.chi)), chi);
      }
      EXPECT_EQ(sizes.size(), 1u) << g.label << " " << str(p);
    }
  }
}

TEST(Lkt, PullBackAlongEmptyTrailIsIdentity) {
  SL2 s;
  EXPECT_EQ(pull_back(s.ctx, {}, IVec{3}), IVec{3});
}
