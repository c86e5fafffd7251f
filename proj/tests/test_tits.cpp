#include "lkt/corpus.hpp"
#include "lkt/tits.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lkt;

namespace {

TitsElement random_element(std::mt19937& rng, const TitsGroup& T, bool with_flag) {
  const WeylGroup& W = T.weyl();
  QVec t(W.datum().rank());
  for (auto& x : t) {
    x = Rat(static_cast<int>(rng() % 8), 8);
    x.canonicalize();
  }
  TitsElement e = T.multiply(T.torus(t), T.sigma(static_cast<int>(rng() % W.size())));
  if (with_flag && rng() % 2) e = T.multiply(e, T.delta());
  return e;
}

std::size_t brute_force_twisted_count(const WeylGroup& W) {
  std::size_t n = 0;
  for (std::size_t w = 0; w < W.size(); ++w)
    if (W.multiply(static_cast<int>(w), W.twist(static_cast<int>(w))) == W.identity()) ++n;
  return n;
}

}  // namespace

TEST(Tits, WeylGroupOrders) {
  auto order = [](const std::string& spec) {
    return WeylGroup(make_inner_class(build_datum(spec, Isogeny::SimplyConnected), "c")).size();
  };
  EXPECT_EQ(order("A1"), 2u);
  EXPECT_EQ(order("A2"), 6u);
  EXPECT_EQ(order("B2"), 8u);
  EXPECT_EQ(order("G2"), 12u);
  EXPECT_EQ(order("A3"), 24u);
  EXPECT_EQ(order("T1"), 1u);
}

TEST(Tits, WeylActionExamples) {
  RootDatum a1 = build_datum("A1", Isogeny::SimplyConnected);
  WeylGroup W1(make_inner_class(a1, "c"));
  QVec v{Rat(3, 7)};
  EXPECT_EQ(weyl_act(W1, W1.identity(), {Role::Cocharacter, v}), v);
  EXPECT_EQ(weyl_act(W1, W1.simple(0), {Role::Cocharacter, QVec{Rat(1)}}), QVec{Rat(-1)});

  RootDatum a2 = build_datum("A2", Isogeny::SimplyConnected);
  WeylGroup W(make_inner_class(a2, "c"));
  int lhs = W.from_word({0, 1, 0}), rhs = W.from_word({1, 0, 1});
  EXPECT_EQ(lhs, rhs);
  EXPECT_EQ(W.matrix(lhs), W.matrix(rhs));
  EXPECT_EQ(W.character_matrix(lhs), W.character_matrix(rhs));
  EXPECT_EQ(W.length(lhs), 3);
  EXPECT_EQ(W.longest(), lhs);
}

TEST(Tits, WordsAreReducedAndMatchMatrices) {
  for (const auto& g : corpus_groups()) {
    WeylGroup W(inner_class_of(g));
    for (std::size_t w = 0; w < W.size(); ++w) {
      const auto& word = W.word(static_cast<int>(w));
      EXPECT_EQ(static_cast<int>(word.size()), W.length(static_cast<int>(w)));
      IntMatrix m = IntMatrix::identity(W.datum().rank());
      for (int s : word) m = m * W.matrix(W.simple(s));
      EXPECT_EQ(m, W.matrix(static_cast<int>(w))) << g.label;
      EXPECT_EQ(W.multiply(static_cast<int>(w), W.inverse(static_cast<int>(w))), W.identity());
    }
  }
}

TEST(Tits, SigmaSquaresToCorootHalf) {
  for (const auto& g : corpus_groups()) {
    WeylGroup W(inner_class_of(g));
    TitsGroup T(W);
    const RootDatum& d = W.datum();
    for (std::size_t s = 0; s < W.nsimple(); ++s) {
      TitsElement sig = T.sigma(W.simple(s));
      TitsElement sq = T.multiply(sig, sig);
      EXPECT_EQ(sq, T.torus(scale(Rat(1, 2), to_rational(d.simple_coroots().row(s))))) << g.label;
      // sigma_root agrees with sigma on simple roots.
      EXPECT_EQ(T.sigma_root(static_cast<int>(s)), sig);
    }
  }
}

TEST(Tits, IdentityAndLengthAdditivity) {
  RootDatum a2 = build_datum("A2", Isogeny::SimplyConnected);
  WeylGroup W(make_inner_class(a2, "c"));
  TitsGroup T(W);
  TitsElement one = T.sigma(W.identity());
  std::mt19937 rng(5);
  for (int i = 0; i < 20; ++i) {
    TitsElement x = random_element(rng, T, true);
    EXPECT_EQ(T.multiply(one, x), x);
    EXPECT_EQ(T.multiply(x, one), x);
    EXPECT_EQ(T.multiply(x, T.inverse(x)), one);
  }
  EXPECT_EQ(T.multiply(T.sigma(W.simple(0)), T.sigma(W.simple(1))), T.sigma(W.from_word({0, 1})));
}

TEST(Tits, SigmaIndependentOfReducedWord) {
  for (const auto& g : corpus_groups()) {
    WeylGroup W(inner_class_of(g));
    TitsGroup T(W);
    for (std::size_t w = 0; w < W.size(); ++w)
      for (std::size_t s = 0; s < W.nsimple(); ++s) {
        int sw = W.lmul(s, static_cast<int>(w));
        // Every reduced word of w starting with s factors this way.
        if (W.length(sw) < W.length(static_cast<int>(w)))
          EXPECT_EQ(T.multiply(T.sigma(W.simple(s)), T.sigma(sw)), T.sigma(static_cast<int>(w))) << g.label;
      }
  }
}

TEST(Tits, MultiplicationIsAssociative) {
  std::mt19937 rng(17);
  for (const auto& g : corpus_groups()) {
    WeylGroup W(inner_class_of(g));
    TitsGroup T(W);
    for (int i = 0; i < 200; ++i) {
      TitsElement a = random_element(rng, T, true), b = random_element(rng, T, true), c = random_element(rng, T, true);
      EXPECT_EQ(T.multiply(T.multiply(a, b), c), T.multiply(a, T.multiply(b, c))) << g.label;
    }
  }
}

TEST(Tits, TwistedInvolutionCounts) {
  auto count = [](const std::string& spec, const std::string& inner) {
    WeylGroup W(make_inner_class(build_datum(spec, Isogeny::SimplyConnected), inner));
    return twisted_involutions(W).size();
  };
  EXPECT_EQ(count("A1", "c"), 2u);
  EXPECT_EQ(count("T1", "c"), 1u);
  EXPECT_EQ(count("A1.A1", "c"), 4u);
  // -w0 is the identity on A1 x A1, so the keyword s gives the equal-rank class again.
  EXPECT_EQ(count("A1.A1", "s"), 4u);
  WeylGroup swapped(make_inner_class(build_datum("A1.A1", Isogeny::SimplyConnected), IntMatrix{{0, 1}, {1, 0}}));
  // Of e, s1, s2, s1 s2 only e and s1 s2 satisfy w gamma(w) = 1.
  EXPECT_EQ(twisted_involutions(swapped).size(), 2u);
  for (const auto& g : corpus_groups()) {
    WeylGroup W(inner_class_of(g));
    auto tis = twisted_involutions(W);
    EXPECT_EQ(tis.size(), brute_force_twisted_count(W)) << g.label;
    for (const auto& ti : tis) {
      EXPECT_EQ(ti.tau * ti.tau, IntMatrix::identity(W.datum().rank()));
      EXPECT_EQ(ti.tau, W.matrix(ti.w) * W.inner_class().gamma);
    }
  }
}

TEST(Tits, SigmaTimesTwistedSigmaHasOrderTwo) {
  for (const auto& g : corpus_groups()) {
    WeylGroup W(inner_class_of(g));
    TitsGroup T(W);
    TitsElement delta = T.delta();
    for (const auto& ti : twisted_involutions(W)) {
      TitsElement s = T.sigma(ti.w);
      TitsElement twisted = T.conjugate(delta, s);
      TitsElement prod = T.multiply(s, twisted);
      EXPECT_EQ(prod.w, W.identity()) << g.label;
      EXPECT_FALSE(prod.flag);
      EXPECT_TRUE(is_integral(scale(Rat(2), prod.t))) << g.label;
    }
  }
}

TEST(Tits, ConjugateTwisted) {
  RootDatum a1 = build_datum("A1", Isogeny::SimplyConnected);
  WeylGroup W1(make_inner_class(a1, "c"));
  EXPECT_EQ(conjugate_twisted(W1, W1.simple(0), W1.identity()), W1.identity());
  EXPECT_EQ(conjugate_twisted(W1, W1.simple(0), W1.simple(0)), W1.simple(0));

  for (const auto& g : corpus_groups()) {
    WeylGroup W(inner_class_of(g));
    const IntMatrix& gamma = W.inner_class().gamma;
    for (const auto& ti : twisted_involutions(W)) {
      EXPECT_EQ(conjugate_twisted(W, W.identity(), ti.w), ti.w);
      for (std::size_t v = 0; v < W.size(); ++v) {
        int c = conjugate_twisted(W, static_cast<int>(v), ti.w);
        IntMatrix direct = W.matrix(static_cast<int>(v)) * ti.tau * W.matrix(W.inverse(static_cast<int>(v)));
        EXPECT_EQ(W.matrix(c) * gamma, direct) << g.label;
      }
    }
  }
}
