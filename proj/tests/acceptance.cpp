// Acceptance run: one PASS/FAIL line per criterion.
#include "lkt/chartorus.hpp"
#include "lkt/corpus.hpp"
#include "lkt/lkt.hpp"
#include "lkt/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>

using namespace lkt;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "first violation: " << what << "; ";
    ok = ok && cond;
  }
};

Rat q(long a, long b = 1) {
  Rat r(a, b);
  r.canonicalize();
  return r;
}

bool is_zero(const IVec& v) {
  for (const auto& c : v)
    if (c != 0) return false;
  return true;
}

// Corpus contexts are built once and shared by the corpus-wide criteria.
struct CorpusEntry {
  GroupCase group;
  std::unique_ptr<Context> ctx;
  std::vector<LParameter> params;
};
std::vector<CorpusEntry>& corpus() {
  static std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> out;
    for (const auto& g : finite_corpus_groups()) {
      CorpusEntry e{g, std::make_unique<Context>(inner_class_of(g)), {}};
      e.params = corpus_parameters(*e.ctx);
      out.push_back(std::move(e));
    }
    return out;
  }();
  return entries;
}

void sl2_example(Outcome& o) {
  Context ctx(make_inner_class(build_datum("A1", Isogeny::SimplyConnected), "c"));
  LParameter spherical_ps{{q(1, 3)}, {0, {q(2, 3)}}};
  LParameter nonspherical_ps{{q(1, 3)}, {0, {q(1, 6)}}};
  LParameter case_a{{q(0)}, {0, {q(1, 2)}}};
  LParameter case_b{{q(0)}, {0, {q(0)}}};
  for (const auto& ps : {spherical_ps, nonspherical_ps})
    o.require(final_characters(ctx, ps).group.order() == 1, "principal series component group order " + str(ps));
  o.require(is_standard(ctx, case_a) && final_characters(ctx, case_a).group.order() == 1, "case (a) order 1");
  o.require(!is_standard(ctx, case_b), "case (b) flagged as not standard");
  LParameter normalized = standard_form(ctx, case_b).param;
  Int count = final_characters(ctx, normalized).group.order();
  o.require(count == 2, "case (b) final-character count 2");
  o.detail << "PS orders 1,1; case (a) 1; case (b) not standard, normalized count " << count;
}

// KGB points against explicit monomial matrices: class, square and gradings.
std::size_t oracle_mismatches(int n, Isogeny iso, std::size_t& classes) {
  MatrixOracle oracle(iso == Isogeny::SimplyConnected ? OracleGroup::SL : OracleGroup::PGL, n);
  RootDatum d = build_datum("A" + std::to_string(n - 1), iso);
  Kgb kgb(make_inner_class(d, "c"));
  classes = oracle.classes().size();
  std::size_t bad = 0;
  std::set<int> hit;
  auto all = kgb.enumerate();
  for (const auto& x : all) {
    int c = oracle.class_of(oracle.from_tits(kgb.weyl(), kgb.strong_involution(x)));
    if (c < 0 || !hit.insert(c).second) {
      ++bad;
      continue;
    }
    std::vector<int> g;
    for (std::size_t r = 0; r < d.npos(); ++r)
      g.push_back(kgb.root_type(x.fiber, static_cast<int>(r)) == RootType::Imaginary ? kgb.grading(x, static_cast<int>(r)) : -1);
    if (g != oracle.classes()[c].gradings) ++bad;
    auto z = oracle.scalar_of(oracle.torus(kgb.square(x)));
    if (!z || *z != *oracle.classes()[c].square) ++bad;
  }
  if (all.size() != classes) ++bad;
  return bad;
}

void kgb_vs_oracle(Outcome& o) {
  struct Case {
    Isogeny iso;
    std::size_t total;
    std::multiset<std::size_t> fibers;
  };
  for (const auto& c : {Case{Isogeny::SimplyConnected, 5, {4, 1}}, Case{Isogeny::Adjoint, 3, {2, 1}}}) {
    Kgb kgb(make_inner_class(build_datum("A1", c.iso), "c"));
    std::multiset<std::size_t> fibers;
    for (std::size_t k = 0; k < kgb.nfibers(); ++k) fibers.insert(kgb.enumerate_fiber(static_cast<int>(k)).size());
    std::size_t total = kgb.enumerate().size(), classes = 0;
    std::size_t bad = oracle_mismatches(2, c.iso, classes);
    o.require(total == c.total && fibers == c.fibers, "KGB counts");
    o.require(classes == c.total && bad == 0, "oracle agreement");
    o.detail << (c.iso == Isogeny::SimplyConnected ? "sc" : "ad") << ": |X| = " << total << ", oracle " << classes
             << ", mismatches " << bad << "; ";
  }
}

void iota_injective(Outcome& o) {
  std::size_t runs = 0, bad = 0;
  for (auto& e : corpus())
    for (const auto& p : e.params)
      for (const auto& chi : final_characters(*e.ctx, p).group.elements()) {
        ++runs;
        ResMap rm = res_map(*e.ctx, lkt_algorithm(*e.ctx, p, final_characters(*e.ctx, p).parent_element(chi)));
        if (!iota(rm).injective() || !rm.hom.surjective()) ++bad;
      }
  o.require(runs > 0 && bad == 0, "iota injective");
  o.detail << runs << " (parameter, character) pairs over " << corpus().size() << " groups, " << bad << " failures";
}

void two_path_agreement(Outcome& o) {
  std::size_t runs = 0, mismatches = 0;
  for (auto& e : corpus()) {
    const Context& ctx = *e.ctx;
    for (const auto& p : e.params) {
      Subgroup f = final_characters(ctx, p);
      for (const auto& chi : f.group.elements()) {
        ++runs;
        LktRun run = lkt_algorithm(ctx, p, f.parent_element(chi));
        ResMap rm = res_map(ctx, run);
        // Res fiber over chi, mapped through the dictionary at the end of the trail.
        std::vector<KgbElement> fiber;
        for (const auto& v : rm.source.members)
          if (rm.hom.apply(*rm.source.coords_of(v)) == chi) fiber.push_back(e_phi(ctx, run.final_param, v));
        std::sort(fiber.begin(), fiber.end());
        if (fiber != run.outputs) ++mismatches;
      }
    }
  }
  o.require(runs > 0 && mismatches == 0, "Res fiber equals transported outputs");
  o.detail << runs << " runs, " << mismatches << " mismatches";
}

void simply_transitive(Outcome& o) {
  std::size_t fibers = 0;
  for (auto& e : corpus()) {
    const Kgb& kgb = e.ctx->group();
    for (std::size_t k = 0; k < kgb.nfibers(); ++k) {
      ++fibers;
      int kk = static_cast<int>(k);
      auto points = kgb.enumerate_fiber(kk);
      const FiniteAbelianGroup& u = kgb.u_tau(kk);
      std::set<IVec> coords;
      for (const auto& x : points) coords.insert(u.reduce(kgb.d_tau(x)));
      o.require(Int(points.size()) == u.order(), e.group.label + " |U| = |X|");
      o.require(coords.size() == points.size(), e.group.label + " D injective");
      o.require(u.is_zero(kgb.d_tau(kgb.basepoint(kk))), e.group.label + " D(basepoint) = 0");
    }
  }
  o.detail << fibers << " fibers";
}

void basepoint_coherence(Outcome& o) {
  std::size_t checked = 0;
  for (auto& e : corpus()) {
    const Kgb& kgb = e.ctx->group();
    const WeylGroup& W = kgb.weyl();
    for (std::size_t k = 0; k < kgb.nfibers(); ++k) {
      int kk = static_cast<int>(k);
      KgbElement xb = kgb.basepoint(kk);
      const IntMatrix& tau = kgb.fiber(kk).tau;
      for (std::size_t s = 0; s < W.nsimple(); ++s) {
        int r = static_cast<int>(s);
        RootType t = kgb.root_type(kk, r);
        if (t == RootType::Imaginary) {
          ++checked;
          KgbElement y = kgb.cayley(r, xb);
          int expected = kgb.fiber_of_tau(W.matrix(W.simple(s)) * tau);
          o.require(y.fiber == expected && y == kgb.basepoint(expected), e.group.label + " Cayley of basepoint");
        } else if (t == RootType::Complex) {
          ++checked;
          KgbElement y = kgb.cross_simple(s, xb);
          int expected = kgb.fiber_of_tau(W.matrix(W.simple(s)) * tau * W.matrix(W.simple(s)));
          o.require(y.fiber == expected && y == kgb.basepoint(expected), e.group.label + " cross of basepoint");
        }
      }
    }
  }
  o.detail << checked << " (fiber, simple root) pairs";
}

void cayley_diagram(Outcome& o) {
  std::size_t squares = 0, kernels = 0;
  for (auto& e : corpus()) {
    const Kgb& kgb = e.ctx->group();
    for (std::size_t k = 0; k < kgb.nfibers(); ++k) {
      int kk = static_cast<int>(k);
      const FiniteAbelianGroup& u = kgb.u_tau(kk);
      FiniteAbelianGroup du = dual_group(u);
      for (int r : kgb.fiber(kk).imaginary) {
        ++kernels;
        std::set<IVec> kernel;
        for (const auto& c : quotient_kernel(kgb, kk, r)) kernel.insert(du.reduce(c));
        IVec mb = du.reduce(m_bar(kgb, kk, r));
        o.require(kernel == std::set<IVec>{du.zero(), mb}, e.group.label + " quotient kernel generated by m_bar");
        if (r >= static_cast<int>(kgb.datum().semisimple_rank())) continue;
        int target = cayley_fiber(kgb, kk, r);
        for (const auto& x : kgb.enumerate_fiber(kk)) {
          if (!kgb.is_noncompact(x, r)) continue;
          ++squares;
          o.require(kgb.d_tau(kgb.cayley(r, x)) == kgb.u_tau(target).reduce(cayley_char_map(kgb, kk, r, kgb.d_tau(x))),
                    e.group.label + " lambda_alpha D = D c^alpha");
        }
      }
    }
  }
  o.detail << squares << " Cayley squares on simple imaginary roots, " << kernels << " quotient kernels";
}

void tempiric_calculus(Outcome& o) {
  std::size_t grid = 0, packets = 0;
  for (auto& e : corpus()) {
    const Context& ctx = *e.ctx;
    std::set<std::string> seen;
    for (const auto& lambda : lambda_grid(ctx.datum()))
      for (const auto& p : parameters_with_lambda(ctx, lambda)) {
        ++grid;
        LParameter c = tempiric_reduce(ctx, p);
        o.require(tempiric_reduce(ctx, c) == c, e.group.label + " idempotent");
        o.require(is_tempiric(ctx, p) == vanishes_on_split_part(ctx, p), e.group.label + " tempiric criterion");
        if (!seen.insert(parameter_key(ctx, standard_form(ctx, c).param)).second) continue;
        ++packets;
        TempiricPacket pk = tempiric_packet(ctx, c);
        std::set<KgbElement> xs;
        for (const auto& entry : pk.entries) xs.insert(entry.param.x);
        o.require(xs.size() == pk.entries.size(), e.group.label + " packet points distinct");
      }
  }
  o.detail << grid << " grid parameters, " << packets << " packets";
}

void termination(Outcome& o) {
  std::size_t runs = 0, max_steps = 0, order_diffs = 0;
  for (auto& e : corpus()) {
    const Context& ctx = *e.ctx;
    for (const auto& p : e.params) {
      Subgroup f = final_characters(ctx, p);
      for (const auto& chi : f.group.elements()) {
        ++runs;
        LktResult a = lowest_k_types(ctx, p, chi, WallOrder::Least);
        LktResult b = lowest_k_types(ctx, p, chi, WallOrder::Greatest);
        o.require(a.run.loop_steps <= a.run.step_bound && b.run.loop_steps <= b.run.step_bound, e.group.label + " step bound");
        max_steps = std::max({max_steps, a.run.loop_steps, b.run.loop_steps});
        std::set<std::string> ka, kb;
        for (const auto& x : a.entries) ka.insert(atlas_key(ctx, x.param));
        for (const auto& x : b.entries) kb.insert(atlas_key(ctx, x.param));
        if (ka != kb) ++order_diffs;
      }
    }
  }
  o.require(order_diffs == 0, "wall order invariance");
  o.detail << runs << " runs in both wall orders, max loop steps " << max_steps << ", " << order_diffs << " order differences";
}

void largeness(Outcome& o) {
  std::size_t basepoints = 0, trivial = 0;
  for (auto& e : corpus()) {
    const Context& ctx = *e.ctx;
    for (std::size_t k = 0; k < ctx.group().nfibers(); ++k) {
      ++basepoints;
      o.require(largeness_check(ctx.group(), ctx.group().basepoint(static_cast<int>(k))), e.group.label + " basepoint large");
    }
    for (const auto& p : e.params) {
      LktResult r = lowest_k_types(ctx, p, final_characters(ctx, p).group.zero());
      for (const auto& entry : r.entries)
        if (is_zero(entry.chi)) {
          ++trivial;
          o.require(entry.large, e.group.label + " trivial-character entry large");
        }
    }
  }
  o.detail << basepoints << " basepoints, " << trivial << " trivial-character entries";
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<void(Outcome&)> run;
    double limit_seconds;  // 0: no runtime target
  };
  const std::vector<Criterion> criteria = {
      {"SL(2) worked example", sl2_example, 1},
      {"KGB counts vs matrix oracle", kgb_vs_oracle, 1},
      {"iota injective over the corpus", iota_injective, 300},
      {"two-path agreement", two_path_agreement, 0},
      {"simply transitive fibers", simply_transitive, 0},
      {"basepoint coherence", basepoint_coherence, 0},
      {"Cayley character diagram", cayley_diagram, 0},
      {"tempiric calculus", tempiric_calculus, 0},
      {"termination and wall-order invariance", termination, 0},
      {"largeness", largeness, 0},
  };
  // Shared corpus construction is timed separately from the criteria that use it.
  auto build_start = std::chrono::steady_clock::now();
  corpus();
  double build = std::chrono::duration<double>(std::chrono::steady_clock::now() - build_start).count();
  std::cout << "corpus: " << corpus().size() << " groups built in " << build << " s\n";

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(o);
    } catch (const std::exception& ex) {
      o.ok = false;
      o.detail << "exception: " << ex.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].limit_seconds > 0 && secs >= criteria[i].limit_seconds) {
      o.ok = false;
      o.detail << "; runtime " << secs << " s over the " << criteria[i].limit_seconds << " s limit";
    }
    failures += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].name << ": " << o.detail.str() << " ("
              << secs << " s)\n";
  }
  return failures == 0 ? 0 : 1;
}
