#include "selftest.hpp"

#include "json_io.hpp"
#include "lkt/corpus.hpp"
#include "lkt/oracle.hpp"

#include <atomic>
#include <functional>
#include <set>
#include <thread>

namespace lkt::cli {

namespace {

struct Tally {
  std::string invariant;
  std::size_t checked = 0, failures = 0;
  std::string first_failure;
  void check(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
};

bool is_zero(const IVec& v) {
  for (const auto& c : v)
    if (c != 0) return false;
  return true;
}

void check_fibers(const Kgb& kgb, Tally& t) {
  for (std::size_t k = 0; k < kgb.nfibers(); ++k) {
    int kk = static_cast<int>(k);
    auto points = kgb.enumerate_fiber(kk);
    const FiniteAbelianGroup& u = kgb.u_tau(kk);
    std::set<IVec> coords;
    for (const auto& x : points) coords.insert(u.reduce(kgb.d_tau(x)));
    t.check(Int(points.size()) == u.order() && coords.size() == points.size() && u.is_zero(kgb.d_tau(kgb.basepoint(kk))),
            "fiber " + std::to_string(k));
  }
}

void check_coherence(const Kgb& kgb, Tally& t) {
  for (std::size_t k = 0; k < kgb.nfibers(); ++k) {
    KgbElement xb = kgb.basepoint(static_cast<int>(k));
    for (std::size_t s = 0; s < kgb.weyl().nsimple(); ++s) {
      RootType type = kgb.root_type(static_cast<int>(k), static_cast<int>(s));
      if (type == RootType::Real) continue;
      KgbElement y = type == RootType::Imaginary ? kgb.cayley(static_cast<int>(s), xb) : kgb.cross_simple(s, xb);
      t.check(y == kgb.basepoint(y.fiber), "fiber " + std::to_string(k) + " simple root " + std::to_string(s));
    }
  }
}

void check_cayley_diagram(const Kgb& kgb, Tally& t) {
  for (std::size_t k = 0; k < kgb.nfibers(); ++k) {
    int kk = static_cast<int>(k);
    FiniteAbelianGroup du = dual_group(kgb.u_tau(kk));
    for (int r : kgb.fiber(kk).imaginary) {
      std::set<IVec> kernel;
      for (const auto& c : quotient_kernel(kgb, kk, r)) kernel.insert(du.reduce(c));
      t.check(kernel == std::set<IVec>{du.zero(), du.reduce(m_bar(kgb, kk, r))}, "quotient kernel, root " + std::to_string(r));
      if (r >= static_cast<int>(kgb.datum().semisimple_rank())) continue;
      const FiniteAbelianGroup& target = kgb.u_tau(cayley_fiber(kgb, kk, r));
      for (const auto& x : kgb.enumerate_fiber(kk))
        if (kgb.is_noncompact(x, r))
          t.check(kgb.d_tau(kgb.cayley(r, x)) == target.reduce(cayley_char_map(kgb, kk, r, kgb.d_tau(x))), str(x));
    }
  }
}

void check_tempiric(const Context& ctx, Tally& t) {
  for (const auto& lambda : lambda_grid(ctx.datum()))
    for (const auto& p : parameters_with_lambda(ctx, lambda)) {
      LParameter c = tempiric_reduce(ctx, p);
      bool ok = tempiric_reduce(ctx, c) == c && is_tempiric(ctx, p) == vanishes_on_split_part(ctx, p);
      std::set<KgbElement> xs;
      TempiricPacket pk = tempiric_packet(ctx, c);
      for (const auto& e : pk.entries) xs.insert(e.param.x);
      t.check(ok && xs.size() == pk.entries.size(), str(p));
    }
}

// iota, two paths, step bound, wall order, finality and largeness in one pass over the corpus parameters.
void check_lkt(const Context& ctx, Tally& iota_t, Tally& paths, Tally& bound, Tally& order, Tally& large) {
  for (const auto& p : corpus_parameters(ctx)) {
    Subgroup f = final_characters(ctx, p);
    for (const auto& chi : f.group.elements()) {
      const std::string where = str(p) + " chi=" + str(chi);
      LktResult r;
      try {
        r = lowest_k_types(ctx, p, chi);
        paths.check(true, where);
      } catch (const CrossCheckFailure& e) {
        paths.check(false, where + ": " + e.what());
        continue;
      }
      ResMap rm = res_map(ctx, r.run);
      iota_t.check(iota(rm).injective() && rm.hom.surjective(), where);
      bound.check(r.run.loop_steps <= r.run.step_bound, where);
      std::set<std::string> a, b;
      for (const auto& e : r.entries) a.insert(atlas_key(ctx, e.param));
      for (const auto& e : lowest_k_types(ctx, p, chi, WallOrder::Greatest).entries) b.insert(atlas_key(ctx, e.param));
      order.check(a == b, where);
      for (const auto& e : r.entries)
        if (is_zero(chi) && is_zero(e.chi)) large.check(e.large, where);
    }
  }
  for (std::size_t k = 0; k < ctx.group().nfibers(); ++k)
    large.check(largeness_check(ctx.group(), ctx.group().basepoint(static_cast<int>(k))), "basepoint " + std::to_string(k));
}

std::vector<Tally> run_group(const GroupCase& g) {
  Context ctx(inner_class_of(g));
  std::vector<Tally> out(10);
  const char* names[] = {"grading_tables", "simply_transitive", "basepoint_coherence", "cayley_diagram", "tempiric",
                         "iota_injective", "two_path_agreement", "step_bound", "wall_order", "largeness"};
  for (std::size_t i = 0; i < out.size(); ++i) out[i].invariant = names[i];
  for (const auto& m : ctx.group().grading_consistency_report()) out[0].check(false, m);
  out[0].check(true, "");
  check_fibers(ctx.group(), out[1]);
  check_coherence(ctx.group(), out[2]);
  check_cayley_diagram(ctx.group(), out[3]);
  check_tempiric(ctx, out[4]);
  check_lkt(ctx, out[5], out[6], out[7], out[8], out[9]);
  return out;
}

Tally run_oracle(OracleGroup which, int n) {
  Isogeny iso = which == OracleGroup::SL ? Isogeny::SimplyConnected : Isogeny::Adjoint;
  MatrixOracle oracle(which, n);
  RootDatum d = build_datum("A" + std::to_string(n - 1), iso);
  Kgb kgb(make_inner_class(d, "c"));
  Tally t{"matrix_oracle"};
  std::set<int> hit;
  auto all = kgb.enumerate();
  for (const auto& x : all) {
    int c = oracle.class_of(oracle.from_tits(kgb.weyl(), kgb.strong_involution(x)));
    bool ok = c >= 0 && hit.insert(c).second;
    if (ok) {
      std::vector<int> g;
      for (std::size_t r = 0; r < d.npos(); ++r)
        g.push_back(kgb.root_type(x.fiber, static_cast<int>(r)) == RootType::Imaginary ? kgb.grading(x, static_cast<int>(r)) : -1);
      auto z = oracle.scalar_of(oracle.torus(kgb.square(x)));
      ok = g == oracle.classes()[c].gradings && z && *z == *oracle.classes()[c].square;
    }
    t.check(ok, str(x));
  }
  t.check(all.size() == oracle.classes().size(), "point count " + std::to_string(all.size()) + " vs " + std::to_string(oracle.classes().size()));
  return t;
}

json line(const std::string& group, const Tally& t) {
  json j = {{"group", group}, {"invariant", t.invariant}, {"pass", t.failures == 0}, {"checked", t.checked}, {"failures", t.failures}};
  if (t.failures) j["first_failure"] = t.first_failure;
  return j;
}

}  // namespace

bool run_selftest(const std::string& level, unsigned jobs, std::ostream& out) {
  if (level != "quick" && level != "full" && level != "oracle") throw InputError("--level must be quick, full or oracle");
  std::vector<GroupCase> groups;
  for (const auto& g : finite_corpus_groups())
    if (level != "quick" || g.spec == "A1") groups.push_back(g);

  std::vector<std::vector<Tally>> results(groups.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < groups.size();) results[i] = run_group(groups[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < std::max(1u, jobs); ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  bool ok = true;
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (const auto& t : results[i]) {
      ok = ok && t.failures == 0;
      out << line(groups[i].label, t).dump() << "\n";
    }
  if (level == "oracle")
    for (int n : {2, 3})
      for (OracleGroup g : {OracleGroup::SL, OracleGroup::PGL}) {
        Tally t = run_oracle(g, n);
        ok = ok && t.failures == 0;
        out << line(std::string(g == OracleGroup::SL ? "SL" : "PGL") + std::to_string(n), t).dump() << "\n";
      }
  out << json{{"summary", level}, {"groups", groups.size()}, {"pass", ok}}.dump() << "\n";
  return ok;
}

}  // namespace lkt::cli
