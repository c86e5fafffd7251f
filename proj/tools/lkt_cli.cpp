#include "json_io.hpp"
#include "selftest.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <thread>

using namespace lkt;
using namespace lkt::cli;

namespace {

enum Exit { Ok = 0, InvariantFailure = 1, BadInput = 2 };

struct Options {
  std::string group, isogeny = "sc", inner = "c", z, param, level = "quick";
  bool trace = false, atlas_compat = false;
  unsigned jobs = 1;
};

std::unique_ptr<Context> make_context(const Options& o) {
  if (o.group.empty()) throw InputError("--group is required");
  return std::make_unique<Context>(parse_inner(parse_group(o.group, o.isogeny), o.inner));
}

// Letters per simple root: n noncompact, c compact, r real, C complex.
std::string grading_letters(const Kgb& kgb, const KgbElement& x) {
  std::string out;
  for (std::size_t s = 0; s < kgb.weyl().nsimple(); ++s) {
    switch (kgb.root_type(x.fiber, static_cast<int>(s))) {
      case RootType::Imaginary: out += kgb.is_noncompact(x, static_cast<int>(s)) ? 'n' : 'c'; break;
      case RootType::Real: out += 'r'; break;
      case RootType::Complex: out += 'C'; break;
    }
  }
  return out;
}

int cmd_kgb(const Options& o) {
  auto ctx = make_context(o);
  const Kgb& kgb = ctx->group();
  std::optional<QVec> z;
  if (!o.z.empty()) {
    json zj = parse_text(o.z.front() == '[' ? o.z : "[\"" + o.z + "\"]", "--z");
    z = parse_qvec(zj);
    if (z->size() != kgb.rank()) z = QVec(kgb.rank(), z->front());
  }
  std::vector<KgbElement> points = kgb.enumerate(z);
  std::sort(points.begin(), points.end(), [&](const KgbElement& a, const KgbElement& b) {
    int la = kgb.weyl().length(kgb.fiber(a.fiber).w), lb = kgb.weyl().length(kgb.fiber(b.fiber).w);
    return std::tie(la, a) < std::tie(lb, b);
  });
  std::map<KgbElement, std::size_t> id;
  for (std::size_t i = 0; i < points.size(); ++i) id[points[i]] = i;
  auto id_of = [&](const KgbElement& x) -> json {
    auto it = id.find(x);
    return it == id.end() ? json(nullptr) : json(it->second);
  };
  for (const auto& x : points) {
    const FiberData& f = kgb.fiber(x.fiber);
    json cross = json::array(), cayley = json::array();
    for (std::size_t s = 0; s < kgb.weyl().nsimple(); ++s) {
      cross.push_back(id_of(kgb.cross_simple(s, x)));
      bool noncompact = kgb.root_type(x.fiber, static_cast<int>(s)) == RootType::Imaginary && kgb.is_noncompact(x, static_cast<int>(s));
      cayley.push_back(noncompact ? id_of(kgb.cayley(static_cast<int>(s), x)) : json(nullptr));
    }
    if (o.atlas_compat) {
      std::cout << std::setw(3) << id.at(x) << ":  " << std::setw(2) << kgb.weyl().length(f.w) << "  [" << grading_letters(kgb, x)
                << "]";
      for (const auto& c : cross) std::cout << " " << std::setw(3) << c.dump();
      for (const auto& c : cayley) std::cout << " " << std::setw(4) << (c.is_null() ? "*" : c.dump());
      std::cout << "  ";
      for (int s : kgb.weyl().word(f.w)) std::cout << s + 1;
      std::cout << "\n";
      continue;
    }
    json rec = {{"id", id.at(x)},
                {"twisted_involution_word", kgb.weyl().word(f.w)},
                {"torus_part", to_json(x.t)},
                {"z", to_json(frac(kgb.square(x)))},
                {"fiber_index", x.fiber},
                {"gradings_of_simples", grading_letters(kgb, x)},
                {"cross_table", cross},
                {"cayley_table", cayley}};
    std::cout << rec.dump() << "\n";
  }
  return Ok;
}

// A parameter file holds one parameter object or an array of them.
std::vector<json> parameter_inputs(const Options& o) {
  if (o.param.empty()) throw InputError("--param is required");
  json j = read_file(o.param);
  if (j.is_array()) return std::vector<json>(j.begin(), j.end());
  return {j};
}

// Runs task on every input with --jobs threads; output keeps input order.
int for_each_input(const Options& o, const std::function<json(const Context&, const json&)>& task) {
  auto ctx = make_context(o);
  std::vector<json> inputs = parameter_inputs(o);
  std::vector<json> results(inputs.size());
  std::vector<std::exception_ptr> errors(inputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < inputs.size();) {
      try {
        results[i] = task(*ctx, inputs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, o.jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    std::cout << results[i].dump() << "\n";
  }
  return Ok;
}

json describe_parameter(const Context& ctx, const json& input) {
  LParameter p = parse_parameter(ctx, input);
  StandardForm sf = standard_form(ctx, p);
  Subgroup f = final_characters(ctx, sf.param);
  json trail = json::array();
  for (const auto& m : sf.trail) trail.push_back(to_json(m));
  json finals = json::array();
  for (const auto& c : f.group.elements())
    finals.push_back({{"chi", to_json(c)}, {"atlas", to_json(ctx, atlas_parameter(ctx, sf.param, f.parent_element(c)))}});
  std::vector<Int> orders = f.group.factors();
  return {{"param", to_json(p)},
          {"standard", is_standard(ctx, p)},
          {"standard_form", to_json(sf.param)},
          {"standard_form_trail", trail},
          {"infinitesimal_character", to_json(infinitesimal_character(ctx.datum(), p.lambda))},
          {"tempiric", is_tempiric(ctx, p)},
          {"tempiric_reduction", to_json(tempiric_reduce(ctx, p))},
          {"group_fiber", group_fiber(ctx, sf.param)},
          {"final_character_group", to_json(IVec(orders.begin(), orders.end()))},
          {"final_characters", finals}};
}

json describe_packet(const Context& ctx, const json& input) {
  TempiricPacket pk = tempiric_packet(ctx, parse_parameter(ctx, input));
  json entries = json::array();
  for (const auto& e : pk.entries)
    entries.push_back({{"chi", to_json(e.chi)},
                       {"atlas", to_json(ctx, e.param)},
                       {"real_form", to_json(e.label)},
                       {"large", largeness_check(ctx.group(), e.param.x)}});
  return {{"param", to_json(pk.param)}, {"entries", entries}};
}

json describe_lkt(const Context& ctx, const json& input, bool trace) {
  LParameter p = parse_parameter(ctx, input);
  if (!is_standard(ctx, p)) throw std::invalid_argument("parameter is not in standard form; standard form is " + str(standard_form(ctx, p).param));
  Subgroup f = final_characters(ctx, p);
  IVec chi = input.contains("chi") ? parse_ivec(input["chi"]) : f.group.zero();
  if (chi.size() != f.group.factors().size()) throw InputError("chi needs " + std::to_string(f.group.factors().size()) + " entries");
  chi = f.group.reduce(chi);
  LktResult r = lowest_k_types(ctx, p, chi);
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"chi", to_json(e.chi)}, {"atlas", to_json(ctx, e.param)}, {"real_form", to_json(e.label)}, {"large", e.large}});
  json trail = json::array();
  for (const auto& m : r.run.trail) trail.push_back(trace ? to_json(m) : json(move_name(m.kind)));
  return {{"param", to_json(p)},
          {"chi", to_json(r.chi)},
          {"tempiric", to_json(r.tempiric)},
          {"trail", trail},
          {"loop_steps", r.run.loop_steps},
          {"step_bound", r.run.step_bound},
          {"entries", entries}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lowest K-types of real reductive groups from L-parameters"};
  app.require_subcommand(1);
  Options o;
  auto add_group = [&](CLI::App* sub) {
    sub->add_option("--group", o.group, "Type string such as A2 or A1.T1, or JSON simple roots and coroots")->required();
    sub->add_option("--isogeny", o.isogeny, "sc or ad")->check(CLI::IsMember({"sc", "ad"}));
    sub->add_option("--inner", o.inner, "c, s, or a JSON matrix on cocharacters");
  };
  auto add_param = [&](CLI::App* sub) {
    add_group(sub);
    sub->add_option("--param", o.param, "JSON parameter file (object or array)")->required();
    sub->add_option("--jobs", o.jobs, "Worker threads for parameter arrays")->check(CLI::PositiveNumber);
  };
  CLI::App* kgb = app.add_subcommand("kgb", "Enumerate the KGB space as JSON lines");
  add_group(kgb);
  kgb->add_option("--z", o.z, "Central square filter: a rational or a JSON vector");
  kgb->add_flag("--atlas-compat", o.atlas_compat, "Column layout for manual comparison");
  CLI::App* param = app.add_subcommand("param", "Validate and describe parameters");
  add_param(param);
  CLI::App* packet = app.add_subcommand("packet", "Tempiric packet of a parameter");
  add_param(packet);
  CLI::App* lkt = app.add_subcommand("lkt", "Lowest K-types of a parameter and final character");
  add_param(lkt);
  lkt->add_flag("--trace", o.trace, "Print every move of the trail");
  CLI::App* selftest = app.add_subcommand("selftest", "Run the invariant suites over the corpus");
  selftest->add_option("--level", o.level, "quick, full or oracle")->check(CLI::IsMember({"quick", "full", "oracle"}));
  selftest->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? Ok : BadInput;
  }

  try {
    if (kgb->parsed()) return cmd_kgb(o);
    if (param->parsed()) return for_each_input(o, describe_parameter);
    if (packet->parsed()) return for_each_input(o, describe_packet);
    if (lkt->parsed())
      return for_each_input(o, [&](const Context& ctx, const json& in) { return describe_lkt(ctx, in, o.trace); });
    if (selftest->parsed()) return run_selftest(o.level, o.jobs, std::cout) ? Ok : InvariantFailure;
  } catch (const CrossCheckFailure& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return InvariantFailure;
  } catch (const TrailMismatch& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return InvariantFailure;
  } catch (const NotAnLHom& e) {
    std::cerr << "not an L-homomorphism: " << e.what() << "\n";
    return BadInput;
  } catch (const NotFinal& e) {
    std::cerr << "character is not final: " << e.what() << "\n";
    return BadInput;
  } catch (const InfiniteFiber& e) {
    std::cerr << "infinite fiber: " << e.what() << " (pass --z to select a central square)\n";
    return BadInput;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return BadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return BadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return InvariantFailure;
  }
  return Ok;
}
