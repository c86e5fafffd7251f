#include "lkt/corpus.hpp"

#include <map>

namespace lkt {

std::vector<GroupCase> corpus_groups() {
  auto sc = Isogeny::SimplyConnected;
  auto ad = Isogeny::Adjoint;
  return {
      {"A1 sc c", "A1", sc, "c"},       {"A1 ad c", "A1", ad, "c"},       {"A1.A1 sc c", "A1.A1", sc, "c"},
      {"A1.A1 sc swap", "A1.A1", sc, "swap"}, {"A2 sc c", "A2", sc, "c"},       {"A2 sc s", "A2", sc, "s"},
      {"A2 ad c", "A2", ad, "c"},       {"A2 ad s", "A2", ad, "s"},       {"B2 sc c", "B2", sc, "c"},
      {"B2 ad c", "B2", ad, "c"},       {"G2 sc c", "G2", sc, "c"},       {"A1.T1 sc s", "A1.T1", sc, "s"},
      {"A1.T1 sc c", "A1.T1", sc, "c"},
  };
}

std::vector<GroupCase> finite_corpus_groups() {
  std::vector<GroupCase> out;
  for (const auto& g : corpus_groups())
    if (g.label != "A1.T1 sc c") out.push_back(g);
  return out;
}

InnerClass inner_class_of(const GroupCase& g) {
  RootDatum d = build_datum(g.spec, g.isogeny);
  if (g.inner != "swap") return make_inner_class(d, g.inner);
  // Exchange of the two factors of a product of two equal types.
  const std::size_t n = d.rank();
  IntMatrix gamma(n, n);
  for (std::size_t i = 0; i < n; ++i) gamma(i, (i + n / 2) % n) = 1;
  return make_inner_class(d, gamma);
}

Isogeny parse_isogeny(const std::string& s) {
  if (s == "sc") return Isogeny::SimplyConnected;
  if (s == "ad") return Isogeny::Adjoint;
  throw std::invalid_argument("isogeny must be sc or ad");
}

std::vector<QVec> fundamental_weights(const RootDatum& d) {
  const std::size_t r = d.semisimple_rank();
  std::vector<QVec> out;
  if (r == 0) return out;
  QMatrix ci = *inverse(to_rational(d.cartan()));
  for (std::size_t i = 0; i < r; ++i) {
    QVec w = zeros(d.rank());
    for (std::size_t j = 0; j < r; ++j) w = add(w, scale(ci(i, j), to_rational(d.simple_roots().row(j))));
    out.push_back(w);
  }
  return out;
}

std::vector<QVec> central_directions(const RootDatum& d) {
  std::vector<QVec> out;
  if (d.semisimple_rank() == 0) {
    for (std::size_t i = 0; i < d.rank(); ++i) {
      QVec e = zeros(d.rank());
      e[i] = 1;
      out.push_back(e);
    }
    return out;
  }
  QMatrix k = rational_kernel(to_rational(d.simple_coroots()));
  for (std::size_t j = 0; j < k.cols(); ++j) out.push_back(k.col(j));
  return out;
}

std::vector<QVec> lambda_grid(const RootDatum& d) {
  std::vector<QVec> dirs;
  std::vector<std::vector<Rat>> values;
  for (const auto& w : fundamental_weights(d)) {
    dirs.push_back(w);
    values.push_back({Rat(0), Rat(1, 2), Rat(1), Rat(3, 2)});
  }
  for (const auto& z : central_directions(d)) {
    dirs.push_back(z);
    values.push_back({Rat(0), Rat(1, 2), Rat(1)});
  }
  std::vector<QVec> out{zeros(d.rank())};
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    std::vector<QVec> next;
    for (const auto& base : out)
      for (const auto& c : values[i]) next.push_back(add(base, scale(c, dirs[i])));
    out = next;
  }
  return out;
}

std::vector<LParameter> corpus_parameters(const Context& ctx) {
  std::map<std::string, LParameter> seen;
  for (const auto& lambda : lambda_grid(ctx.datum()))
    for (const auto& p : parameters_with_lambda(ctx, lambda)) {
      LParameter s = standard_form(ctx, p).param;
      seen.emplace(parameter_key(ctx, s), s);
    }
  std::vector<LParameter> out;
  for (auto& [k, p] : seen) out.push_back(p);
  return out;
}

}  // namespace lkt
