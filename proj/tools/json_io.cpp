#include "json_io.hpp"

#include <fstream>
#include <sstream>

namespace lkt::cli {

Rat parse_rational(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_string()) throw InputError("expected a rational as an integer or a string like \"1/3\", got " + j.dump());
  Rat r;
  const std::string s = j.get<std::string>();
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0) throw InputError("bad rational \"" + s + "\"");
  r.canonicalize();
  return r;
}

QVec parse_qvec(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of rationals, got " + j.dump());
  QVec out;
  for (const auto& e : j) out.push_back(parse_rational(e));
  return out;
}

IVec parse_ivec(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of integers, got " + j.dump());
  IVec out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw InputError("expected an integer, got " + e.dump());
    out.push_back(Int(e.get<long>()));
  }
  return out;
}

IntMatrix parse_matrix(const json& j) {
  if (!j.is_array()) throw InputError("expected a matrix as an array of rows, got " + j.dump());
  std::vector<IVec> rows;
  for (const auto& r : j) rows.push_back(parse_ivec(r));
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (const auto& r : rows)
    if (r.size() != cols) throw InputError("matrix rows have different lengths");
  return IntMatrix::from_rows(rows, cols);
}

json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": JSON syntax error");
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

RootDatum parse_group(const std::string& group, const std::string& isogeny) {
  if (!group.empty() && group.front() == '{') {
    json j = parse_text(group, "--group");
    if (!j.contains("simple_roots") || !j.contains("simple_coroots"))
      throw InputError("--group JSON needs simple_roots and simple_coroots");
    return build_datum(parse_matrix(j["simple_roots"]), parse_matrix(j["simple_coroots"]));
  }
  return build_datum(group, parse_isogeny(isogeny));
}

InnerClass parse_inner(const RootDatum& d, const std::string& inner) {
  if (!inner.empty() && inner.front() == '[') return make_inner_class(d, parse_matrix(parse_text(inner, "--inner")));
  return make_inner_class(d, inner);
}

LParameter parse_parameter(const Context& ctx, const json& j) {
  if (!j.is_object() || !j.contains("lambda") || !j.contains("y"))
    throw InputError("a parameter needs \"lambda\" and \"y\"");
  const json& y = j["y"];
  if (!y.is_object() || !y.contains("fiber") || !y.contains("torus") || !y["fiber"].is_number_integer())
    throw InputError("\"y\" needs an integer \"fiber\" and a \"torus\" array");
  LParameter p;
  p.lambda = parse_qvec(j["lambda"]);
  const long fiber = y["fiber"].get<long>();
  if (fiber < 0 || fiber >= static_cast<long>(ctx.dual().nfibers()))
    throw NotAnLHom("dual fiber " + std::to_string(fiber) + " does not exist");
  QVec torus = parse_qvec(y["torus"]);
  if (p.lambda.size() != ctx.datum().rank() || torus.size() != ctx.datum().rank())
    throw InputError("lambda and the torus part need " + std::to_string(ctx.datum().rank()) + " entries");
  p.y = ctx.dual().make(static_cast<int>(fiber), torus);
  validate(ctx, p);
  return p;
}

json to_json(const Rat& r) { return r.get_den() == 1 ? json(r.get_num().get_str()) : json(r.get_str()); }

json to_json(const QVec& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(to_json(r));
  return out;
}

json to_json(const IVec& v) {
  json out = json::array();
  for (const auto& c : v) out.push_back(c.fits_slong_p() ? json(c.get_si()) : json(c.get_str()));
  return out;
}

json to_json(const KgbElement& x) { return {{"fiber", x.fiber}, {"torus", to_json(x.t)}}; }

json to_json(const LParameter& p) { return {{"lambda", to_json(p.lambda)}, {"y", to_json(p.y)}}; }

json to_json(const Context& ctx, const AtlasParameter& p) {
  return {{"x", to_json(p.x)}, {"lambda", to_json(p.lambda)}, {"kappa", to_json(p.kappa)}, {"key", atlas_key(ctx, p)}};
}

json to_json(const Move& m) {
  json out = {{"kind", move_name(m.kind)}, {"fiber_before", m.fiber_before}, {"fiber_after", m.fiber_after}};
  if (m.root >= 0) out["root"] = m.root;
  if (m.weyl != 0) out["weyl"] = m.weyl;
  if (!m.shift.empty()) out["shift"] = to_json(m.shift);
  return out;
}

json to_json(const RealFormLabel& l) { return {{"z", to_json(l.z)}, {"component", l.component}}; }

}  // namespace lkt::cli
