#pragma once

#include "lkt/corpus.hpp"
#include "lkt/lkt.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace lkt::cli {

using nlohmann::json;

// Malformed command-line or file input; exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rat parse_rational(const json& j);
QVec parse_qvec(const json& j);
IVec parse_ivec(const json& j);
IntMatrix parse_matrix(const json& j);
// Parses text, reporting the line and column of a syntax error.
json parse_text(const std::string& text, const std::string& source);
json read_file(const std::string& path);

// --group is a type string such as "A2" or "A1.T1", or JSON {"simple_roots": rows, "simple_coroots": rows}.
RootDatum parse_group(const std::string& group, const std::string& isogeny);
// --inner is c, s, or a JSON matrix acting on cocharacters.
InnerClass parse_inner(const RootDatum& d, const std::string& inner);

// {"lambda": [...], "y": {"fiber": k, "torus": [...]}, "chi": [...]}; chi is optional.
LParameter parse_parameter(const Context& ctx, const json& j);

json to_json(const Rat& r);
json to_json(const QVec& v);
json to_json(const IVec& v);
json to_json(const KgbElement& x);
json to_json(const LParameter& p);
json to_json(const Context& ctx, const AtlasParameter& p);
json to_json(const Move& m);
json to_json(const RealFormLabel& l);

}  // namespace lkt::cli
