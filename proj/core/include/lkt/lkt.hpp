#pragma once

#include "lkt/atlasparams.hpp"

#include <stdexcept>
#include <vector>

namespace lkt {

struct TrailMismatch : std::logic_error {
  using std::logic_error::logic_error;
};
struct CrossCheckFailure : std::logic_error {
  using std::logic_error::logic_error;
};
struct NonTermination : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class WallOrder { Least, Greatest };

// Lockstep run: the dual parameter and the set of group-side KGB points move together.
struct LktRun {
  LParameter start, final_param;
  std::vector<Move> trail;
  std::vector<KgbElement> outputs;  // sorted
  std::size_t loop_steps = 0;       // moves after the central deformation
  std::size_t step_bound = 0;       // restricted simple roots seen plus 2|W|
};
LktRun lkt_algorithm(const Context& ctx, const LParameter& p, const IVec& u, WallOrder order = WallOrder::Least);

// Pulls a class of U at the end of the trail back to U at its start.
IVec pull_back(const Context& ctx, const std::vector<Move>& trail, const IVec& u);

// Res: final characters at the end of the trail onto those at its start.
struct ResMap {
  Subgroup source, target;
  GroupHom hom;
};
ResMap res_map(const Context& ctx, const LktRun& run);
// Dual of Res.
GroupHom iota(const ResMap& res);

// Strong real form class of x: square and component under cross actions and Cayley transforms.
struct RealFormLabel {
  QVec z;
  int component = 0;
  bool operator==(const RealFormLabel& o) const = default;
};
RealFormLabel real_form_label(const Kgb& kgb, const KgbElement& x);

// Every simple imaginary root is noncompact.
bool largeness_check(const Kgb& kgb, const KgbElement& x);

struct LktEntry {
  IVec chi;  // coordinates in U at the final fiber
  AtlasParameter param;
  RealFormLabel label;
  bool large = false;
};
struct LktResult {
  LParameter param;
  IVec chi;  // coordinates in the generator basis of final_characters(param)
  LParameter tempiric;
  std::vector<LktEntry> entries;
  LktRun run;
};
// p in standard form; chi in the generator basis of final_characters(p).
// Both the lockstep run and the Res fiber are computed and must agree.
LktResult lowest_k_types(const Context& ctx, const LParameter& p, const IVec& chi, WallOrder order = WallOrder::Least);

struct PacketEntry {
  IVec chi;  // coordinates in the generator basis of the final characters
  AtlasParameter param;
  RealFormLabel label;
};
struct TempiricPacket {
  LParameter param;  // standard form
  Subgroup characters;
  std::vector<PacketEntry> entries;
};
TempiricPacket tempiric_packet(const Context& ctx, const LParameter& p);

}  // namespace lkt
