#pragma once

#include <ostream>
#include <string>

namespace lkt::cli {

// Levels: quick (rank-one groups), full (whole corpus), oracle (full plus the matrix oracles).
// Writes one JSON line per invariant per group and returns true when all pass.
bool run_selftest(const std::string& level, unsigned jobs, std::ostream& out);

}  // namespace lkt::cli
