#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "deltalog/boolean_delta.hpp"
#include "deltalog/relation.hpp"

namespace deltalog {

/// Run the command-line tool. Data goes to `out`, diagnostics to `err`.
/// Returns the process exit code: 0 ok, 1 input error, 2 divergence or size
/// cap, 3 maintenance non-convergence, 4 property failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// One fact per line, `pred(c1,...,cn).`, tuples in canonical order.
std::string render_facts(const std::string& pred, const Relation& r);

/// DeltaFile rendering: `+` lines then `-` lines.
std::string render_delta(const std::string& pred, const BooleanDelta& d);

}  // namespace deltalog
