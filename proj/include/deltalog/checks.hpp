#pragma once

#include "deltalog/ast.hpp"

namespace deltalog {

/// Every rule variable must be bound by a positive Base atom within its
/// scope. Throws CheckError naming the rule and variable otherwise.
void check_safety(const Program& p);

/// Accepts iff every cycle of the predicate dependency graph has even total
/// negation parity; fills p.strata with SCCs in topological order (IDB only).
/// Throws CheckError naming an offending cycle otherwise.
void check_parity_stratification(Program& p);

/// Convenience: both checks in order.
void check_program(Program& p);

}  // namespace deltalog
