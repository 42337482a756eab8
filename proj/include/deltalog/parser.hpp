#pragma once

#include <map>
#include <string>

#include "deltalog/ast.hpp"
#include "deltalog/boolean_delta.hpp"

namespace deltalog {

/// Parse program text (UTF-8, `%` line comments). Infers EDB/IDB predicates,
/// lowers implicit existentials, and builds per-predicate defining formulas
/// over the canonical schema. Does not run safety/stratification checks.
Program parse_program(const std::string& text);

/// Parse a fact file (`pred(c1,...,cn).` lines) against a program. Facts must
/// name EDB predicates with consistent arities.
std::map<std::string, Relation> parse_facts(const std::string& text, const Program& p);

/// Parse a delta file (`+fact.` inserts, `-fact.` deletes). Only EDB
/// predicates; no fact may carry both signs.
std::map<std::string, BooleanDelta> parse_delta(const std::string& text, const Program& p);

}  // namespace deltalog
