#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "deltalog/ast.hpp"
#include "deltalog/semantics.hpp"

namespace deltalog {

struct PropertyOptions {
    std::uint64_t seed = 1;
    std::size_t cases = 200;
    std::size_t max_domain = 4;  // constants 1..max_domain
    std::size_t max_depth = 5;   // random formula connective depth
};

struct PropertyReport {
    std::size_t cases_run = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Derivative condition, add/remove disjointness, sandwich bounds, and
/// regularity, over random formulas on a small fixed signature. Failing
/// formulas are shrunk to a smallest failing subformula before reporting.
PropertyReport check_random_formulas(const PropertyOptions& opt);

/// The same properties for the program's defining formulas, under random
/// EDB/IDB states and random changes.
PropertyReport check_program_formulas(const Program& p, const PropertyOptions& opt);

}  // namespace deltalog
