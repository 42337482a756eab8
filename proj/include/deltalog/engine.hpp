#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deltalog/ast.hpp"
#include "deltalog/derivative.hpp"
#include "deltalog/semantics.hpp"

namespace deltalog {

enum class EngineKind { Naive, SemiNaive };
enum class MaintenanceKind { Derivative, Trivial };
/// How the adjustment step splits the combined change: shift the point for
/// the operator change (Ev1) or use the updated operator (Ev2).
enum class EvalStrategy { Ev1, Ev2 };

struct SolverConfig {
    std::size_t max_iters = 10000;
    EngineKind engine = EngineKind::SemiNaive;
    MaintenanceKind maintenance = MaintenanceKind::Derivative;
    EvalStrategy strategy = EvalStrategy::Ev1;
    /// Recompute from scratch after derivative maintenance and fall back to
    /// the trivial strategy on disagreement.
    bool validate = true;
};

struct IterationRecord {
    std::size_t stratum = 0;
    std::size_t index = 0;  // iteration within the stratum, 0-based
    /// Semi-naive: the delta applied this step. Naive: empty.
    std::map<std::string, BooleanDelta> deltas;
    /// Stratum predicates' relations before this step (a_i for step i).
    std::map<std::string, Relation> states;
    /// Tuples produced by the step, before deduplication against the state.
    std::size_t derived_total = 0;
    /// Tuples that were genuinely new this step.
    std::size_t fresh_total = 0;
};

struct Solution {
    std::map<std::string, Relation> idb;
    std::size_t iterations = 0;  // across all strata
    std::vector<IterationRecord> trace;
};

/// One application of the consequence operator for the given stratum's
/// predicates, other predicates read from `interp`.
std::map<std::string, Relation> immediate_consequence(
    const Program& p, const std::vector<std::string>& stratum,
    const Interpretation& interp, const ActiveDomain& dom);

/// Least fixpoint of the stratified program over the given EDB facts.
Solution solve(const Program& p, const std::map<std::string, Relation>& edb_facts,
               const SolverConfig& cfg);

struct MaintainResult {
    std::map<std::string, BooleanDelta> idb_delta;
    bool used_fallback = false;
    std::size_t iterations = 0;
};

/// Change to the fixpoint induced by `edb_delta`, starting from the solved
/// state `old_idb` for `old_edb_facts`.
MaintainResult maintain(const Program& p,
                        const std::map<std::string, Relation>& old_edb_facts,
                        const std::map<std::string, Relation>& old_idb,
                        const std::map<std::string, BooleanDelta>& edb_delta,
                        const SolverConfig& cfg);

/// Empty string when equal, else a description of the first difference.
std::string first_difference(const std::map<std::string, Relation>& a,
                             const std::map<std::string, Relation>& b);

}  // namespace deltalog
