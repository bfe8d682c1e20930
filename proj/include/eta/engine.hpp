#pragma once

#include <map>
#include <string>
#include <vector>

#include "eta/abstraction.hpp"
#include "eta/acs.hpp"
#include "eta/concretize.hpp"
#include "eta/solver_client.hpp"
#include "eta/zcs.hpp"

namespace eta {

enum class Verdict { Witness, SafeProven, BudgetExhausted };

std::string verdict_name(Verdict v);

/// Bounds on the counterexample search. The backward fixed point itself always
/// terminates; the budget binds path enumeration and discharge.
struct EngineBudget {
  size_t max_paths = 10000;  // complete error paths to discharge
  int unfold = 3;            // times a node may be revisited on one path
  double wall_seconds = 300;
  size_t jobs = 1;     // concurrent discharge queries; winner selection stays
                       // deterministic (lowest enumeration index)
  bool screen = true;  // settle paths by the in-process relaxation first;
                       // solver queries and verdicts are unchanged by it
};

struct EngineStats {
  int iterations = 0;                  // backward fixed-point rounds
  std::vector<size_t> frontier_sizes;  // new basis elements per round
  size_t nodes = 0;                    // error-graph nodes materialized
  size_t edges = 0;
  size_t kept = 0;   // anti-chain size at the fixed point
  size_t roots = 0;  // kept configurations in the initial class
  size_t paths_enumerated = 0;
  size_t solver_calls = 0;
  size_t spurious = 0;
  size_t screened = 0;  // spurious paths settled by the in-process relaxation
  bool enumeration_truncated = false;  // stopped by max_paths or the clock
  bool graph_acyclic = true;           // restricted to the root-reachable part
  bool cycles_safe = true;  // no reachable cycle edge decrements or resets
  bool upper_guard_warning = false;  // a tolerated cycle carries an upper guard
};

/// Outcome for one threshold order. SafeProven requires an empty root set, or
/// an all-spurious complete enumeration over a graph whose cycles carry
/// neither decrements nor resets; anything weaker is BudgetExhausted.
struct EngineResult {
  Verdict verdict = Verdict::SafeProven;
  DischargePath witness_abstract;            // Witness only
  WitnessPath witness;                       // its concrete realization
  std::map<std::string, Int> witness_model;  // raw solver model
  EngineStats stats;
};

/// Backward coverability over exact abstract counters (general coverability
/// specifications). `err` is the basis of the error set.
EngineResult run_acs_cover(const AbstractTa& at, const ThresholdOrder& order,
                           const std::vector<AbsConfig>& err, SolverClient& solver,
                           const EngineBudget& budget);

/// Backward coverability over occupancy configurations (location
/// coverability specifications).
EngineResult run_zcs_cover(const AbstractTa& at, const ThresholdOrder& order,
                           const std::vector<ZConfig>& err, SolverClient& solver,
                           const EngineBudget& budget);

/// Backward reachability over occupancy configurations with exact
/// predecessors and visited-state pruning.
EngineResult run_zcs_reach(const AbstractTa& at, const ThresholdOrder& order,
                           const std::vector<ZConfig>& err, SolverClient& solver,
                           const EngineBudget& budget);

/// True iff consecutive configurations are related by the abstract step
/// relation under the recorded rules.
bool acs_replays(const AbstractTa& at, const std::vector<AbsConfig>& configs,
                 const std::vector<int>& rules);
bool zcs_replays(const AbstractTa& at, const std::vector<ZConfig>& configs,
                 const std::vector<int>& rules);

}  // namespace eta
