#pragma once

#include <map>
#include <string>
#include <vector>

#include "eta/abstraction.hpp"
#include "eta/acs.hpp"
#include "eta/solver_client.hpp"
#include "eta/zcs.hpp"
#include "lia/simplex.hpp"

namespace eta {

enum class ConcretizeMode { Cover, Reach, PlainPath };

/// Engine-neutral form of an abstract error path, ready for discharge: the
/// interval vector of every configuration, the rule per step, whether a step's
/// recorded target keeps the source location occupied (occupancy paths only),
/// and the sink's counter lower bounds (exact counters or occupancy bits).
struct DischargePath {
  std::vector<std::vector<int8_t>> intervals;  // one per configuration
  std::vector<int> rules;                      // one per step
  std::vector<int8_t> keep_source;             // one per step; all 0 for ACS
  std::vector<int> final_counters;             // sink counters or bits
};

DischargePath discharge_path_from_acs(const std::vector<AbsConfig>& configs,
                                      const std::vector<int>& rules);
DischargePath discharge_path_from_zcs(const AbstractTa& at,
                                      const std::vector<ZConfig>& configs,
                                      const std::vector<int>& rules);

/// A complete solver script plus the variable layout needed to read a model
/// back. Identical paths under identical orders produce byte-identical
/// scripts.
struct ConcretizationQuery {
  std::string script;
  ConcretizeMode mode = ConcretizeMode::PlainPath;
  size_t steps = 0;
};

/// Correspondence constraints for one abstract path: admissible parameters
/// under the order, legal initial configuration, counter flow with
/// acceleration factors, shared updates and resets, interval membership of
/// every configuration, guard re-checks for accelerated steps, occupancy
/// retention, and the mode conjunct on the final counters.
ConcretizationQuery build_concretize(const AbstractTa& at, const ThresholdOrder& order,
                                     const DischargePath& path, ConcretizeMode mode);

/// Linear relaxation of a path's concretization, as rows for the in-process
/// rational feasibility check. Every row is implied by build_concretize's
/// query under any interval labeling of the same rule sequence: memberships
/// are replaced by the rules' own guards on pre-step values, and disjunctive
/// parts (accelerated-step re-checks, non-conjunctive resilience clauses) are
/// dropped. Rational infeasibility of the rows therefore proves the path and
/// all its relabelings spurious without consulting the solver.
std::vector<lia::LinRow> build_relaxation(const AbstractTa& at,
                                          const ThresholdOrder& order,
                                          const DischargePath& path,
                                          ConcretizeMode mode);

struct DischargeResult {
  enum class Kind { Spurious, Concrete };
  Kind kind = Kind::Spurious;
  WitnessPath witness;               // Concrete only
  std::map<std::string, Int> model;  // raw solver model, Concrete only
};

/// Sends the query to the solver. Unsat means the path is spurious; sat yields
/// the extracted witness. Unknown, timeouts, and crashes raise SolverFailure.
DischargeResult discharge(const AbstractTa& at, const ThresholdOrder& order,
                          const DischargePath& path, ConcretizeMode mode,
                          SolverClient& solver);

}  // namespace eta
