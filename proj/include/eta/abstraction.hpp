#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "eta/model.hpp"
#include "eta/solver_client.hpp"

namespace eta {

/// Guard thresholds plus the constants 0 and 1, deduplicated syntactically
/// and sorted by the canonical term order.
struct ThresholdSet {
  std::vector<LinearTerm> items;
};

ThresholdSet collect_thresholds(const ThresholdAutomaton& ta);

/// A total preorder on the thresholds: blocks are ordered ascending, members
/// of one block are equal. Satisfiable together with the resilience condition.
struct ThresholdOrder {
  std::vector<std::vector<LinearTerm>> blocks;
  BoolExprPtr constraint;       // equalities within, strict < between blocks
  BoolExprPtr strengthened_rc;  // resilience && constraint && params >= 0

  std::string text(const std::vector<std::string>& params) const;
};

struct NoAdmissibleParameters : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AbstractionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// All threshold orders realizable under the resilience condition, found by
/// ordered-partition search with solver pruning. Deterministic result order.
/// Throws NoAdmissibleParameters when the resilience condition alone is
/// unsatisfiable over nonnegative parameters.
std::vector<ThresholdOrder> enumerate_orders(const ThresholdAutomaton& ta,
                                             const ThresholdSet& thresholds,
                                             SolverClient& solver);

/// The order realized at one concrete admissible valuation.
ThresholdOrder order_at(const ThresholdAutomaton& ta, const ThresholdSet& thresholds,
                        const std::vector<long long>& params);

/// Parametric interval domain for one threshold order. boundaries[i] is the
/// lower bound of interval I_i; boundaries[0] is the constant 0 and the last
/// interval is unbounded. Thresholds placed strictly below 0 by the order map
/// to index -1 (lower guards on them are trivially true, upper ones false).
struct AbstractDomain {
  std::vector<LinearTerm> boundaries;
  std::map<LinearTerm, int, LinearTermLess> index_of;

  int size() const { return static_cast<int>(boundaries.size()); }
};

AbstractDomain build_domain(const ThresholdOrder& order);

/// Rule with guards translated to per-variable sets of allowed intervals.
struct AbstractRule {
  int index = 0;  // position in ta.rules
  int from = 0;
  int to = 0;
  std::vector<int> update;
  std::vector<int> resets;
  std::vector<uint64_t> allowed;  // per shared variable, bit i = interval I_i
  bool has_upper_atom = false;
};

struct AbstractTa {
  const ThresholdAutomaton* ta = nullptr;
  AbstractDomain domain;
  std::vector<AbstractRule> rules;

  int num_locations() const { return static_cast<int>(ta->locations.size()); }
  int num_shared() const { return static_cast<int>(ta->shared.size()); }
  int num_intervals() const { return domain.size(); }
  uint64_t full_mask() const;
};

/// Throws AbstractionError on updates outside {-1,0,1} or domains over 64
/// intervals.
AbstractTa abstract_ta(const ThresholdAutomaton& ta, const AbstractDomain& domain);

}  // namespace eta
