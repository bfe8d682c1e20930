#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "eta/model.hpp"

namespace eta {

struct InadmissibleParameters : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Forward exploration of the concrete counter system at one fixed parameter
/// valuation. Configurations are stored in discovery order with parent links,
/// so any reachable configuration yields a generating path.
struct ExplorationResult {
  std::vector<long long> params;
  std::vector<ConcreteConfig> configs;
  std::vector<int> parent;       // index into configs, -1 for initial ones
  std::vector<int> parent_rule;  // rule that produced configs[i], -1 initially
  bool exhausted = false;        // full reachable set computed
  int depth_reached = 0;
};

/// All initial configurations at the valuation: every distribution of N(p)
/// processes over the initial locations, shared variables zero. Deterministic
/// order (first initial location takes N(p) processes first).
std::vector<ConcreteConfig> initial_configs(const ThresholdAutomaton& ta,
                                            const std::vector<long long>& params);

/// Breadth-first search from all initial configurations, deduplicated.
/// Throws InadmissibleParameters when the valuation fails the resilience
/// condition, is negative, or yields a non-integer or negative process count.
ExplorationResult explore(const ThresholdAutomaton& ta,
                          const std::vector<long long>& params, int depth_limit,
                          size_t node_limit = 2'000'000);

enum class OracleKind { Holds, Violated, Inconclusive };

struct OraclePath {
  std::vector<ConcreteConfig> configs;  // configs.size() == rules.size() + 1
  std::vector<int> rules;
};

struct OracleOutcome {
  OracleKind kind = OracleKind::Inconclusive;
  std::optional<OraclePath> path;  // set for Violated
  bool exhausted = false;
  size_t states = 0;
  int depth_reached = 0;
};

/// Ground-truth check of a specification at one valuation: Violated with a
/// generating path when a satisfying configuration is reachable, Holds only
/// when the exploration exhausted the reachable set, Inconclusive otherwise.
OracleOutcome oracle_check(const ThresholdAutomaton& ta,
                           const std::vector<long long>& params,
                           const Specification& spec, int depth_limit,
                           size_t node_limit = 2'000'000);

/// Replays a witness step by step under the concrete semantics: admissible
/// parameters, legal initial configuration, every accelerated firing enabled,
/// and the final configuration exactly as claimed.
bool validate_witness(const ThresholdAutomaton& ta, const WitnessPath& w);

/// All parameter vectors with every entry in [0, cap] that satisfy the
/// resilience condition and yield a nonnegative integer process count.
/// Lexicographic order.
std::vector<std::vector<long long>> enumerate_admissible(const ThresholdAutomaton& ta,
                                                         long long cap);

}  // namespace eta
