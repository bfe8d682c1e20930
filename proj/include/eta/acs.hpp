#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "eta/abstraction.hpp"

namespace eta {

/// Abstract counter system configuration: exact location counters plus one
/// interval index per shared variable.
struct AbsConfig {
  std::vector<int> counters;
  std::vector<int8_t> intervals;

  friend auto operator<=>(const AbsConfig&, const AbsConfig&) = default;
};

/// Covering preorder: counters pointwise <=, intervals equal.
bool acs_leq(const AbsConfig& a, const AbsConfig& b);

/// True when the configuration belongs to the initial class: all processes in
/// initial locations and every shared variable in I_0.
bool acs_initial(const AbstractTa& at, const AbsConfig& c);

/// Intervals an integer in interval `i` can land in after adding
/// `delta` in {-1,0,1}; `last` is the index of the unbounded interval.
/// Ascending order.
std::vector<int> interval_targets(int i, int delta, int last);

/// Intervals a value can have come from so that adding `delta` may land in
/// interval `i`. Inverse of interval_targets. Ascending order.
std::vector<int> interval_sources(int i, int delta, int last);

/// Per shared variable, the intervals a rule application may move the
/// variable to, given its source interval. Resets go to I_0.
std::vector<std::vector<int>> interval_target_options(const AbstractTa& at,
                                                      const AbstractRule& r,
                                                      const std::vector<int8_t>& source);

/// Per shared variable, the guard-enabled intervals a source may occupy so
/// that applying the rule can produce `target`. Any empty option list means
/// no source exists; a reset variable demands target interval I_0.
std::vector<std::vector<int>> interval_source_options(const AbstractTa& at,
                                                      const AbstractRule& r,
                                                      const std::vector<int8_t>& target);

/// Cartesian product in lexicographic order. The product over zero variables
/// is one empty vector; any empty option list gives an empty product.
std::vector<std::vector<int8_t>> cross_intervals(
    const std::vector<std::vector<int>>& options);

bool acs_enabled(const AbstractTa& at, const AbstractRule& r, const AbsConfig& c);

/// One rule application: all abstract successors of `c` via rule `r`.
/// Empty when the rule is disabled.
std::vector<AbsConfig> acs_successors(const AbstractTa& at, const AbstractRule& r,
                                      const AbsConfig& c);

/// All successors over all rules, tagged with the rule index.
std::vector<std::pair<int, AbsConfig>> acs_successors(const AbstractTa& at,
                                                      const AbsConfig& c);

struct AcsPred {
  AbsConfig source;
  int rule = 0;
};

/// Minimal basis of { c : some successor of c covers `target` }: for every
/// rule the unique minimal counter vector, crossed with all interval vectors
/// whose image under the rule can equal target's intervals and which enable
/// the rule. Deterministic order: rules ascending, interval vectors
/// lexicographic.
std::vector<AcsPred> cpred_basis(const AbstractTa& at, const AbsConfig& target);

}  // namespace eta
