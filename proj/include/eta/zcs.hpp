#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "eta/acs.hpp"

namespace eta {

/// Occupancy abstraction of a counter configuration: one bit per location
/// (counter zero or nonzero) plus one interval index per shared variable.
struct ZConfig {
  std::vector<int8_t> bits;
  std::vector<int8_t> intervals;

  friend auto operator<=>(const ZConfig&, const ZConfig&) = default;
};

/// Covering preorder: bits pointwise <=, intervals equal.
bool zcs_leq(const ZConfig& a, const ZConfig& b);

/// Bits only on initial locations, every shared variable in I_0.
bool zcs_initial(const AbstractTa& at, const ZConfig& z);

/// Occupancy projection of a counter configuration.
ZConfig zcs_project(const AbsConfig& c);

bool zcs_enabled(const AbstractTa& at, const AbstractRule& r, const ZConfig& z);

/// One rule application. The source location may empty out or stay occupied
/// (two variants when from != to), the target location becomes occupied.
/// Empty when the rule is disabled.
std::vector<ZConfig> zcs_successors(const AbstractTa& at, const AbstractRule& r,
                                    const ZConfig& z);

/// All successors over all rules, tagged with the rule index.
std::vector<std::pair<int, ZConfig>> zcs_successors(const AbstractTa& at,
                                                    const ZConfig& z);

struct ZcsPred {
  ZConfig source;
  int rule = 0;
};

/// Exact preimage of `target` under rule `rule`: every z with
/// target in successors(z). Deterministic order.
std::vector<ZcsPred> zcs_pred(const AbstractTa& at, const AbstractRule& r,
                              const ZConfig& target);

/// Minimal basis of { z : some successor of z covers `target` }. Per rule one
/// minimal bit vector (source occupied, target location free to have been
/// empty) crossed with all compatible guard-enabled interval vectors.
std::vector<ZcsPred> zcs_cpred_basis(const AbstractTa& at, const ZConfig& target);

}  // namespace eta
