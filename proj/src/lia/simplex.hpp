#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

#include "lia/solver.hpp"

namespace eta::lia {

/// One row of a linear system: sum of coeffs plus k, either == 0 or >= 0.
struct LinRow {
  std::map<int, Int> c;
  Int k;
  bool eq = false;
};

struct LpResult {
  bool feasible = false;
  std::map<int, mpq_class> point;  // assignment on sat; absent vars are zero
};

/// Exact rational feasibility of a conjunction of rows, decided with the
/// bounded-tableau simplex under Bland's rule. An infeasible answer carries
/// over to the integers; a feasible point may be fractional.
LpResult lp_feasible(const std::vector<LinRow>& rows);

}  // namespace eta::lia
