#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lia/sexpr.hpp"

namespace eta::lia {

using Int = mpz_class;

/// Integer-linear polynomial: sum of coeff * var plus a constant.
struct Poly {
  std::map<int, Int> coeffs;  // var id -> nonzero coefficient
  Int constant;

  void add(int var, const Int& coeff);
  Poly& operator+=(const Poly& other);
  void negate();
  void scale(const Int& factor);
};

/// Formula over integer atoms. Ge: poly >= 0. Eq: poly == 0. Ne: poly != 0.
struct Formula {
  enum class Kind { True, False, Ge, Eq, Ne, And, Or, Not };
  Kind kind = Kind::True;
  Poly poly;
  std::vector<Formula> kids;

  static Formula mk(Kind k) {
    Formula f;
    f.kind = k;
    return f;
  }
};

using Model = std::map<int, Int>;

/// Complete decision procedure for conjunctions/disjunctions of integer
/// linear atoms (the Omega test). Returns a model on sat; values for
/// variables not mentioned default to zero and may be absent from the map.
std::optional<Model> lia_solve(const std::vector<Formula>& asserts, int num_vars);

/// Script-level protocol: declare-const/declare-fun, assert, check-sat,
/// get-model, exit; set-logic/set-option/set-info ignored. Returns the
/// printed response; `error` is set when the script was malformed.
std::string run_smt_script(const std::string& script, bool& error);

}  // namespace eta::lia
