#pragma once

#include <string>
#include <vector>

#include "eta/model.hpp"

namespace eta {

/// SMT-LIB emission for linear terms and parameter formulas. Rational
/// coefficients are cleared per comparison: both sides are scaled by the
/// common denominator, so emitted scripts contain only integer literals.

/// `t` must have integer coefficients; names maps parameter index to symbol.
std::string smt_int_term(const LinearTerm& t, const std::vector<std::string>& names);

/// var OP term, with the term's denominators cleared (var is scaled too).
std::string smt_cmp_var_term(const std::string& var, CmpOp op, const LinearTerm& t,
                             const std::vector<std::string>& names);

/// lhs OP rhs between linear terms, cleared the same way.
std::string smt_cmp_terms(const LinearTerm& lhs, CmpOp op, const LinearTerm& rhs,
                          const std::vector<std::string>& names);

/// (v0 + v1 + ...) OP term, cleared the same way; vars must be nonempty.
std::string smt_cmp_varsum_term(const std::vector<std::string>& vars, CmpOp op,
                                const LinearTerm& t,
                                const std::vector<std::string>& names);

std::string smt_bexpr(const BoolExpr& e, const std::vector<std::string>& names);

}  // namespace eta
