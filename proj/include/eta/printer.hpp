#pragma once

#include <string>

#include "eta/model.hpp"

namespace eta {

/// Canonical textual form; parse_ta(print_ta(ta)) reproduces `ta` and
/// printing is idempotent on parsed input.
std::string print_ta(const ThresholdAutomaton& ta);

std::string term_to_string(const LinearTerm& t, const std::vector<std::string>& params);
std::string bexpr_to_string(const BoolExpr& e, const std::vector<std::string>& params);
std::string guard_to_string(const Guard& g, const ThresholdAutomaton& ta);
std::string spec_to_string(const Specification& spec, const ThresholdAutomaton& ta);

/// Structural equality helpers used by round-trip tests.
bool bexpr_equal(const BoolExpr& a, const BoolExpr& b);
bool ta_equal(const ThresholdAutomaton& a, const ThresholdAutomaton& b);

}  // namespace eta
