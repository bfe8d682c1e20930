#pragma once

#include <stdexcept>
#include <string>

#include "eta/model.hpp"

namespace eta {

/// Syntax or semantic error with a 1-based source position.
struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(int line, int col, const std::string& message);
};

/// Parses the line-oriented automaton format. '#' starts a comment.
ThresholdAutomaton parse_ta(const std::string& text);

/// Parses a specification expression against a parsed automaton:
///   cover d0>=1, d1>=1
///   cover-locs d0, d1
///   reach d0>0; wait=0, v0=0        (or "others=0" for the rest)
Specification parse_spec(const std::string& text, const ThresholdAutomaton& ta);

}  // namespace eta
