#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace eta::lia {

struct SexprError : std::runtime_error {
  size_t line;
  size_t col;
  SexprError(size_t line_, size_t col_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ", col " +
                           std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

/// Minimal SMT-LIB s-expression: an atom or a list. Comments (;) and string
/// literals are handled by the tokenizer; strings become atoms with quotes.
struct Sexpr {
  enum class Kind { Atom, List };
  Kind kind = Kind::Atom;
  std::string atom;
  std::vector<Sexpr> items;
  size_t line = 0;
  size_t col = 0;

  bool is_atom(const char* s) const { return kind == Kind::Atom && atom == s; }
};

std::vector<Sexpr> parse_sexprs(const std::string& text);

}  // namespace eta::lia
