#include "lia/sexpr.hpp"

#include <cctype>

namespace eta::lia {

namespace {

struct Scanner {
  const std::string& text;
  size_t pos = 0;
  size_t line = 1;
  size_t col = 1;

  explicit Scanner(const std::string& t) : text(t) {}

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  char advance() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }

  void skip_trivia() {
    while (!done()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == ';') {
        while (!done() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }
};

bool symbol_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  return std::string("~!@$%^&*_-+=<>.?/").find(c) != std::string::npos;
}

Sexpr parse_one(Scanner& s);

Sexpr parse_list(Scanner& s) {
  Sexpr list;
  list.kind = Sexpr::Kind::List;
  list.line = s.line;
  list.col = s.col;
  s.advance();  // consume '('
  for (;;) {
    s.skip_trivia();
    if (s.done()) throw SexprError(list.line, list.col, "unterminated list");
    if (s.peek() == ')') {
      s.advance();
      return list;
    }
    list.items.push_back(parse_one(s));
  }
}

Sexpr parse_one(Scanner& s) {
  s.skip_trivia();
  if (s.done()) throw SexprError(s.line, s.col, "unexpected end of input");
  if (s.peek() == '(') return parse_list(s);
  if (s.peek() == ')') throw SexprError(s.line, s.col, "unexpected ')'");

  Sexpr atom;
  atom.kind = Sexpr::Kind::Atom;
  atom.line = s.line;
  atom.col = s.col;

  char c = s.peek();
  if (c == '"') {
    atom.atom += s.advance();
    while (!s.done()) {
      char d = s.advance();
      atom.atom += d;
      if (d == '"') return atom;
    }
    throw SexprError(atom.line, atom.col, "unterminated string literal");
  }
  if (c == '|') {
    atom.atom += s.advance();
    while (!s.done()) {
      char d = s.advance();
      atom.atom += d;
      if (d == '|') return atom;
    }
    throw SexprError(atom.line, atom.col, "unterminated quoted symbol");
  }
  if (c == ':') {
    atom.atom += s.advance();
    while (!s.done() && symbol_char(s.peek())) atom.atom += s.advance();
    return atom;
  }
  if (!symbol_char(c))
    throw SexprError(s.line, s.col, std::string("unexpected character '") + c + "'");
  while (!s.done() && symbol_char(s.peek())) atom.atom += s.advance();
  return atom;
}

}  // namespace

std::vector<Sexpr> parse_sexprs(const std::string& text) {
  Scanner s(text);
  std::vector<Sexpr> out;
  for (;;) {
    s.skip_trivia();
    if (s.done()) return out;
    out.push_back(parse_one(s));
  }
}

}  // namespace eta::lia
