#include "eta/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace eta {

ParseError::ParseError(int line_, int col_, const std::string& message)
    : std::runtime_error("line " + std::to_string(line_) + ", col " +
                         std::to_string(col_) + ": " + message),
      line(line_),
      col(col_) {}

namespace {

// ── tokens ─────────────────────────────────────────────────────────────────

enum class Tok {
  Ident, Number, Arrow, Ge, Le, EqEq, Ne, AndAnd, OrOr, PlusEq, MinusEq,
  Lt, Gt, Eq, Plus, Minus, Star, Slash, LParen, RParen, Comma, Colon,
  Semicolon, End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 0;
  int col = 0;
};

std::vector<Token> tokenize_line(const std::string& line, int lineno) {
  std::vector<Token> out;
  size_t i = 0;
  auto push = [&](Tok k, size_t start, size_t len) {
    out.push_back({k, line.substr(start, len), lineno, static_cast<int>(start) + 1});
  };
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = i;
      while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) ||
                                 line[i] == '_'))
        ++i;
      push(Tok::Ident, start, i - start);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i;
      while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
      push(Tok::Number, start, i - start);
      continue;
    }
    auto two = [&](const char* s) {
      return i + 1 < line.size() && line[i] == s[0] && line[i + 1] == s[1];
    };
    if (two("->")) { push(Tok::Arrow, i, 2); i += 2; continue; }
    if (two(">=")) { push(Tok::Ge, i, 2); i += 2; continue; }
    if (two("<=")) { push(Tok::Le, i, 2); i += 2; continue; }
    if (two("==")) { push(Tok::EqEq, i, 2); i += 2; continue; }
    if (two("!=")) { push(Tok::Ne, i, 2); i += 2; continue; }
    if (two("&&")) { push(Tok::AndAnd, i, 2); i += 2; continue; }
    if (two("||")) { push(Tok::OrOr, i, 2); i += 2; continue; }
    if (two("+=")) { push(Tok::PlusEq, i, 2); i += 2; continue; }
    if (two("-=")) { push(Tok::MinusEq, i, 2); i += 2; continue; }
    switch (c) {
      case '<': push(Tok::Lt, i, 1); break;
      case '>': push(Tok::Gt, i, 1); break;
      case '=': push(Tok::Eq, i, 1); break;
      case '+': push(Tok::Plus, i, 1); break;
      case '-': push(Tok::Minus, i, 1); break;
      case '*': push(Tok::Star, i, 1); break;
      case '/': push(Tok::Slash, i, 1); break;
      case '(': push(Tok::LParen, i, 1); break;
      case ')': push(Tok::RParen, i, 1); break;
      case ',': push(Tok::Comma, i, 1); break;
      case ':': push(Tok::Colon, i, 1); break;
      case ';': push(Tok::Semicolon, i, 1); break;
      default:
        throw ParseError(lineno, static_cast<int>(i) + 1,
                         std::string("unexpected character '") + c + "'");
    }
    ++i;
  }
  out.push_back({Tok::End, "", lineno, static_cast<int>(line.size()) + 1});
  return out;
}

// ── token cursor ───────────────────────────────────────────────────────────

struct Cursor {
  const std::vector<Token>* toks;
  size_t pos = 0;

  const Token& peek() const { return (*toks)[pos]; }
  const Token& next() { return (*toks)[pos++]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos;
    return true;
  }
  const Token& expect(Tok k, const std::string& what) {
    if (!at(k)) fail("expected " + what);
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(peek().line, peek().col, msg);
  }
};

// ── expressions ────────────────────────────────────────────────────────────

struct NameEnv {
  const std::vector<std::string>* params = nullptr;

  int resolve(const Token& t) const {
    for (size_t i = 0; i < params->size(); ++i)
      if ((*params)[i] == t.text) return static_cast<int>(i);
    throw ParseError(t.line, t.col, "unknown parameter '" + t.text + "'");
  }
};

Rat parse_rat(Cursor& cur) {
  const Token& num = cur.expect(Tok::Number, "a number");
  Rat value(num.text);
  if (cur.accept(Tok::Slash)) {
    const Token& den = cur.expect(Tok::Number, "a denominator");
    Rat d(den.text);
    if (d == 0) throw ParseError(den.line, den.col, "zero denominator");
    value /= d;
  }
  value.canonicalize();
  return value;
}

/// term := rational ['*' ident] | ident
LinearTerm parse_lin_term(Cursor& cur, const NameEnv& env) {
  if (cur.at(Tok::Number)) {
    Rat value = parse_rat(cur);
    if (cur.accept(Tok::Star)) {
      const Token& id = cur.expect(Tok::Ident, "a parameter name");
      return LinearTerm::parameter(env.resolve(id), value);
    }
    return LinearTerm::constant_term(value);
  }
  const Token& id = cur.expect(Tok::Ident, "a parameter name or number");
  return LinearTerm::parameter(env.resolve(id));
}

/// expr := ['-'] term (('+'|'-') term)*
LinearTerm parse_lin_expr(Cursor& cur, const NameEnv& env) {
  LinearTerm acc;
  bool negate = cur.accept(Tok::Minus);
  LinearTerm first = parse_lin_term(cur, env);
  if (negate) first *= Rat(-1);
  acc = first;
  for (;;) {
    if (cur.accept(Tok::Plus)) {
      acc += parse_lin_term(cur, env);
    } else if (cur.accept(Tok::Minus)) {
      acc -= parse_lin_term(cur, env);
    } else {
      return acc;
    }
  }
}

CmpOp parse_cmp_op(Cursor& cur) {
  switch (cur.peek().kind) {
    case Tok::Lt: cur.next(); return CmpOp::Lt;
    case Tok::Le: cur.next(); return CmpOp::Le;
    case Tok::Gt: cur.next(); return CmpOp::Gt;
    case Tok::Ge: cur.next(); return CmpOp::Ge;
    case Tok::Eq: cur.next(); return CmpOp::Eq;
    case Tok::EqEq: cur.next(); return CmpOp::Eq;
    case Tok::Ne: cur.next(); return CmpOp::Ne;
    default: cur.fail("expected a comparison operator");
  }
}

BoolExprPtr parse_bool_or(Cursor& cur, const NameEnv& env);

BoolExprPtr parse_bool_atom(Cursor& cur, const NameEnv& env) {
  if (cur.accept(Tok::LParen)) {
    BoolExprPtr inner = parse_bool_or(cur, env);
    cur.expect(Tok::RParen, "')'");
    return inner;
  }
  if (cur.at(Tok::Ident) && cur.peek().text == "true") {
    cur.next();
    return bexpr_true();
  }
  LinearTerm lhs = parse_lin_expr(cur, env);
  CmpOp op = parse_cmp_op(cur);
  LinearTerm rhs = parse_lin_expr(cur, env);
  return bexpr_cmp(std::move(lhs), op, std::move(rhs));
}

BoolExprPtr parse_bool_and(Cursor& cur, const NameEnv& env) {
  std::vector<BoolExprPtr> kids{parse_bool_atom(cur, env)};
  while (cur.accept(Tok::AndAnd)) kids.push_back(parse_bool_atom(cur, env));
  return bexpr_and(std::move(kids));
}

BoolExprPtr parse_bool_or(Cursor& cur, const NameEnv& env) {
  std::vector<BoolExprPtr> kids{parse_bool_and(cur, env)};
  while (cur.accept(Tok::OrOr)) kids.push_back(parse_bool_and(cur, env));
  return bexpr_or(std::move(kids));
}

// ── automaton sections ─────────────────────────────────────────────────────

struct Line {
  int number;
  std::vector<Token> tokens;
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::vector<Token> toks = tokenize_line(raw, number);
    if (toks.size() > 1) lines.push_back({number, std::move(toks)});
  }
  return lines;
}

Guard parse_guard(Cursor& cur, const ThresholdAutomaton& ta, const NameEnv& env) {
  Guard g;
  if (cur.at(Tok::Ident) && cur.peek().text == "true") {
    cur.next();
    return g;
  }
  for (;;) {
    const Token& var = cur.expect(Tok::Ident, "a shared variable");
    int v = ta.shared_index(var.text);
    if (v < 0)
      throw ParseError(var.line, var.col,
                       "guard variable '" + var.text + "' is not a shared variable");
    GuardAtom atom;
    atom.var = v;
    const Token& op = cur.peek();
    if (cur.accept(Tok::Ge)) {
      atom.kind = GuardKind::Lower;
    } else if (cur.accept(Tok::Lt)) {
      atom.kind = GuardKind::Upper;
    } else {
      throw ParseError(op.line, op.col, "guard operator must be >= or <");
    }
    atom.threshold = parse_lin_expr(cur, env);
    g.atoms.push_back(std::move(atom));
    if (!cur.accept(Tok::AndAnd)) return g;
  }
}

void parse_rule_line(Cursor& cur, ThresholdAutomaton& ta, const NameEnv& env) {
  Rule r;
  const Token& name = cur.expect(Tok::Ident, "a rule name");
  r.name = name.text;
  for (const Rule& other : ta.rules)
    if (other.name == r.name)
      throw ParseError(name.line, name.col, "duplicate rule name '" + r.name + "'");
  cur.expect(Tok::Colon, "':'");
  const Token& from = cur.expect(Tok::Ident, "a location");
  r.from = ta.location_index(from.text);
  if (r.from < 0)
    throw ParseError(from.line, from.col, "unknown location '" + from.text + "'");
  cur.expect(Tok::Arrow, "'->'");
  const Token& to = cur.expect(Tok::Ident, "a location");
  r.to = ta.location_index(to.text);
  if (r.to < 0) throw ParseError(to.line, to.col, "unknown location '" + to.text + "'");
  const Token& when = cur.expect(Tok::Ident, "'when'");
  if (when.text != "when") throw ParseError(when.line, when.col, "expected 'when'");
  r.guard = parse_guard(cur, ta, env);

  r.update.assign(ta.shared.size(), 0);
  if (cur.at(Tok::Ident) && cur.peek().text == "update") {
    cur.next();
    std::set<int> updated;
    for (;;) {
      const Token& var = cur.expect(Tok::Ident, "a shared variable");
      int v = ta.shared_index(var.text);
      if (v < 0)
        throw ParseError(var.line, var.col,
                         "update variable '" + var.text + "' is not a shared variable");
      if (!updated.insert(v).second)
        throw ParseError(var.line, var.col, "variable '" + var.text + "' updated twice");
      bool plus;
      if (cur.accept(Tok::PlusEq)) {
        plus = true;
      } else if (cur.accept(Tok::MinusEq)) {
        plus = false;
      } else {
        cur.fail("expected '+=' or '-='");
      }
      const Token& amount = cur.expect(Tok::Number, "an integer");
      long long a = std::stoll(amount.text);
      r.update[v] = static_cast<int>(plus ? a : -a);
      if (!cur.accept(Tok::Comma)) break;
    }
  }

  if (cur.at(Tok::Ident) && cur.peek().text == "reset") {
    cur.next();
    std::set<int> resets;
    for (;;) {
      const Token& var = cur.expect(Tok::Ident, "a shared variable");
      int v = ta.shared_index(var.text);
      if (v < 0)
        throw ParseError(var.line, var.col,
                         "reset variable '" + var.text + "' is not a shared variable");
      if (!resets.insert(v).second)
        throw ParseError(var.line, var.col, "variable '" + var.text + "' reset twice");
      if (!cur.accept(Tok::Comma)) break;
    }
    r.resets.assign(resets.begin(), resets.end());
  }

  if (!cur.at(Tok::End)) cur.fail("unexpected trailing input in rule");
  ta.rules.push_back(std::move(r));
}

}  // namespace

ThresholdAutomaton parse_ta(const std::string& text) {
  std::vector<Line> lines = split_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty input: expected 'ta NAME'");

  ThresholdAutomaton ta;
  ta.resilience = bexpr_true();

  // Pass 1: header and declarations, so later sections can come in any order.
  std::set<std::string> seen_sections;
  std::vector<Cursor> resilience_lines, size_lines, threshold_lines, rule_lines;

  for (size_t li = 0; li < lines.size(); ++li) {
    Cursor cur{&lines[li].tokens, 0};
    const Token& head = cur.expect(Tok::Ident, "a section keyword");
    const std::string& kw = head.text;
    auto once = [&](const std::string& section) {
      if (!seen_sections.insert(section).second)
        throw ParseError(head.line, head.col, "duplicate '" + section + "' section");
    };
    if (li == 0 && kw != "ta")
      throw ParseError(head.line, head.col, "input must start with 'ta NAME'");

    if (kw == "ta") {
      once("ta");
      if (li != 0) throw ParseError(head.line, head.col, "'ta' must be the first line");
      ta.name = cur.expect(Tok::Ident, "an automaton name").text;
      if (!cur.at(Tok::End)) cur.fail("unexpected trailing input after name");
    } else if (kw == "params") {
      once("params");
      while (cur.at(Tok::Ident)) ta.params.push_back(cur.next().text);
      if (!cur.at(Tok::End)) cur.fail("expected parameter names");
    } else if (kw == "shared") {
      once("shared");
      while (cur.at(Tok::Ident)) ta.shared.push_back(cur.next().text);
      if (!cur.at(Tok::End)) cur.fail("expected shared variable names");
    } else if (kw == "locations") {
      once("locations");
      while (cur.at(Tok::Ident)) {
        const Token& loc = cur.next();
        ta.locations.push_back(loc.text);
        if (cur.accept(Tok::Star))
          ta.initial.push_back(static_cast<int>(ta.locations.size()) - 1);
      }
      if (!cur.at(Tok::End)) cur.fail("expected location names");
      if (ta.locations.empty())
        throw ParseError(head.line, head.col, "at least one location is required");
    } else if (kw == "resilience") {
      once("resilience");
      resilience_lines.push_back(cur);
    } else if (kw == "size") {
      once("size");
      size_lines.push_back(cur);
    } else if (kw == "thresholds") {
      once("thresholds");
      threshold_lines.push_back(cur);
    } else if (kw == "rule") {
      rule_lines.push_back(cur);
    } else {
      throw ParseError(head.line, head.col, "unknown section '" + kw + "'");
    }
  }

  if (!seen_sections.count("ta")) throw ParseError(1, 1, "missing 'ta NAME' header");
  if (!seen_sections.count("locations"))
    throw ParseError(1, 1, "missing 'locations' section");

  NameEnv env{&ta.params};

  // Pass 2: expressions and rules, now that all names are known.
  for (Cursor cur : resilience_lines) {
    ta.resilience = parse_bool_or(cur, env);
    if (!cur.at(Tok::End)) cur.fail("unexpected trailing input in resilience");
  }
  if (!size_lines.empty()) {
    Cursor cur = size_lines.front();
    ta.size_term = parse_lin_expr(cur, env);
    if (!cur.at(Tok::End)) cur.fail("unexpected trailing input in size");
  } else {
    int n = ta.param_index("n");
    int f = ta.param_index("f");
    if (n < 0 || f < 0)
      throw ParseError(1, 1,
                       "missing 'size' section and no parameters n, f for the "
                       "default n - f");
    ta.size_term = LinearTerm::parameter(n) - LinearTerm::parameter(f);
  }
  for (Cursor cur : threshold_lines) {
    for (;;) {
      ta.extra_thresholds.push_back(parse_lin_expr(cur, env));
      if (!cur.accept(Tok::Comma)) break;
    }
    if (!cur.at(Tok::End)) cur.fail("unexpected trailing input in thresholds");
  }
  for (Cursor cur : rule_lines) parse_rule_line(cur, ta, env);

  return ta;
}

// ── specifications ─────────────────────────────────────────────────────────

namespace {

int expect_location(Cursor& cur, const ThresholdAutomaton& ta) {
  const Token& t = cur.expect(Tok::Ident, "a location name");
  int l = ta.location_index(t.text);
  if (l < 0) throw ParseError(t.line, t.col, "unknown location '" + t.text + "'");
  return l;
}

void expect_zero_literal(Cursor& cur) {
  const Token& t = cur.expect(Tok::Number, "0");
  if (t.text != "0") throw ParseError(t.line, t.col, "expected 0");
}

}  // namespace

Specification parse_spec(const std::string& text, const ThresholdAutomaton& ta) {
  size_t start = text.find_first_not_of(" \t");
  if (start == std::string::npos) throw ParseError(1, 1, "empty specification");
  size_t end = text.find_first_of(" \t", start);
  std::string keyword = text.substr(start, end == std::string::npos ? end : end - start);
  std::string rest = end == std::string::npos ? "" : text.substr(end);
  std::vector<Token> toks =
      tokenize_line(std::string(end == std::string::npos ? 0 : end, ' ') + rest, 1);
  Cursor cur{&toks, 0};

  if (keyword == "cover") {
    GeneralCoverabilitySpec spec;
    std::vector<long long> base(ta.locations.size(), 0);
    if (cur.at(Tok::End)) throw ParseError(1, 1, "cover needs at least one bound");
    for (;;) {
      int l = expect_location(cur, ta);
      cur.expect(Tok::Ge, "'>='");
      const Token& bound = cur.expect(Tok::Number, "an integer bound");
      base[l] = std::stoll(bound.text);
      if (!cur.accept(Tok::Comma)) break;
    }
    if (!cur.at(Tok::End)) cur.fail("unexpected trailing input");
    spec.basis.push_back(std::move(base));
    return spec;
  }

  if (keyword == "cover-locs") {
    CoverabilitySpec spec;
    std::set<int> locs;
    while (!cur.at(Tok::End)) {
      locs.insert(expect_location(cur, ta));
      cur.accept(Tok::Comma);
    }
    spec.positive.assign(locs.begin(), locs.end());
    return spec;
  }

  if (keyword == "reach") {
    ReachabilitySpec spec;
    std::set<int> positive, zero;
    while (!cur.at(Tok::End) && !cur.at(Tok::Semicolon)) {
      int l = expect_location(cur, ta);
      cur.expect(Tok::Gt, "'>'");
      expect_zero_literal(cur);
      positive.insert(l);
      if (!cur.accept(Tok::Comma)) cur.accept(Tok::AndAnd);
    }
    bool others = false;
    if (cur.accept(Tok::Semicolon)) {
      while (!cur.at(Tok::End)) {
        const Token& t = cur.peek();
        if (t.kind == Tok::Ident && t.text == "others") {
          cur.next();
          cur.expect(Tok::Eq, "'='");
          expect_zero_literal(cur);
          others = true;
        } else {
          int l = expect_location(cur, ta);
          cur.expect(Tok::Eq, "'='");
          expect_zero_literal(cur);
          zero.insert(l);
        }
        if (!cur.accept(Tok::Comma)) cur.accept(Tok::AndAnd);
      }
    }
    if (others)
      for (size_t l = 0; l < ta.locations.size(); ++l)
        if (!positive.count(static_cast<int>(l))) zero.insert(static_cast<int>(l));
    for (int l : positive)
      if (zero.count(l))
        throw ParseError(1, 1, "location '" + ta.locations[l] +
                                   "' is required both zero and positive");
    spec.positive.assign(positive.begin(), positive.end());
    spec.zero.assign(zero.begin(), zero.end());
    return spec;
  }

  throw ParseError(1, 1, "unknown specification '" + keyword +
                             "' (expected cover, cover-locs, or reach)");
}

}  // namespace eta
