#include "lia/solver.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

#include "lia/simplex.hpp"

namespace eta::lia {

// ── Poly ───────────────────────────────────────────────────────────────────

void Poly::add(int var, const Int& coeff) {
  if (coeff == 0) return;
  Int& slot = coeffs[var];
  slot += coeff;
  if (slot == 0) coeffs.erase(var);
}

Poly& Poly::operator+=(const Poly& other) {
  constant += other.constant;
  for (const auto& [v, c] : other.coeffs) add(v, c);
  return *this;
}

void Poly::negate() {
  constant = -constant;
  for (auto& [v, c] : coeffs) c = -c;
}

void Poly::scale(const Int& factor) {
  if (factor == 0) {
    coeffs.clear();
    constant = 0;
    return;
  }
  constant *= factor;
  for (auto& [v, c] : coeffs) c *= factor;
}

namespace {

// ── integer helpers ────────────────────────────────────────────────────────

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Symmetric residue in (-m/2, m/2], m >= 2.
Int sym_mod(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (2 * r > m) r -= m;
  return r;
}

struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ── constraints ────────────────────────────────────────────────────────────

/// Sum of coeffs plus k, either == 0 or >= 0.
struct Constraint {
  std::map<int, Int> c;
  Int k;
  bool eq = false;
};

Int model_get(Model& m, int var) {
  auto it = m.find(var);
  if (it != m.end()) return it->second;
  m.emplace(var, 0);
  return Int(0);
}

/// Value of the constraint's terms excluding `skip`, under the model.
Int eval_rest(const Constraint& cn, int skip, Model& m) {
  Int acc = cn.k;
  for (const auto& [v, coeff] : cn.c)
    if (v != skip) acc += coeff * model_get(m, v);
  return acc;
}

/// Substitutes x := poly (unit-denominator affine form) in cn.
Constraint substitute(const Constraint& cn, int x, const std::map<int, Int>& coeffs,
                      const Int& constant) {
  auto it = cn.c.find(x);
  if (it == cn.c.end()) return cn;
  Int factor = it->second;
  Constraint out;
  out.eq = cn.eq;
  out.k = cn.k + factor * constant;
  for (const auto& [v, coeff] : cn.c)
    if (v != x) out.c[v] = coeff;
  for (const auto& [v, coeff] : coeffs) {
    Int& slot = out.c[v];
    slot += factor * coeff;
    if (slot == 0) out.c.erase(v);
  }
  return out;
}

// ── the Omega test ─────────────────────────────────────────────────────────

class Omega {
 public:
  Omega(int first_fresh) : next_fresh_(first_fresh) {}

  /// The rational relaxation screens the conjunction first: infeasibility
  /// carries over to the integers, and an integral feasible point settles
  /// sat outright. Only fractional-relaxation instances reach elimination.
  std::optional<Model> solve(std::vector<Constraint> cs) {
    std::vector<LinRow> rows;
    rows.reserve(cs.size());
    for (const Constraint& cn : cs) rows.push_back(LinRow{cn.c, cn.k, cn.eq});
    LpResult lp = lp_feasible(rows);
    if (!lp.feasible) return std::nullopt;
    bool integral = true;
    for (const auto& [v, q] : lp.point)
      if (q.get_den() != 1) {
        integral = false;
        break;
      }
    if (integral) {
      Model m;
      for (const auto& [v, q] : lp.point) m[v] = q.get_num();
      return m;
    }
    return solve_rec(std::move(cs), 0);
  }

 private:
  int next_fresh_;

  static constexpr int kMaxDepth = 20000;

  std::optional<Model> solve_rec(std::vector<Constraint> cs, int depth) {
    if (depth > kMaxDepth) throw InternalError("omega recursion limit exceeded");

    // Normalize; detect trivial contradictions.
    std::vector<Constraint> kept;
    kept.reserve(cs.size());
    for (Constraint& cn : cs) {
      for (auto it = cn.c.begin(); it != cn.c.end();)
        it = it->second == 0 ? cn.c.erase(it) : std::next(it);
      if (cn.c.empty()) {
        if (cn.eq ? cn.k != 0 : cn.k < 0) return std::nullopt;
        continue;
      }
      Int g = 0;
      for (const auto& [v, coeff] : cn.c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), coeff.get_mpz_t());
      if (g > 1) {
        if (cn.eq) {
          if (cn.k % g != 0) return std::nullopt;
          cn.k /= g;
        } else {
          cn.k = floor_div(cn.k, g);
        }
        for (auto& [v, coeff] : cn.c) coeff /= g;
      }
      kept.push_back(std::move(cn));
    }
    cs = std::move(kept);
    if (cs.empty()) return Model{};

    // Deduplicate: identical linear forms keep only the tightest constant.
    // Two equalities on one form with different constants are contradictory.
    std::sort(cs.begin(), cs.end(), [](const Constraint& a, const Constraint& b) {
      if (a.eq != b.eq) return a.eq > b.eq;
      if (a.c != b.c) return a.c < b.c;
      return a.k < b.k;
    });
    size_t w = 0;
    for (size_t i = 0; i < cs.size(); ++i) {
      if (w > 0 && cs[w - 1].eq == cs[i].eq && cs[w - 1].c == cs[i].c) {
        if (cs[i].eq && cs[i].k != cs[w - 1].k) return std::nullopt;
        continue;  // same form; the kept entry has the smaller k, which for
                   // inequalities is the tighter bound
      }
      if (w != i) cs[w] = std::move(cs[i]);
      ++w;
    }
    cs.resize(w);

    // Equality elimination.
    for (size_t i = 0; i < cs.size(); ++i) {
      if (!cs[i].eq) continue;
      // Unit-coefficient variable, if any.
      for (const auto& [x, a] : cs[i].c) {
        if (a != 1 && a != -1) continue;
        // a*x + rest + k = 0  =>  x = -(rest + k)/a
        std::map<int, Int> coeffs;
        Int constant = -cs[i].k;
        for (const auto& [v, coeff] : cs[i].c)
          if (v != x) coeffs[v] = -coeff;
        if (a == -1) {
          constant = -constant;
          for (auto& [v, coeff] : coeffs) coeff = -coeff;
        }
        std::vector<Constraint> rest;
        rest.reserve(cs.size() - 1);
        for (size_t j = 0; j < cs.size(); ++j)
          if (j != i) rest.push_back(substitute(cs[j], x, coeffs, constant));
        auto sub = solve_rec(std::move(rest), depth + 1);
        if (!sub) return std::nullopt;
        Int value = constant;
        for (const auto& [v, coeff] : coeffs) value += coeff * model_get(*sub, v);
        (*sub)[x] = value;
        return sub;
      }
      // No unit coefficient: Pugh's modular reduction.
      int x = 0;
      Int best = 0;
      for (const auto& [v, a] : cs[i].c) {
        Int mag = abs(a);
        if (best == 0 || mag < best) {
          best = mag;
          x = v;
        }
      }
      Int m = best + 1;
      int s = next_fresh_++;
      const Int sign = cs[i].c.at(x) > 0 ? 1 : -1;
      // x = sign * (sum_{v != x} sym_mod(a_v, m)*v  - m*s + sym_mod(k, m))
      std::map<int, Int> coeffs;
      for (const auto& [v, a] : cs[i].c)
        if (v != x) {
          Int r = sign * sym_mod(a, m);
          if (r != 0) coeffs[v] = r;
        }
      coeffs[s] = -sign * m;
      Int constant = sign * sym_mod(cs[i].k, m);
      std::vector<Constraint> rest;
      rest.reserve(cs.size());
      for (const Constraint& cn : cs) rest.push_back(substitute(cn, x, coeffs, constant));
      auto sub = solve_rec(std::move(rest), depth + 1);
      if (!sub) return std::nullopt;
      Int value = constant;
      for (const auto& [v, coeff] : coeffs) value += coeff * model_get(*sub, v);
      (*sub)[x] = value;
      return sub;
    }

    // Inequalities only: pick the variable with the cheapest elimination.
    std::map<int, std::pair<int, int>> occurrence;  // var -> (#lower, #upper)
    for (const Constraint& cn : cs)
      for (const auto& [v, a] : cn.c) {
        auto& [lo, up] = occurrence[v];
        (a > 0 ? lo : up) += 1;
      }
    int x = occurrence.begin()->first;
    long best_cost = -1;
    for (const auto& [v, counts] : occurrence) {
      long cost = static_cast<long>(counts.first) * counts.second;
      if (best_cost < 0 || cost < best_cost) {
        best_cost = cost;
        x = v;
      }
    }

    std::vector<Constraint> lowers, uppers, rest;
    for (const Constraint& cn : cs) {
      auto it = cn.c.find(x);
      if (it == cn.c.end()) {
        rest.push_back(cn);
      } else if (it->second > 0) {
        lowers.push_back(cn);
      } else {
        uppers.push_back(cn);
      }
    }

    if (lowers.empty() || uppers.empty()) {
      // Unbounded on one side: drop and pin x afterwards.
      auto sub = solve_rec(rest, depth + 1);
      if (!sub) return std::nullopt;
      Int value = 0;
      if (!lowers.empty()) {
        bool first = true;
        for (const Constraint& cn : lowers) {
          // a*x + rest >= 0  =>  x >= ceil(-rest / a)
          Int bound = ceil_div(-eval_rest(cn, x, *sub), cn.c.at(x));
          if (first || bound > value) value = bound;
          first = false;
        }
      } else if (!uppers.empty()) {
        bool first = true;
        for (const Constraint& cn : uppers) {
          // -b*x + rest >= 0  =>  x <= floor(rest / b)
          Int bound = floor_div(eval_rest(cn, x, *sub), -cn.c.at(x));
          if (first || bound < value) value = bound;
          first = false;
        }
      }
      (*sub)[x] = value;
      return sub;
    }

    bool all_exact = true;
    for (const Constraint& lo : lowers) {
      for (const Constraint& up : uppers) {
        if (lo.c.at(x) != 1 && -up.c.at(x) != 1) {
          all_exact = false;
          break;
        }
      }
      if (!all_exact) break;
    }

    auto shadow = [&](const Constraint& lo, const Constraint& up, const Int& slack) {
      // lo: a*x + P >= 0, up: -b*x + Q >= 0  =>  b*P + a*Q - slack >= 0
      const Int a = lo.c.at(x);
      const Int b = -up.c.at(x);
      Constraint out;
      out.eq = false;
      out.k = b * lo.k + a * up.k - slack;
      for (const auto& [v, coeff] : lo.c)
        if (v != x) out.c[v] = b * coeff;
      for (const auto& [v, coeff] : up.c)
        if (v != x) {
          Int& slot = out.c[v];
          slot += a * coeff;
          if (slot == 0) out.c.erase(v);
        }
      return out;
    };

    auto pin_lower = [&](Model& m) {
      bool first = true;
      Int value = 0;
      for (const Constraint& cn : lowers) {
        Int bound = ceil_div(-eval_rest(cn, x, m), cn.c.at(x));
        if (first || bound > value) value = bound;
        first = false;
      }
      m[x] = value;
    };

    if (all_exact) {
      std::vector<Constraint> next = rest;
      for (const Constraint& lo : lowers)
        for (const Constraint& up : uppers) next.push_back(shadow(lo, up, 0));
      auto sub = solve_rec(std::move(next), depth + 1);
      if (!sub) return std::nullopt;
      pin_lower(*sub);
      return sub;
    }

    // Dark shadow.
    {
      std::vector<Constraint> next = rest;
      for (const Constraint& lo : lowers)
        for (const Constraint& up : uppers) {
          const Int a = lo.c.at(x);
          const Int b = -up.c.at(x);
          next.push_back(shadow(lo, up, (a - 1) * (b - 1)));
        }
      auto sub = solve_rec(std::move(next), depth + 1);
      if (sub) {
        pin_lower(*sub);
        return sub;
      }
    }

    // Splinters: some solution hugs a lower bound.
    Int b_max = 0;
    for (const Constraint& up : uppers) b_max = std::max(b_max, Int(-up.c.at(x)));
    for (const Constraint& lo : lowers) {
      const Int a = lo.c.at(x);
      Int kmax = floor_div(a * b_max - a - b_max, b_max);
      for (Int step = 0; step <= kmax; ++step) {
        std::vector<Constraint> branch = cs;
        Constraint pin = lo;
        pin.eq = true;
        pin.k -= step;
        branch.push_back(std::move(pin));
        auto sub = solve_rec(std::move(branch), depth + 1);
        if (sub) return sub;
      }
    }
    return std::nullopt;
  }
};

// ── formula flattening ─────────────────────────────────────────────────────

Formula negate(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::True: return Formula::mk(Formula::Kind::False);
    case Formula::Kind::False: return Formula::mk(Formula::Kind::True);
    case Formula::Kind::Ge: {
      // not (p >= 0)  <=>  -p - 1 >= 0
      Formula out = Formula::mk(Formula::Kind::Ge);
      out.poly = f.poly;
      out.poly.negate();
      out.poly.constant -= 1;
      return out;
    }
    case Formula::Kind::Eq: {
      Formula out = Formula::mk(Formula::Kind::Ne);
      out.poly = f.poly;
      return out;
    }
    case Formula::Kind::Ne: {
      Formula out = Formula::mk(Formula::Kind::Eq);
      out.poly = f.poly;
      return out;
    }
    case Formula::Kind::Not: return f.kids.front();
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      Formula out =
          Formula::mk(f.kind == Formula::Kind::And ? Formula::Kind::Or : Formula::Kind::And);
      for (const Formula& kid : f.kids) out.kids.push_back(negate(kid));
      return out;
    }
  }
  throw InternalError("unreachable");
}

/// Ne(p) as the disjunction p >= 1 or -p >= 1.
Formula ne_to_or(const Poly& p) {
  Formula out = Formula::mk(Formula::Kind::Or);
  Formula hi = Formula::mk(Formula::Kind::Ge);
  hi.poly = p;
  hi.poly.constant -= 1;
  Formula lo = Formula::mk(Formula::Kind::Ge);
  lo.poly = p;
  lo.poly.negate();
  lo.poly.constant -= 1;
  out.kids.push_back(std::move(hi));
  out.kids.push_back(std::move(lo));
  return out;
}

class Search {
 public:
  explicit Search(int num_vars) : num_vars_(num_vars) {}

  std::optional<Model> run(const std::vector<Formula>& asserts) {
    std::vector<Constraint> atoms;
    std::vector<Formula> ors;
    std::vector<Formula> pending(asserts.rbegin(), asserts.rend());
    return descend(std::move(atoms), std::move(ors), std::move(pending));
  }

 private:
  int num_vars_;

  std::optional<Model> descend(std::vector<Constraint> atoms, std::vector<Formula> ors,
                               std::vector<Formula> pending) {
    while (!pending.empty()) {
      Formula f = std::move(pending.back());
      pending.pop_back();
      switch (f.kind) {
        case Formula::Kind::True: break;
        case Formula::Kind::False: return std::nullopt;
        case Formula::Kind::Ge:
        case Formula::Kind::Eq: {
          Constraint cn;
          cn.eq = f.kind == Formula::Kind::Eq;
          cn.k = f.poly.constant;
          cn.c = f.poly.coeffs;
          atoms.push_back(std::move(cn));
          break;
        }
        case Formula::Kind::Ne: ors.push_back(ne_to_or(f.poly)); break;
        case Formula::Kind::Not: pending.push_back(negate(f.kids.front())); break;
        case Formula::Kind::And:
          for (auto it = f.kids.rbegin(); it != f.kids.rend(); ++it)
            pending.push_back(*it);
          break;
        case Formula::Kind::Or: ors.push_back(std::move(f)); break;
      }
    }

    Omega omega(num_vars_);
    auto base = omega.solve(atoms);
    if (!base) return std::nullopt;
    if (ors.empty()) return base;

    Formula branch = std::move(ors.back());
    ors.pop_back();
    for (const Formula& kid : branch.kids) {
      std::vector<Formula> next_pending{kid};
      auto sub = descend(atoms, ors, std::move(next_pending));
      if (sub) return sub;
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<Model> lia_solve(const std::vector<Formula>& asserts, int num_vars) {
  Search search(num_vars);
  return search.run(asserts);
}

// ── SMT-LIB protocol ───────────────────────────────────────────────────────

namespace {

struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Session {
  std::vector<std::string> var_names;
  std::map<std::string, int> var_ids;
  std::vector<Formula> asserts;
  std::optional<Model> last_model;
  bool checked = false;

  int lookup(const Sexpr& s) const {
    auto it = var_ids.find(s.atom);
    if (it == var_ids.end())
      throw ProtocolError("unknown constant '" + s.atom + "'");
    return it->second;
  }

  Poly parse_poly(const Sexpr& s) {
    Poly p;
    if (s.kind == Sexpr::Kind::Atom) {
      bool numeric = !s.atom.empty() &&
                     (std::isdigit(static_cast<unsigned char>(s.atom[0])) ||
                      (s.atom[0] == '-' && s.atom.size() > 1 &&
                       std::isdigit(static_cast<unsigned char>(s.atom[1]))));
      if (numeric) {
        try {
          p.constant = Int(s.atom);
        } catch (const std::invalid_argument&) {
          throw ProtocolError("expected an integer literal, got '" + s.atom + "'");
        }
        return p;
      }
      p.add(lookup(s), 1);
      return p;
    }
    if (s.items.empty()) throw ProtocolError("empty term");
    const Sexpr& head = s.items.front();
    if (head.kind != Sexpr::Kind::Atom) throw ProtocolError("bad term head");
    if (head.atom == "+") {
      for (size_t i = 1; i < s.items.size(); ++i) p += parse_poly(s.items[i]);
      return p;
    }
    if (head.atom == "-") {
      if (s.items.size() < 2) throw ProtocolError("'-' needs arguments");
      p = parse_poly(s.items[1]);
      if (s.items.size() == 2) {
        p.negate();
        return p;
      }
      for (size_t i = 2; i < s.items.size(); ++i) {
        Poly q = parse_poly(s.items[i]);
        q.negate();
        p += q;
      }
      return p;
    }
    if (head.atom == "*") {
      Poly acc;
      acc.constant = 1;
      for (size_t i = 1; i < s.items.size(); ++i) {
        Poly q = parse_poly(s.items[i]);
        if (acc.coeffs.empty()) {
          Int factor = acc.constant;
          acc = q;
          acc.scale(factor);
        } else if (q.coeffs.empty()) {
          acc.scale(q.constant);
        } else {
          throw ProtocolError("nonlinear multiplication");
        }
      }
      return acc;
    }
    throw ProtocolError("unsupported arithmetic operator '" + head.atom + "'");
  }

  Formula parse_formula(const Sexpr& s) {
    if (s.kind == Sexpr::Kind::Atom) {
      if (s.atom == "true") return Formula::mk(Formula::Kind::True);
      if (s.atom == "false") return Formula::mk(Formula::Kind::False);
      throw ProtocolError("expected a boolean term, got '" + s.atom + "'");
    }
    if (s.items.empty()) throw ProtocolError("empty boolean term");
    const Sexpr& head = s.items.front();
    if (head.kind != Sexpr::Kind::Atom) throw ProtocolError("bad term head");
    const std::string& op = head.atom;

    if (op == "and" || op == "or") {
      Formula f = Formula::mk(op == "and" ? Formula::Kind::And : Formula::Kind::Or);
      for (size_t i = 1; i < s.items.size(); ++i) f.kids.push_back(parse_formula(s.items[i]));
      return f;
    }
    if (op == "not") {
      if (s.items.size() != 2) throw ProtocolError("'not' needs one argument");
      Formula f = Formula::mk(Formula::Kind::Not);
      f.kids.push_back(parse_formula(s.items[1]));
      return f;
    }
    if (op == "=>") {
      if (s.items.size() < 3) throw ProtocolError("'=>' needs two arguments");
      Formula f = Formula::mk(Formula::Kind::Or);
      for (size_t i = 1; i + 1 < s.items.size(); ++i) {
        Formula n = Formula::mk(Formula::Kind::Not);
        n.kids.push_back(parse_formula(s.items[i]));
        f.kids.push_back(std::move(n));
      }
      f.kids.push_back(parse_formula(s.items.back()));
      return f;
    }

    auto chain = [&](auto make_atom) {
      if (s.items.size() < 3) throw ProtocolError("comparison needs two arguments");
      Formula conj = Formula::mk(Formula::Kind::And);
      for (size_t i = 1; i + 1 < s.items.size(); ++i) {
        Poly a = parse_poly(s.items[i]);
        Poly b = parse_poly(s.items[i + 1]);
        conj.kids.push_back(make_atom(std::move(a), std::move(b)));
      }
      if (conj.kids.size() == 1) return std::move(conj.kids.front());
      return conj;
    };

    auto ge0 = [](Poly p) {
      Formula f = Formula::mk(Formula::Kind::Ge);
      f.poly = std::move(p);
      return f;
    };
    auto diff = [](Poly a, const Poly& b) {
      Poly nb = b;
      nb.negate();
      a += nb;
      return a;
    };

    if (op == "<=") return chain([&](Poly a, Poly b) { return ge0(diff(std::move(b), a)); });
    if (op == ">=") return chain([&](Poly a, Poly b) { return ge0(diff(std::move(a), b)); });
    if (op == "<") return chain([&](Poly a, Poly b) {
      Poly d = diff(std::move(b), a);
      d.constant -= 1;
      return ge0(std::move(d));
    });
    if (op == ">") return chain([&](Poly a, Poly b) {
      Poly d = diff(std::move(a), b);
      d.constant -= 1;
      return ge0(std::move(d));
    });
    if (op == "=") return chain([&](Poly a, Poly b) {
      Formula f = Formula::mk(Formula::Kind::Eq);
      f.poly = diff(std::move(a), b);
      return f;
    });
    if (op == "distinct") {
      if (s.items.size() != 3) throw ProtocolError("'distinct' must be binary here");
      Formula f = Formula::mk(Formula::Kind::Ne);
      f.poly = diff(parse_poly(s.items[1]), parse_poly(s.items[2]));
      return f;
    }

    throw ProtocolError("unsupported operator '" + op + "'");
  }

  void declare(const Sexpr& name, const Sexpr& sort) {
    if (name.kind != Sexpr::Kind::Atom) throw ProtocolError("bad constant name");
    if (!sort.is_atom("Int")) throw ProtocolError("only sort Int is supported");
    if (var_ids.count(name.atom))
      throw ProtocolError("constant '" + name.atom + "' already declared");
    var_ids.emplace(name.atom, static_cast<int>(var_names.size()));
    var_names.push_back(name.atom);
  }
};

}  // namespace

std::string run_smt_script(const std::string& script, bool& error) {
  std::ostringstream out;
  error = false;
  Session session;
  try {
    std::vector<Sexpr> commands = parse_sexprs(script);
    for (const Sexpr& cmd : commands) {
      if (cmd.kind != Sexpr::Kind::List || cmd.items.empty() ||
          cmd.items.front().kind != Sexpr::Kind::Atom)
        throw ProtocolError("expected a command");
      const std::string& name = cmd.items.front().atom;
      if (name == "set-logic" || name == "set-option" || name == "set-info") continue;
      if (name == "declare-const") {
        if (cmd.items.size() != 3) throw ProtocolError("declare-const needs name and sort");
        session.declare(cmd.items[1], cmd.items[2]);
        continue;
      }
      if (name == "declare-fun") {
        if (cmd.items.size() != 4 || cmd.items[2].kind != Sexpr::Kind::List ||
            !cmd.items[2].items.empty())
          throw ProtocolError("only zero-arity declare-fun is supported");
        session.declare(cmd.items[1], cmd.items[3]);
        continue;
      }
      if (name == "assert") {
        if (cmd.items.size() != 2) throw ProtocolError("assert needs one argument");
        session.asserts.push_back(session.parse_formula(cmd.items[1]));
        continue;
      }
      if (name == "check-sat") {
        session.last_model =
            lia_solve(session.asserts, static_cast<int>(session.var_names.size()));
        session.checked = true;
        out << (session.last_model ? "sat" : "unsat") << "\n";
        continue;
      }
      if (name == "get-model") {
        if (!session.checked || !session.last_model)
          throw ProtocolError("get-model without a preceding satisfiable check-sat");
        out << "(\n";
        for (size_t i = 0; i < session.var_names.size(); ++i) {
          Int value = 0;
          auto it = session.last_model->find(static_cast<int>(i));
          if (it != session.last_model->end()) value = it->second;
          out << "  (define-fun " << session.var_names[i] << " () Int ";
          if (value < 0) {
            out << "(- " << Int(-value).get_str() << ")";
          } else {
            out << value.get_str();
          }
          out << ")\n";
        }
        out << ")\n";
        continue;
      }
      if (name == "exit") break;
      throw ProtocolError("unsupported command '" + name + "'");
    }
  } catch (const std::exception& e) {
    out << "(error \"" << e.what() << "\")\n";
    error = true;
  }
  return out.str();
}

}  // namespace eta::lia
