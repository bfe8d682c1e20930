#include "eta/printer.hpp"

#include <sstream>

namespace eta {

namespace {

void append_signed(std::ostringstream& out, bool first, const Rat& coeff,
                   const std::string& symbol) {
  Rat mag = abs(coeff);
  std::string body;
  if (symbol.empty()) {
    body = rat_to_string(mag);
  } else if (mag == 1) {
    body = symbol;
  } else {
    body = rat_to_string(mag) + "*" + symbol;
  }
  if (first) {
    out << (sgn(coeff) < 0 ? "-" : "") << body;
  } else {
    out << (sgn(coeff) < 0 ? " - " : " + ") << body;
  }
}

}  // namespace

std::string term_to_string(const LinearTerm& t, const std::vector<std::string>& params) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [idx, coeff] : t.coeffs) {
    append_signed(out, first, coeff, params.at(idx));
    first = false;
  }
  if (t.constant != 0 || first) append_signed(out, first, t.constant, "");
  return out.str();
}

namespace {

const char* cmp_op_text(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
  }
  return "?";
}

void bexpr_print(std::ostringstream& out, const BoolExpr& e,
                 const std::vector<std::string>& params, bool parenthesize) {
  switch (e.kind) {
    case BoolExpr::Kind::Cmp:
      out << term_to_string(e.cmp.lhs, params) << " " << cmp_op_text(e.cmp.op) << " "
          << term_to_string(e.cmp.rhs, params);
      return;
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or: {
      if (e.children.empty()) {
        out << (e.kind == BoolExpr::Kind::And ? "true" : "false");
        return;
      }
      const char* joiner = e.kind == BoolExpr::Kind::And ? " && " : " || ";
      if (parenthesize) out << "(";
      for (size_t i = 0; i < e.children.size(); ++i) {
        if (i) out << joiner;
        bexpr_print(out, *e.children[i], params, e.children[i]->kind != BoolExpr::Kind::Cmp);
      }
      if (parenthesize) out << ")";
      return;
    }
  }
}

}  // namespace

std::string bexpr_to_string(const BoolExpr& e, const std::vector<std::string>& params) {
  std::ostringstream out;
  bexpr_print(out, e, params, false);
  return out.str();
}

std::string guard_to_string(const Guard& g, const ThresholdAutomaton& ta) {
  if (g.atoms.empty()) return "true";
  std::ostringstream out;
  for (size_t i = 0; i < g.atoms.size(); ++i) {
    const GuardAtom& atom = g.atoms[i];
    if (i) out << " && ";
    out << ta.shared.at(atom.var) << (atom.kind == GuardKind::Lower ? " >= " : " < ")
        << term_to_string(atom.threshold, ta.params);
  }
  return out.str();
}

std::string print_ta(const ThresholdAutomaton& ta) {
  std::ostringstream out;
  out << "ta " << ta.name << "\n";
  if (!ta.params.empty()) {
    out << "params";
    for (const auto& p : ta.params) out << " " << p;
    out << "\n";
  }
  if (ta.resilience && !(ta.resilience->kind == BoolExpr::Kind::And &&
                         ta.resilience->children.empty()))
    out << "resilience " << bexpr_to_string(*ta.resilience, ta.params) << "\n";
  out << "size " << term_to_string(ta.size_term, ta.params) << "\n";
  if (!ta.extra_thresholds.empty()) {
    out << "thresholds ";
    for (size_t i = 0; i < ta.extra_thresholds.size(); ++i) {
      if (i) out << ", ";
      out << term_to_string(ta.extra_thresholds[i], ta.params);
    }
    out << "\n";
  }
  if (!ta.shared.empty()) {
    out << "shared";
    for (const auto& x : ta.shared) out << " " << x;
    out << "\n";
  }
  out << "locations";
  for (size_t l = 0; l < ta.locations.size(); ++l) {
    out << " " << ta.locations[l];
    if (ta.is_initial(static_cast<int>(l))) out << "*";
  }
  out << "\n";
  for (const Rule& r : ta.rules) {
    out << "rule " << r.name << ": " << ta.locations.at(r.from) << " -> "
        << ta.locations.at(r.to) << " when " << guard_to_string(r.guard, ta);
    bool any_update = false;
    for (size_t j = 0; j < r.update.size(); ++j) {
      if (r.update[j] == 0) continue;
      out << (any_update ? ", " : " update ");
      out << ta.shared[j] << (r.update[j] > 0 ? " += " : " -= ") << std::abs(r.update[j]);
      any_update = true;
    }
    if (!r.resets.empty()) {
      out << " reset ";
      for (size_t i = 0; i < r.resets.size(); ++i) {
        if (i) out << ", ";
        out << ta.shared.at(r.resets[i]);
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string spec_to_string(const Specification& spec, const ThresholdAutomaton& ta) {
  std::ostringstream out;
  if (const auto* gc = std::get_if<GeneralCoverabilitySpec>(&spec)) {
    out << "cover";
    for (size_t v = 0; v < gc->basis.size(); ++v) {
      out << (v ? " |" : "");
      bool first = true;
      for (size_t l = 0; l < gc->basis[v].size(); ++l) {
        if (gc->basis[v][l] == 0) continue;
        out << (first ? " " : ", ") << ta.locations[l] << ">=" << gc->basis[v][l];
        first = false;
      }
    }
    return out.str();
  }
  if (const auto* cv = std::get_if<CoverabilitySpec>(&spec)) {
    out << "cover-locs";
    for (int l : cv->positive) out << " " << ta.locations[l];
    return out.str();
  }
  const auto& rs = std::get<ReachabilitySpec>(spec);
  out << "reach ";
  for (size_t i = 0; i < rs.positive.size(); ++i) {
    if (i) out << ", ";
    out << ta.locations[rs.positive[i]] << ">0";
  }
  out << ";";
  for (size_t i = 0; i < rs.zero.size(); ++i) {
    out << (i ? ", " : " ");
    out << ta.locations[rs.zero[i]] << "=0";
  }
  return out.str();
}

bool bexpr_equal(const BoolExpr& a, const BoolExpr& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == BoolExpr::Kind::Cmp)
    return a.cmp.op == b.cmp.op && a.cmp.lhs == b.cmp.lhs && a.cmp.rhs == b.cmp.rhs;
  if (a.children.size() != b.children.size()) return false;
  for (size_t i = 0; i < a.children.size(); ++i)
    if (!bexpr_equal(*a.children[i], *b.children[i])) return false;
  return true;
}

bool ta_equal(const ThresholdAutomaton& a, const ThresholdAutomaton& b) {
  if (a.name != b.name || a.params != b.params || a.shared != b.shared ||
      a.locations != b.locations || a.initial != b.initial ||
      !(a.size_term == b.size_term) || a.rules.size() != b.rules.size())
    return false;
  if (!bexpr_equal(*a.resilience, *b.resilience)) return false;
  for (size_t i = 0; i < a.rules.size(); ++i) {
    const Rule& ra = a.rules[i];
    const Rule& rb = b.rules[i];
    if (ra.name != rb.name || ra.from != rb.from || ra.to != rb.to ||
        ra.update != rb.update || ra.resets != rb.resets ||
        ra.guard.atoms.size() != rb.guard.atoms.size())
      return false;
    for (size_t j = 0; j < ra.guard.atoms.size(); ++j) {
      const GuardAtom& ga = ra.guard.atoms[j];
      const GuardAtom& gb = rb.guard.atoms[j];
      if (ga.var != gb.var || ga.kind != gb.kind || !(ga.threshold == gb.threshold))
        return false;
    }
  }
  return true;
}

}  // namespace eta
