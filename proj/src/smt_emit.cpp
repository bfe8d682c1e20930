#include "eta/smt_emit.hpp"

#include <sstream>

namespace eta {

namespace {

Int denominator_lcm(const LinearTerm& t) {
  Int l = t.constant.get_den();
  for (const auto& [idx, coeff] : t.coeffs) {
    (void)idx;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), coeff.get_den().get_mpz_t());
  }
  return l;
}

std::string smt_int(const Int& v) {
  if (v < 0) return "(- " + Int(-v).get_str() + ")";
  return v.get_str();
}

// Ne is emitted as a negated equality; callers wrap with (not ...).
const char* op_symbol(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    case CmpOp::Eq:
    case CmpOp::Ne: return "=";
  }
  return "?";
}

}  // namespace

std::string smt_int_term(const LinearTerm& t, const std::vector<std::string>& names) {
  std::vector<std::string> parts;
  for (const auto& [idx, coeff] : t.coeffs) {
    Int c(coeff.get_num());
    if (c == 1) {
      parts.push_back(names.at(idx));
    } else {
      parts.push_back("(* " + smt_int(c) + " " + names.at(idx) + ")");
    }
  }
  if (t.constant != 0 || parts.empty()) parts.push_back(smt_int(Int(t.constant.get_num())));
  if (parts.size() == 1) return parts.front();
  std::ostringstream out;
  out << "(+";
  for (const auto& p : parts) out << " " << p;
  out << ")";
  return out.str();
}

std::string smt_cmp_var_term(const std::string& var, CmpOp op, const LinearTerm& t,
                             const std::vector<std::string>& names) {
  Int l = denominator_lcm(t);
  LinearTerm scaled = t;
  scaled *= Rat(l);
  std::string lhs = l == 1 ? var : "(* " + l.get_str() + " " + var + ")";
  std::string body = "(" + std::string(op_symbol(op)) + " " + lhs + " " +
                     smt_int_term(scaled, names) + ")";
  if (op == CmpOp::Ne) return "(not " + body + ")";
  return body;
}

std::string smt_cmp_terms(const LinearTerm& lhs, CmpOp op, const LinearTerm& rhs,
                          const std::vector<std::string>& names) {
  LinearTerm diff = lhs - rhs;
  Int l = denominator_lcm(diff);
  diff *= Rat(l);
  std::string body = "(" + std::string(op_symbol(op)) + " " + smt_int_term(diff, names) +
                     " 0)";
  if (op == CmpOp::Ne) return "(not " + body + ")";
  return body;
}

std::string smt_cmp_varsum_term(const std::vector<std::string>& vars, CmpOp op,
                                const LinearTerm& t,
                                const std::vector<std::string>& names) {
  Int l = denominator_lcm(t);
  LinearTerm scaled = t;
  scaled *= Rat(l);
  std::string sum;
  if (vars.size() == 1) {
    sum = vars.front();
  } else {
    sum = "(+";
    for (const auto& v : vars) sum += " " + v;
    sum += ")";
  }
  std::string lhs = l == 1 ? sum : "(* " + l.get_str() + " " + sum + ")";
  std::string body = "(" + std::string(op_symbol(op)) + " " + lhs + " " +
                     smt_int_term(scaled, names) + ")";
  if (op == CmpOp::Ne) return "(not " + body + ")";
  return body;
}

std::string smt_bexpr(const BoolExpr& e, const std::vector<std::string>& names) {
  switch (e.kind) {
    case BoolExpr::Kind::Cmp:
      return smt_cmp_terms(e.cmp.lhs, e.cmp.op, e.cmp.rhs, names);
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or: {
      if (e.children.empty()) return e.kind == BoolExpr::Kind::And ? "true" : "false";
      if (e.children.size() == 1) return smt_bexpr(*e.children.front(), names);
      std::ostringstream out;
      out << (e.kind == BoolExpr::Kind::And ? "(and" : "(or");
      for (const auto& child : e.children) out << " " << smt_bexpr(*child, names);
      out << ")";
      return out.str();
    }
  }
  return "true";
}

}  // namespace eta
