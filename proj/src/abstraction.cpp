#include "eta/abstraction.hpp"

#include <algorithm>
#include <sstream>

#include "eta/printer.hpp"
#include "eta/smt_emit.hpp"

namespace eta {

ThresholdSet collect_thresholds(const ThresholdAutomaton& ta) {
  std::vector<LinearTerm> items;
  items.push_back(LinearTerm::constant_term(Rat(0)));
  items.push_back(LinearTerm::constant_term(Rat(1)));
  for (const Rule& r : ta.rules)
    for (const GuardAtom& atom : r.guard.atoms) items.push_back(atom.threshold);
  for (const LinearTerm& t : ta.extra_thresholds) items.push_back(t);
  std::sort(items.begin(), items.end(), LinearTermLess());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return ThresholdSet{std::move(items)};
}

std::string ThresholdOrder::text(const std::vector<std::string>& params) const {
  std::ostringstream out;
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (b) out << " < ";
    for (size_t i = 0; i < blocks[b].size(); ++i) {
      if (i) out << " = ";
      out << term_to_string(blocks[b][i], params);
    }
  }
  return out.str();
}

namespace {

BoolExprPtr params_nonneg(size_t nparams) {
  std::vector<BoolExprPtr> kids;
  for (size_t i = 0; i < nparams; ++i)
    kids.push_back(bexpr_cmp(LinearTerm::parameter(static_cast<int>(i)), CmpOp::Ge,
                             LinearTerm::constant_term(Rat(0))));
  return bexpr_and(std::move(kids));
}

BoolExprPtr order_constraint(const std::vector<std::vector<LinearTerm>>& blocks) {
  std::vector<BoolExprPtr> kids;
  for (size_t b = 0; b < blocks.size(); ++b) {
    for (size_t i = 1; i < blocks[b].size(); ++i)
      kids.push_back(bexpr_cmp(blocks[b][0], CmpOp::Eq, blocks[b][i]));
    if (b + 1 < blocks.size())
      kids.push_back(bexpr_cmp(blocks[b][0], CmpOp::Lt, blocks[b + 1][0]));
  }
  return bexpr_and(std::move(kids));
}

void finish_order(ThresholdOrder& order, const ThresholdAutomaton& ta) {
  for (auto& block : order.blocks) std::sort(block.begin(), block.end(), LinearTermLess());
  order.constraint = order_constraint(order.blocks);
  order.strengthened_rc =
      bexpr_and({ta.resilience, order.constraint, params_nonneg(ta.params.size())});
}

struct OrderSearch {
  const ThresholdAutomaton& ta;
  const std::vector<LinearTerm>& items;  // placement order: 0, 1, then the rest
  SolverClient& solver;
  std::vector<std::vector<LinearTerm>> blocks;
  std::vector<ThresholdOrder> found;

  bool blocks_satisfiable() {
    std::ostringstream script;
    script << "(set-logic QF_LIA)\n";
    for (const std::string& p : ta.params) script << "(declare-const " << p << " Int)\n";
    BoolExprPtr claim = bexpr_and(
        {ta.resilience, order_constraint(blocks), params_nonneg(ta.params.size())});
    script << "(assert " << smt_bexpr(*claim, ta.params) << ")\n(check-sat)\n";
    return solver.check(script.str()).kind == SolverResponse::Kind::Sat;
  }

  void place(size_t next) {
    if (!blocks_satisfiable()) return;
    if (next == items.size()) {
      ThresholdOrder order;
      order.blocks = blocks;
      finish_order(order, ta);
      found.push_back(std::move(order));
      return;
    }
    const LinearTerm& item = items[next];
    for (size_t b = 0; b < blocks.size(); ++b) {
      blocks[b].push_back(item);
      place(next + 1);
      blocks[b].pop_back();
    }
    for (size_t gap = 0; gap <= blocks.size(); ++gap) {
      blocks.insert(blocks.begin() + gap, {item});
      place(next + 1);
      blocks.erase(blocks.begin() + gap);
    }
  }
};

}  // namespace

std::vector<ThresholdOrder> enumerate_orders(const ThresholdAutomaton& ta,
                                             const ThresholdSet& thresholds,
                                             SolverClient& solver) {
  // Base admissibility check, separate so the error is attributable to RC.
  {
    std::ostringstream script;
    script << "(set-logic QF_LIA)\n";
    for (const std::string& p : ta.params) script << "(declare-const " << p << " Int)\n";
    BoolExprPtr claim = bexpr_and({ta.resilience, params_nonneg(ta.params.size())});
    script << "(assert " << smt_bexpr(*claim, ta.params) << ")\n(check-sat)\n";
    if (solver.check(script.str()).kind != SolverResponse::Kind::Sat)
      throw NoAdmissibleParameters("resilience condition admits no parameters");
  }

  // Place 0 first and 1 second so the fixed 0 < 1 relation prunes early.
  LinearTerm zero = LinearTerm::constant_term(Rat(0));
  LinearTerm one = LinearTerm::constant_term(Rat(1));
  std::vector<LinearTerm> items{zero, one};
  for (const LinearTerm& t : thresholds.items)
    if (!(t == zero) && !(t == one)) items.push_back(t);

  OrderSearch search{ta, items, solver, {}, {}};
  search.place(0);
  return std::move(search.found);
}

ThresholdOrder order_at(const ThresholdAutomaton& ta, const ThresholdSet& thresholds,
                        const std::vector<long long>& params) {
  std::map<Rat, std::vector<LinearTerm>> by_value;
  for (const LinearTerm& t : thresholds.items) by_value[t.eval(params)].push_back(t);
  ThresholdOrder order;
  for (auto& [value, block] : by_value) order.blocks.push_back(std::move(block));
  finish_order(order, ta);
  return order;
}

AbstractDomain build_domain(const ThresholdOrder& order) {
  LinearTerm zero = LinearTerm::constant_term(Rat(0));
  int zero_block = -1;
  for (size_t b = 0; b < order.blocks.size(); ++b)
    for (const LinearTerm& t : order.blocks[b])
      if (t == zero) zero_block = static_cast<int>(b);
  if (zero_block < 0)
    throw AbstractionError("threshold order does not contain the constant 0");

  AbstractDomain domain;
  for (size_t b = 0; b < order.blocks.size(); ++b) {
    int idx = static_cast<int>(b) - zero_block;
    if (idx >= 0) domain.boundaries.push_back(order.blocks[b].front());
    for (const LinearTerm& t : order.blocks[b])
      domain.index_of.emplace(t, idx < 0 ? -1 : idx);
  }
  return domain;
}

uint64_t AbstractTa::full_mask() const {
  int k = domain.size();
  return k >= 64 ? ~0ull : ((1ull << k) - 1);
}

AbstractTa abstract_ta(const ThresholdAutomaton& ta, const AbstractDomain& domain) {
  if (domain.size() > 64)
    throw AbstractionError("interval domain exceeds 64 intervals");
  if (domain.size() < 2)
    throw AbstractionError("interval domain must contain I_0 and I_1");

  AbstractTa out;
  out.ta = &ta;
  out.domain = domain;
  const uint64_t full = out.full_mask();

  for (size_t i = 0; i < ta.rules.size(); ++i) {
    const Rule& r = ta.rules[i];
    AbstractRule ar;
    ar.index = static_cast<int>(i);
    ar.from = r.from;
    ar.to = r.to;
    ar.update = r.update;
    ar.resets = r.resets;
    ar.allowed.assign(ta.shared.size(), full);
    for (int u : r.update)
      if (u < -1 || u > 1)
        throw AbstractionError("rule " + r.name +
                               " has an update outside {-1,0,1}; unsupported by the "
                               "interval abstraction");
    for (const GuardAtom& atom : r.guard.atoms) {
      auto it = domain.index_of.find(atom.threshold);
      if (it == domain.index_of.end())
        throw AbstractionError("guard threshold missing from the domain");
      int idx = it->second;
      uint64_t mask;
      if (atom.kind == GuardKind::Lower) {
        mask = idx <= 0 ? full : (full >> idx) << idx;
      } else {
        ar.has_upper_atom = true;
        mask = idx <= 0 ? 0 : full & ((1ull << idx) - 1);
      }
      ar.allowed[atom.var] &= mask;
    }
    out.rules.push_back(std::move(ar));
  }
  return out;
}

}  // namespace eta
