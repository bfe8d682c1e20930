#include "eta/concretize.hpp"

#include <algorithm>
#include <sstream>

#include "eta/smt_emit.hpp"

namespace eta {

namespace {

std::string kvar(size_t cfg, int loc) {
  return "k." + std::to_string(cfg) + "." + std::to_string(loc);
}
std::string gvar(size_t cfg, int var) {
  return "g." + std::to_string(cfg) + "." + std::to_string(var);
}
std::string cvar(size_t step) { return "c." + std::to_string(step); }

bool in_resets(const Rule& r, int var) {
  return std::find(r.resets.begin(), r.resets.end(), var) != r.resets.end();
}

}  // namespace

DischargePath discharge_path_from_acs(const std::vector<AbsConfig>& configs,
                                      const std::vector<int>& rules) {
  DischargePath p;
  for (const AbsConfig& c : configs) p.intervals.push_back(c.intervals);
  p.rules = rules;
  p.keep_source.assign(rules.size(), 0);
  p.final_counters = configs.back().counters;
  return p;
}

DischargePath discharge_path_from_zcs(const AbstractTa& at,
                                      const std::vector<ZConfig>& configs,
                                      const std::vector<int>& rules) {
  DischargePath p;
  for (const ZConfig& z : configs) p.intervals.push_back(z.intervals);
  p.rules = rules;
  for (size_t i = 0; i < rules.size(); ++i) {
    int from = at.ta->rules[rules[i]].from;
    p.keep_source.push_back(configs[i + 1].bits[from]);
  }
  for (int8_t b : configs.back().bits) p.final_counters.push_back(b);
  return p;
}

ConcretizationQuery build_concretize(const AbstractTa& at, const ThresholdOrder& order,
                                     const DischargePath& path, ConcretizeMode mode) {
  const ThresholdAutomaton& ta = *at.ta;
  const std::vector<std::string>& names = ta.params;
  const size_t m = path.rules.size();
  const int nloc = at.num_locations();
  const int nsh = at.num_shared();
  const int last = at.num_intervals() - 1;

  std::ostringstream s;
  s << "(set-logic QF_LIA)\n";
  for (const std::string& p : names) s << "(declare-const " << p << " Int)\n";
  for (size_t i = 0; i <= m; ++i)
    for (int l = 0; l < nloc; ++l) s << "(declare-const " << kvar(i, l) << " Int)\n";
  for (size_t i = 0; i <= m; ++i)
    for (int x = 0; x < nsh; ++x) s << "(declare-const " << gvar(i, x) << " Int)\n";
  for (size_t i = 0; i < m; ++i) s << "(declare-const " << cvar(i) << " Int)\n";

  for (size_t i = 0; i <= m; ++i)
    for (int l = 0; l < nloc; ++l) s << "(assert (>= " << kvar(i, l) << " 0))\n";
  for (size_t i = 0; i <= m; ++i)
    for (int x = 0; x < nsh; ++x) s << "(assert (>= " << gvar(i, x) << " 0))\n";
  for (size_t i = 0; i < m; ++i) s << "(assert (>= " << cvar(i) << " 1))\n";

  // Admissible parameters within this threshold order.
  s << "(assert " << smt_bexpr(*order.strengthened_rc, names) << ")\n";

  // Initial configuration: N(p) processes on initial locations, all else zero.
  std::vector<std::string> init_vars;
  for (int l : ta.initial) init_vars.push_back(kvar(0, l));
  s << "(assert " << smt_cmp_varsum_term(init_vars, CmpOp::Eq, ta.size_term, names)
    << ")\n";
  for (int l = 0; l < nloc; ++l)
    if (!ta.is_initial(l)) s << "(assert (= " << kvar(0, l) << " 0))\n";
  for (int x = 0; x < nsh; ++x) s << "(assert (= " << gvar(0, x) << " 0))\n";

  // Interval membership of every configuration's shared values. Constraints
  // the preceding ones already imply are omitted: position 0 sits in I_0 by
  // the zero initialization, and a variable a step leaves untouched keeps its
  // membership through the carried equality.
  for (size_t i = 0; i <= m; ++i) {
    for (int x = 0; x < nsh; ++x) {
      int idx = path.intervals[i][x];
      if (i == 0) {
        if (idx == 0) continue;
      } else {
        const Rule& r = ta.rules[path.rules[i - 1]];
        if (idx == path.intervals[i - 1][x] && r.update[x] == 0 && !in_resets(r, x))
          continue;
      }
      if (idx > 0)
        s << "(assert "
          << smt_cmp_var_term(gvar(i, x), CmpOp::Ge, at.domain.boundaries[idx], names)
          << ")\n";
      if (idx < last)
        s << "(assert "
          << smt_cmp_var_term(gvar(i, x), CmpOp::Lt, at.domain.boundaries[idx + 1],
                              names)
          << ")\n";
    }
  }

  // Per-step constraints.
  for (size_t i = 0; i < m; ++i) {
    const Rule& r = ta.rules[path.rules[i]];
    if (r.from != r.to) {
      s << "(assert (= " << kvar(i, r.from) << " (+ " << cvar(i) << " "
        << kvar(i + 1, r.from) << ")))\n";
      s << "(assert (= " << kvar(i + 1, r.to) << " (+ " << cvar(i) << " "
        << kvar(i, r.to) << ")))\n";
      for (int l = 0; l < nloc; ++l)
        if (l != r.from && l != r.to)
          s << "(assert (= " << kvar(i + 1, l) << " " << kvar(i, l) << "))\n";
    } else {
      s << "(assert (>= " << kvar(i, r.from) << " 1))\n";
      for (int l = 0; l < nloc; ++l)
        s << "(assert (= " << kvar(i + 1, l) << " " << kvar(i, l) << "))\n";
    }

    for (int x = 0; x < nsh; ++x) {
      if (in_resets(r, x)) {
        s << "(assert (= " << gvar(i + 1, x) << " 0))\n";
      } else if (r.update[x] == 0) {
        s << "(assert (= " << gvar(i + 1, x) << " " << gvar(i, x) << "))\n";
      } else if (r.update[x] > 0) {
        s << "(assert (= " << gvar(i + 1, x) << " (+ " << gvar(i, x) << " " << cvar(i)
          << ")))\n";
      } else {
        s << "(assert (= " << gvar(i, x) << " (+ " << gvar(i + 1, x) << " " << cvar(i)
          << ")))\n";
      }
    }

    // Guard re-check for accelerated steps: the last firing's precondition.
    // A variable the rule resets is zero before every firing but the first.
    // The disjunction is dropped when the source interval already entails the
    // atom for every repetition, which keeps most queries disjunction-free.
    for (const GuardAtom& atom : r.guard.atoms) {
      bool entailed = false;
      auto ti = at.domain.index_of.find(atom.threshold);
      if (ti != at.domain.index_of.end()) {
        int tidx = ti->second;
        if (in_resets(r, atom.var)) {
          entailed = atom.kind == GuardKind::Lower ? tidx <= 0 : tidx >= 1;
        } else {
          int src = path.intervals[i][atom.var];
          entailed = atom.kind == GuardKind::Lower
                         ? r.update[atom.var] >= 0 && src >= tidx
                         : r.update[atom.var] <= 0 && src + 1 <= tidx;
        }
      }
      if (entailed) continue;
      CmpOp op = atom.kind == GuardKind::Lower ? CmpOp::Ge : CmpOp::Lt;
      std::string recheck;
      if (in_resets(r, atom.var)) {
        recheck = smt_cmp_terms(LinearTerm::constant_term(Rat(0)), op, atom.threshold,
                                names);
      } else {
        LinearTerm shifted = atom.threshold;
        shifted += LinearTerm::constant_term(Rat(r.update[atom.var]));
        recheck = smt_cmp_var_term(gvar(i + 1, atom.var), op, shifted, names);
      }
      s << "(assert (or (<= " << cvar(i) << " 1) " << recheck << "))\n";
    }

    if (path.keep_source[i])
      s << "(assert (>= " << kvar(i + 1, r.from) << " 1))\n";
  }

  // Mode conjunct on the final counters.
  if (mode == ConcretizeMode::Cover) {
    for (int l = 0; l < nloc; ++l)
      if (path.final_counters[l] > 0)
        s << "(assert (>= " << kvar(m, l) << " " << path.final_counters[l] << "))\n";
  } else if (mode == ConcretizeMode::Reach) {
    for (int l = 0; l < nloc; ++l) {
      if (path.final_counters[l] > 0)
        s << "(assert (>= " << kvar(m, l) << " 1))\n";
      else
        s << "(assert (= " << kvar(m, l) << " 0))\n";
    }
  }

  s << "(check-sat)\n(get-model)\n";

  ConcretizationQuery q;
  q.script = s.str();
  q.mode = mode;
  q.steps = m;
  return q;
}

namespace {

/// Accumulates one relaxation row over rationals, then clears denominators.
/// Variable ids: parameters keep their own indices, counter/shared/count
/// variables follow in the same layout the script emitter uses.
struct RowSketch {
  std::map<int, Rat> c;
  Rat k;

  void add_var(int id, const Rat& coeff) {
    Rat& slot = c[id];
    slot += coeff;
    if (slot == 0) c.erase(id);
  }
  void add_term(const LinearTerm& t, const Rat& scale) {
    k += t.constant * scale;
    for (const auto& [p, coeff] : t.coeffs) add_var(p, coeff * scale);
  }

  /// Integer form of `this OP 0`; strict comparisons tighten by one after
  /// scaling, which is exact because every variable is integer-valued.
  lia::LinRow finish(CmpOp op) const {
    RowSketch r = *this;
    if (op == CmpOp::Lt || op == CmpOp::Le) {
      for (auto& [id, coeff] : r.c) coeff = -coeff;
      r.k = -r.k;
      op = op == CmpOp::Lt ? CmpOp::Gt : CmpOp::Ge;
    }
    Int lcm = r.k.get_den();
    for (const auto& [id, coeff] : r.c)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), coeff.get_den().get_mpz_t());
    lia::LinRow out;
    out.k = Rat(r.k * lcm).get_num();
    for (const auto& [id, coeff] : r.c) out.c[id] = Rat(coeff * lcm).get_num();
    if (op == CmpOp::Gt) out.k -= 1;
    out.eq = op == CmpOp::Eq;
    return out;
  }
};

/// Conjunctive comparisons of a parameter formula; Or subtrees and
/// disequalities are skipped, weakening the relaxation but never the
/// soundness of an infeasible answer.
void collect_conjuncts(const BoolExpr& e, std::vector<lia::LinRow>& rows) {
  if (e.kind == BoolExpr::Kind::And) {
    for (const auto& child : e.children) collect_conjuncts(*child, rows);
    return;
  }
  if (e.kind != BoolExpr::Kind::Cmp || e.cmp.op == CmpOp::Ne) return;
  RowSketch s;
  s.add_term(e.cmp.lhs, Rat(1));
  s.add_term(e.cmp.rhs, Rat(-1));
  rows.push_back(s.finish(e.cmp.op));
}

}  // namespace

std::vector<lia::LinRow> build_relaxation(const AbstractTa& at,
                                          const ThresholdOrder& order,
                                          const DischargePath& path,
                                          ConcretizeMode mode) {
  const ThresholdAutomaton& ta = *at.ta;
  const size_t m = path.rules.size();
  const int nloc = at.num_locations();
  const int nsh = at.num_shared();
  const int np = static_cast<int>(ta.params.size());

  auto kid = [&](size_t cfg, int loc) {
    return np + static_cast<int>(cfg) * nloc + loc;
  };
  auto gid = [&](size_t cfg, int x) {
    return np + static_cast<int>(m + 1) * nloc + static_cast<int>(cfg) * nsh + x;
  };
  auto cid = [&](size_t step) {
    return np + static_cast<int>(m + 1) * (nloc + nsh) + static_cast<int>(step);
  };

  std::vector<lia::LinRow> rows;
  auto bound = [&](int id, const Int& min) {
    lia::LinRow r;
    r.c[id] = 1;
    r.k = -min;
    rows.push_back(std::move(r));
  };

  for (size_t i = 0; i <= m; ++i)
    for (int l = 0; l < nloc; ++l) bound(kid(i, l), 0);
  for (size_t i = 0; i <= m; ++i)
    for (int x = 0; x < nsh; ++x) bound(gid(i, x), 0);
  for (size_t i = 0; i < m; ++i) bound(cid(i), 1);

  collect_conjuncts(*order.strengthened_rc, rows);

  // Initial configuration.
  {
    RowSketch s;
    for (int l : ta.initial) s.add_var(kid(0, l), Rat(1));
    s.add_term(ta.size_term, Rat(-1));
    rows.push_back(s.finish(CmpOp::Eq));
  }
  for (int l = 0; l < nloc; ++l) {
    if (ta.is_initial(l)) continue;
    RowSketch s;
    s.add_var(kid(0, l), Rat(1));
    rows.push_back(s.finish(CmpOp::Eq));
  }
  for (int x = 0; x < nsh; ++x) {
    RowSketch s;
    s.add_var(gid(0, x), Rat(1));
    rows.push_back(s.finish(CmpOp::Eq));
  }

  for (size_t i = 0; i < m; ++i) {
    const Rule& r = ta.rules[path.rules[i]];

    // Counter flow.
    if (r.from != r.to) {
      RowSketch from;
      from.add_var(kid(i, r.from), Rat(1));
      from.add_var(cid(i), Rat(-1));
      from.add_var(kid(i + 1, r.from), Rat(-1));
      rows.push_back(from.finish(CmpOp::Eq));
      RowSketch to;
      to.add_var(kid(i + 1, r.to), Rat(1));
      to.add_var(cid(i), Rat(-1));
      to.add_var(kid(i, r.to), Rat(-1));
      rows.push_back(to.finish(CmpOp::Eq));
      for (int l = 0; l < nloc; ++l) {
        if (l == r.from || l == r.to) continue;
        RowSketch frame;
        frame.add_var(kid(i + 1, l), Rat(1));
        frame.add_var(kid(i, l), Rat(-1));
        rows.push_back(frame.finish(CmpOp::Eq));
      }
    } else {
      bound(kid(i, r.from), 1);
      for (int l = 0; l < nloc; ++l) {
        RowSketch frame;
        frame.add_var(kid(i + 1, l), Rat(1));
        frame.add_var(kid(i, l), Rat(-1));
        rows.push_back(frame.finish(CmpOp::Eq));
      }
    }

    // Shared updates.
    for (int x = 0; x < nsh; ++x) {
      RowSketch s;
      if (in_resets(r, x)) {
        s.add_var(gid(i + 1, x), Rat(1));
      } else {
        s.add_var(gid(i + 1, x), Rat(1));
        s.add_var(gid(i, x), Rat(-1));
        if (r.update[x] != 0) s.add_var(cid(i), Rat(-r.update[x]));
      }
      rows.push_back(s.finish(CmpOp::Eq));
    }

    // The rule's own guard on the pre-step values stands in for the interval
    // memberships, which every labeling's membership constraints imply.
    for (const GuardAtom& atom : r.guard.atoms) {
      RowSketch s;
      s.add_var(gid(i, atom.var), Rat(1));
      s.add_term(atom.threshold, Rat(-1));
      rows.push_back(s.finish(atom.kind == GuardKind::Lower ? CmpOp::Ge : CmpOp::Lt));
    }

    if (path.keep_source[i]) bound(kid(i + 1, r.from), 1);
  }

  // Mode conjunct on the final counters.
  if (mode == ConcretizeMode::Cover) {
    for (int l = 0; l < nloc; ++l)
      if (path.final_counters[l] > 0) bound(kid(m, l), path.final_counters[l]);
  } else if (mode == ConcretizeMode::Reach) {
    for (int l = 0; l < nloc; ++l) {
      if (path.final_counters[l] > 0) {
        bound(kid(m, l), 1);
      } else {
        RowSketch s;
        s.add_var(kid(m, l), Rat(1));
        rows.push_back(s.finish(CmpOp::Eq));
      }
    }
  }

  return rows;
}

DischargeResult discharge(const AbstractTa& at, const ThresholdOrder& order,
                          const DischargePath& path, ConcretizeMode mode,
                          SolverClient& solver) {
  ConcretizationQuery q = build_concretize(at, order, path, mode);
  const SolverResponse& resp = solver.check(q.script);
  if (resp.kind == SolverResponse::Kind::Unsat)
    return DischargeResult{DischargeResult::Kind::Spurious, {}, {}};
  if (resp.kind != SolverResponse::Kind::Sat)
    throw SolverFailure("solver returned unknown", q.script);

  auto value = [&](const std::string& name) -> long long {
    auto it = resp.model.find(name);
    return it == resp.model.end() ? 0 : int_to_longlong(it->second);
  };

  const ThresholdAutomaton& ta = *at.ta;
  WitnessPath w;
  for (const std::string& p : ta.params) w.params.push_back(value(p));
  for (size_t l = 0; l < ta.locations.size(); ++l)
    w.initial_counters.push_back(value(kvar(0, static_cast<int>(l))));
  for (size_t i = 0; i < q.steps; ++i)
    w.steps.push_back(WitnessStep{path.rules[i], value(cvar(i))});
  for (size_t l = 0; l < ta.locations.size(); ++l)
    w.final_counters.push_back(value(kvar(q.steps, static_cast<int>(l))));
  for (size_t x = 0; x < ta.shared.size(); ++x)
    w.final_shared.push_back(value(gvar(q.steps, static_cast<int>(x))));

  return DischargeResult{DischargeResult::Kind::Concrete, std::move(w), resp.model};
}

}  // namespace eta
