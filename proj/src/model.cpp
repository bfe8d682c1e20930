#include "eta/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace eta {

// ── rational helpers ───────────────────────────────────────────────────────

Rat rat_from_string(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  Rat r;
  if (r.set_str(text, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + text);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

long long int_to_longlong(const Int& value) {
  if (!value.fits_slong_p())
    throw std::overflow_error("integer out of range: " + value.get_str());
  return static_cast<long long>(value.get_si());
}

// ── LinearTerm ─────────────────────────────────────────────────────────────

LinearTerm LinearTerm::constant_term(const Rat& c) {
  LinearTerm t;
  t.constant = c;
  return t;
}

LinearTerm LinearTerm::parameter(int index, const Rat& coeff) {
  LinearTerm t;
  if (coeff != 0) t.coeffs[index] = coeff;
  return t;
}

Rat LinearTerm::eval(const std::vector<long long>& params) const {
  Rat acc = constant;
  for (const auto& [idx, coeff] : coeffs) acc += coeff * Rat(static_cast<long>(params.at(idx)));
  return acc;
}

LinearTerm& LinearTerm::operator+=(const LinearTerm& other) {
  constant += other.constant;
  for (const auto& [idx, coeff] : other.coeffs) {
    Rat& slot = coeffs[idx];
    slot += coeff;
    if (slot == 0) coeffs.erase(idx);
  }
  return *this;
}

LinearTerm& LinearTerm::operator-=(const LinearTerm& other) {
  LinearTerm neg = other;
  neg *= Rat(-1);
  return *this += neg;
}

LinearTerm& LinearTerm::operator*=(const Rat& factor) {
  if (factor == 0) {
    coeffs.clear();
    constant = 0;
    return *this;
  }
  constant *= factor;
  for (auto& [idx, coeff] : coeffs) coeff *= factor;
  return *this;
}

LinearTerm operator+(LinearTerm lhs, const LinearTerm& rhs) { return lhs += rhs; }
LinearTerm operator-(LinearTerm lhs, const LinearTerm& rhs) { return lhs -= rhs; }

bool LinearTerm::operator==(const LinearTerm& other) const {
  return constant == other.constant && coeffs == other.coeffs;
}

int compare_terms(const LinearTerm& a, const LinearTerm& b) {
  auto ia = a.coeffs.begin();
  auto ib = b.coeffs.begin();
  while (ia != a.coeffs.end() && ib != b.coeffs.end()) {
    if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
    int c = cmp(ia->second, ib->second);
    if (c != 0) return c;
    ++ia;
    ++ib;
  }
  if (ia != a.coeffs.end()) return 1;
  if (ib != b.coeffs.end()) return -1;
  return cmp(a.constant, b.constant);
}

// ── BoolExpr ───────────────────────────────────────────────────────────────

BoolExprPtr bexpr_true() {
  auto e = std::make_shared<BoolExpr>();
  e->kind = BoolExpr::Kind::And;
  return e;
}

BoolExprPtr bexpr_cmp(LinearTerm lhs, CmpOp op, LinearTerm rhs) {
  auto e = std::make_shared<BoolExpr>();
  e->kind = BoolExpr::Kind::Cmp;
  e->cmp = Comparison{std::move(lhs), op, std::move(rhs)};
  return e;
}

BoolExprPtr bexpr_and(std::vector<BoolExprPtr> children) {
  if (children.size() == 1) return children.front();
  auto e = std::make_shared<BoolExpr>();
  e->kind = BoolExpr::Kind::And;
  e->children = std::move(children);
  return e;
}

BoolExprPtr bexpr_or(std::vector<BoolExprPtr> children) {
  if (children.size() == 1) return children.front();
  auto e = std::make_shared<BoolExpr>();
  e->kind = BoolExpr::Kind::Or;
  e->children = std::move(children);
  return e;
}

bool cmp_holds(const Rat& lhs, CmpOp op, const Rat& rhs) {
  switch (op) {
    case CmpOp::Lt: return lhs < rhs;
    case CmpOp::Le: return lhs <= rhs;
    case CmpOp::Gt: return lhs > rhs;
    case CmpOp::Ge: return lhs >= rhs;
    case CmpOp::Eq: return lhs == rhs;
    case CmpOp::Ne: return lhs != rhs;
  }
  return false;
}

bool bexpr_eval(const BoolExpr& e, const std::vector<long long>& params) {
  switch (e.kind) {
    case BoolExpr::Kind::Cmp:
      return cmp_holds(e.cmp.lhs.eval(params), e.cmp.op, e.cmp.rhs.eval(params));
    case BoolExpr::Kind::And:
      for (const auto& child : e.children)
        if (!bexpr_eval(*child, params)) return false;
      return true;
    case BoolExpr::Kind::Or:
      for (const auto& child : e.children)
        if (bexpr_eval(*child, params)) return true;
      return false;
  }
  return false;
}

// ── ThresholdAutomaton lookups ─────────────────────────────────────────────

namespace {
int index_of(const std::vector<std::string>& names, const std::string& name) {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}
}  // namespace

int ThresholdAutomaton::location_index(const std::string& n) const {
  return index_of(locations, n);
}
int ThresholdAutomaton::shared_index(const std::string& n) const {
  return index_of(shared, n);
}
int ThresholdAutomaton::param_index(const std::string& n) const {
  return index_of(params, n);
}
bool ThresholdAutomaton::is_initial(int loc) const {
  return std::binary_search(initial.begin(), initial.end(), loc);
}

// ── concrete semantics ─────────────────────────────────────────────────────

bool guard_sat(const Guard& g, const std::vector<long long>& shared,
               const std::vector<long long>& params) {
  for (const GuardAtom& atom : g.atoms) {
    Rat th = atom.threshold.eval(params);
    Rat x(static_cast<long>(shared.at(atom.var)));
    bool ok = atom.kind == GuardKind::Lower ? th <= x : th > x;
    if (!ok) return false;
  }
  return true;
}

bool concrete_enabled(const ThresholdAutomaton& ta, const ConcreteConfig& c, int rule) {
  const Rule& r = ta.rules.at(rule);
  if (c.counters.at(r.from) < 1) return false;
  if (!guard_sat(r.guard, c.shared, c.params)) return false;
  for (size_t j = 0; j < ta.shared.size(); ++j)
    if (c.shared[j] + r.update[j] < 0) return false;
  return true;
}

std::optional<ConcreteConfig> concrete_step(const ThresholdAutomaton& ta,
                                            const ConcreteConfig& c, int rule) {
  if (!concrete_enabled(ta, c, rule)) return std::nullopt;
  const Rule& r = ta.rules[rule];
  ConcreteConfig next = c;
  next.counters[r.from] -= 1;
  next.counters[r.to] += 1;
  for (size_t j = 0; j < ta.shared.size(); ++j) next.shared[j] += r.update[j];
  for (int v : r.resets) next.shared[v] = 0;
  return next;
}

// ── specifications ─────────────────────────────────────────────────────────

bool spec_satisfied(const Specification& spec, const std::vector<long long>& counters) {
  if (const auto* gc = std::get_if<GeneralCoverabilitySpec>(&spec)) {
    for (const auto& base : gc->basis) {
      bool covers = true;
      for (size_t l = 0; l < base.size(); ++l)
        if (counters.at(l) < base[l]) {
          covers = false;
          break;
        }
      if (covers) return true;
    }
    return false;
  }
  if (const auto* cv = std::get_if<CoverabilitySpec>(&spec)) {
    for (int l : cv->positive)
      if (counters.at(l) < 1) return false;
    return true;
  }
  const auto& rs = std::get<ReachabilitySpec>(spec);
  for (int l : rs.zero)
    if (counters.at(l) != 0) return false;
  for (int l : rs.positive)
    if (counters.at(l) < 1) return false;
  return true;
}

// ── validation ─────────────────────────────────────────────────────────────

bool ValidationReport::ok() const {
  return std::none_of(items.begin(), items.end(),
                      [](const Violation& v) { return v.severity == Severity::Error; });
}

bool ValidationReport::clean() const { return items.empty(); }

namespace {
void check_unique(const std::vector<std::string>& names, const std::string& what,
                  ValidationReport& report) {
  std::set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second)
      report.items.push_back({Severity::Error, "duplicate-name",
                              "duplicate " + what + " name: " + n});
}

void check_term_params(const LinearTerm& t, size_t nparams, const std::string& where,
                       ValidationReport& report) {
  for (const auto& [idx, coeff] : t.coeffs) {
    (void)coeff;
    if (idx < 0 || static_cast<size_t>(idx) >= nparams)
      report.items.push_back({Severity::Error, "undeclared-parameter",
                              "parameter index out of range in " + where});
  }
}

void check_bexpr_params(const BoolExpr& e, size_t nparams, const std::string& where,
                        ValidationReport& report) {
  if (e.kind == BoolExpr::Kind::Cmp) {
    check_term_params(e.cmp.lhs, nparams, where, report);
    check_term_params(e.cmp.rhs, nparams, where, report);
    return;
  }
  for (const auto& child : e.children)
    check_bexpr_params(*child, nparams, where, report);
}
}  // namespace

ValidationReport validate(const ThresholdAutomaton& ta, const SatProbe& probe) {
  ValidationReport report;
  check_unique(ta.locations, "location", report);
  check_unique(ta.shared, "shared variable", report);
  check_unique(ta.params, "parameter", report);

  if (ta.initial.empty())
    report.items.push_back(
        {Severity::Error, "no-initial-locations", "no initial locations declared"});
  for (int l : ta.initial)
    if (l < 0 || static_cast<size_t>(l) >= ta.locations.size())
      report.items.push_back(
          {Severity::Error, "undeclared-location", "initial location index out of range"});

  if (ta.resilience)
    check_bexpr_params(*ta.resilience, ta.params.size(), "resilience condition", report);
  check_term_params(ta.size_term, ta.params.size(), "size function", report);

  for (const Rule& r : ta.rules) {
    auto in_locs = [&](int l) {
      return l >= 0 && static_cast<size_t>(l) < ta.locations.size();
    };
    if (!in_locs(r.from) || !in_locs(r.to))
      report.items.push_back({Severity::Error, "undeclared-location",
                              "rule " + r.name + " references an unknown location"});
    if (r.update.size() != ta.shared.size())
      report.items.push_back({Severity::Error, "update-arity",
                              "rule " + r.name + " update vector has wrong length"});
    for (int v : r.resets)
      if (v < 0 || static_cast<size_t>(v) >= ta.shared.size())
        report.items.push_back({Severity::Error, "undeclared-shared",
                                "rule " + r.name + " resets an unknown shared variable"});
    for (const GuardAtom& atom : r.guard.atoms) {
      if (atom.var < 0 || static_cast<size_t>(atom.var) >= ta.shared.size())
        report.items.push_back({Severity::Error, "undeclared-shared",
                                "rule " + r.name + " guards an unknown shared variable"});
      check_term_params(atom.threshold, ta.params.size(), "guard of rule " + r.name, report);
    }
    for (size_t j = 0; j < r.update.size(); ++j)
      if (r.update[j] < -1 || r.update[j] > 1)
        report.items.push_back(
            {Severity::Warning, "update-magnitude",
             "rule " + r.name + " updates " +
                 (j < ta.shared.size() ? ta.shared[j] : std::string("?")) +
                 " by more than one; the interval abstraction rejects such rules"});
  }

  if (probe && ta.resilience) {
    std::optional<bool> sat = probe(*ta.resilience);
    if (sat.has_value() && !*sat)
      report.items.push_back({Severity::Warning, "resilience-unsatisfiable",
                              "resilience condition unsatisfiable: no admissible parameters"});
  }
  return report;
}

TerminationClass classify_termination(const ThresholdAutomaton& ta) {
  for (const Rule& r : ta.rules) {
    if (!r.resets.empty()) return TerminationClass::SemiDecision;
    for (int u : r.update)
      if (u < 0) return TerminationClass::SemiDecision;
  }
  return TerminationClass::GuaranteedTerminating;
}

}  // namespace eta
