#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eta/rational.hpp"

namespace eta {

// ── Linear terms over parameters ──────────────────────────────────────────

/// constant + sum of coeff * parameter, with exact rational coefficients.
/// Canonical form: coeffs holds no zero entries.
struct LinearTerm {
  Rat constant;
  std::map<int, Rat> coeffs;  // parameter index -> nonzero coefficient

  static LinearTerm constant_term(const Rat& c);
  static LinearTerm parameter(int index, const Rat& coeff = Rat(1));

  bool is_constant() const { return coeffs.empty(); }
  Rat eval(const std::vector<long long>& params) const;

  LinearTerm& operator+=(const LinearTerm& other);
  LinearTerm& operator-=(const LinearTerm& other);
  LinearTerm& operator*=(const Rat& factor);

  bool operator==(const LinearTerm& other) const;
};

LinearTerm operator+(LinearTerm lhs, const LinearTerm& rhs);
LinearTerm operator-(LinearTerm lhs, const LinearTerm& rhs);

/// Deterministic syntactic order: coefficient maps compared entrywise by
/// parameter index, then the constant. Used wherever term sets are sorted.
int compare_terms(const LinearTerm& a, const LinearTerm& b);

struct LinearTermLess {
  bool operator()(const LinearTerm& a, const LinearTerm& b) const {
    return compare_terms(a, b) < 0;
  }
};

// ── Boolean formulas over parameters (resilience conditions) ──────────────

enum class CmpOp { Lt, Le, Gt, Ge, Eq, Ne };

struct BoolExpr;
using BoolExprPtr = std::shared_ptr<const BoolExpr>;

struct Comparison {
  LinearTerm lhs;
  CmpOp op;
  LinearTerm rhs;
};

/// And with no children is "true"; Or with no children is "false".
struct BoolExpr {
  enum class Kind { Cmp, And, Or };
  Kind kind = Kind::And;
  Comparison cmp;
  std::vector<BoolExprPtr> children;
};

BoolExprPtr bexpr_true();
BoolExprPtr bexpr_cmp(LinearTerm lhs, CmpOp op, LinearTerm rhs);
BoolExprPtr bexpr_and(std::vector<BoolExprPtr> children);
BoolExprPtr bexpr_or(std::vector<BoolExprPtr> children);

bool bexpr_eval(const BoolExpr& e, const std::vector<long long>& params);
bool cmp_holds(const Rat& lhs, CmpOp op, const Rat& rhs);

// ── Threshold automata ─────────────────────────────────────────────────────

/// Lower guard: threshold <= x. Upper guard: threshold > x.
enum class GuardKind { Lower, Upper };

struct GuardAtom {
  int var = 0;  // shared-variable index
  GuardKind kind = GuardKind::Lower;
  LinearTerm threshold;
};

/// Conjunction of atoms; empty means "true".
struct Guard {
  std::vector<GuardAtom> atoms;
};

struct Rule {
  std::string name;
  int from = 0;
  int to = 0;
  Guard guard;
  std::vector<int> update;  // one entry per shared variable
  std::vector<int> resets;  // sorted shared-variable indices, reset after update
};

struct ThresholdAutomaton {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::string> shared;
  std::vector<std::string> locations;
  std::vector<int> initial;  // sorted location indices
  BoolExprPtr resilience;    // over params; never null after parsing
  LinearTerm size_term;      // number of processes N(p)
  std::vector<Rule> rules;
  // Declared abstraction boundaries beyond the guard thresholds. They refine
  // the interval domain without changing the concrete semantics.
  std::vector<LinearTerm> extra_thresholds;

  int location_index(const std::string& name) const;
  int shared_index(const std::string& name) const;
  int param_index(const std::string& name) const;
  bool is_initial(int loc) const;
};

// ── Concrete counter-system configurations ────────────────────────────────

struct ConcreteConfig {
  std::vector<long long> counters;  // per location
  std::vector<long long> shared;    // per shared variable
  std::vector<long long> params;    // per parameter

  bool operator==(const ConcreteConfig& other) const = default;
};

/// True iff every guard atom of `g` holds at the given shared values.
bool guard_sat(const Guard& g, const std::vector<long long>& shared,
               const std::vector<long long>& params);

/// A rule is enabled iff the source counter is positive, the guard holds,
/// and applying the update would not drive any shared variable negative.
bool concrete_enabled(const ThresholdAutomaton& ta, const ConcreteConfig& c, int rule);

/// One counter-system step; std::nullopt when the rule is disabled.
std::optional<ConcreteConfig> concrete_step(const ThresholdAutomaton& ta,
                                            const ConcreteConfig& c, int rule);

/// One accelerated segment of a concrete run: `rule` fired `count` times.
struct WitnessStep {
  int rule = 0;
  long long count = 1;

  bool operator==(const WitnessStep& other) const = default;
};

/// Fully concrete counterexample: parameter valuation, initial configuration,
/// accelerated rule sequence, and the claimed final configuration. Shared
/// variables start at zero by definition.
struct WitnessPath {
  std::vector<long long> params;
  std::vector<long long> initial_counters;
  std::vector<WitnessStep> steps;
  std::vector<long long> final_counters;
  std::vector<long long> final_shared;

  bool operator==(const WitnessPath& other) const = default;
};

// ── Specifications ─────────────────────────────────────────────────────────

/// Reach a configuration whose counters dominate one of the basis vectors.
struct GeneralCoverabilitySpec {
  std::vector<std::vector<long long>> basis;  // each of length |locations|
};

/// Reach a configuration where every listed location is nonempty.
struct CoverabilitySpec {
  std::vector<int> positive;  // sorted location indices
};

/// Reach a configuration where `zero` locations are empty and `positive`
/// locations are nonempty; the two sets are disjoint.
struct ReachabilitySpec {
  std::vector<int> zero;
  std::vector<int> positive;
};

using Specification =
    std::variant<GeneralCoverabilitySpec, CoverabilitySpec, ReachabilitySpec>;

bool spec_satisfied(const Specification& spec, const std::vector<long long>& counters);

// ── Validation and classification ──────────────────────────────────────────

enum class Severity { Error, Warning };

struct Violation {
  Severity severity = Severity::Error;
  std::string category;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> items;

  bool ok() const;     // no errors (warnings allowed)
  bool clean() const;  // no items at all
};

/// Optional satisfiability callback for the resilience-condition check;
/// returns true/false, or nullopt when no answer is available.
using SatProbe = std::function<std::optional<bool>(const BoolExpr&)>;

/// Structural well-formedness checks. If `probe` is given it is consulted for
/// the "resilience condition unsatisfiable" warning.
ValidationReport validate(const ThresholdAutomaton& ta, const SatProbe& probe = {});

enum class TerminationClass { GuaranteedTerminating, SemiDecision };

/// GuaranteedTerminating iff all updates are nonnegative and no rule resets.
TerminationClass classify_termination(const ThresholdAutomaton& ta);

}  // namespace eta
