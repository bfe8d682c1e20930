#include "eta/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace eta {

namespace {

/// N(p) as a checked nonnegative integer.
long long process_count(const ThresholdAutomaton& ta,
                        const std::vector<long long>& params) {
  Rat n = ta.size_term.eval(params);
  if (n.get_den() != 1 || n < 0)
    throw InadmissibleParameters("process count is not a nonnegative integer");
  return int_to_longlong(n.get_num());
}

void check_admissible(const ThresholdAutomaton& ta,
                      const std::vector<long long>& params) {
  if (params.size() != ta.params.size())
    throw InadmissibleParameters("parameter vector has the wrong arity");
  for (long long p : params)
    if (p < 0) throw InadmissibleParameters("parameters must be nonnegative");
  if (!bexpr_eval(*ta.resilience, params))
    throw InadmissibleParameters("resilience condition fails at this valuation");
}

void compositions(long long total, size_t parts, std::vector<long long>& acc,
                  const std::function<void(const std::vector<long long>&)>& emit) {
  if (parts == 1) {
    acc.push_back(total);
    emit(acc);
    acc.pop_back();
    return;
  }
  for (long long c = total; c >= 0; --c) {
    acc.push_back(c);
    compositions(total - c, parts - 1, acc, emit);
    acc.pop_back();
  }
}

}  // namespace

std::vector<ConcreteConfig> initial_configs(const ThresholdAutomaton& ta,
                                            const std::vector<long long>& params) {
  check_admissible(ta, params);
  const long long n = process_count(ta, params);
  std::vector<ConcreteConfig> out;
  if (ta.initial.empty()) return out;
  std::vector<long long> acc;
  compositions(n, ta.initial.size(), acc, [&](const std::vector<long long>& dist) {
    ConcreteConfig c;
    c.counters.assign(ta.locations.size(), 0);
    for (size_t i = 0; i < ta.initial.size(); ++i) c.counters[ta.initial[i]] = dist[i];
    c.shared.assign(ta.shared.size(), 0);
    c.params = params;
    out.push_back(std::move(c));
  });
  return out;
}

ExplorationResult explore(const ThresholdAutomaton& ta,
                          const std::vector<long long>& params, int depth_limit,
                          size_t node_limit) {
  ExplorationResult out;
  out.params = params;
  out.exhausted = true;

  using Key = std::pair<std::vector<long long>, std::vector<long long>>;
  std::map<Key, int> seen;
  std::vector<int> depth;

  auto add = [&](ConcreteConfig&& c, int from, int rule) -> bool {
    Key key{c.counters, c.shared};
    if (seen.count(key)) return true;
    if (out.configs.size() >= node_limit) {
      out.exhausted = false;
      return false;
    }
    int d = from < 0 ? 0 : depth[from] + 1;
    seen.emplace(std::move(key), static_cast<int>(out.configs.size()));
    out.configs.push_back(std::move(c));
    out.parent.push_back(from);
    out.parent_rule.push_back(rule);
    depth.push_back(d);
    out.depth_reached = std::max(out.depth_reached, d);
    return true;
  };

  for (ConcreteConfig& c : initial_configs(ta, params))
    if (!add(std::move(c), -1, -1)) return out;

  for (size_t at = 0; at < out.configs.size(); ++at) {
    for (size_t r = 0; r < ta.rules.size(); ++r) {
      auto next = concrete_step(ta, out.configs[at], static_cast<int>(r));
      if (!next) continue;
      if (depth[at] >= depth_limit) {
        // Not expanded; only the existence of a new successor matters.
        if (!seen.count({next->counters, next->shared})) out.exhausted = false;
        continue;
      }
      if (!add(std::move(*next), static_cast<int>(at), static_cast<int>(r)))
        return out;
    }
  }
  return out;
}

OracleOutcome oracle_check(const ThresholdAutomaton& ta,
                           const std::vector<long long>& params,
                           const Specification& spec, int depth_limit,
                           size_t node_limit) {
  ExplorationResult ex = explore(ta, params, depth_limit, node_limit);
  OracleOutcome out;
  out.exhausted = ex.exhausted;
  out.states = ex.configs.size();
  out.depth_reached = ex.depth_reached;
  for (size_t i = 0; i < ex.configs.size(); ++i) {
    if (!spec_satisfied(spec, ex.configs[i].counters)) continue;
    OraclePath path;
    for (int at = static_cast<int>(i); at >= 0; at = ex.parent[at]) {
      path.configs.push_back(ex.configs[at]);
      if (ex.parent[at] >= 0) path.rules.push_back(ex.parent_rule[at]);
    }
    std::reverse(path.configs.begin(), path.configs.end());
    std::reverse(path.rules.begin(), path.rules.end());
    out.kind = OracleKind::Violated;
    out.path = std::move(path);
    return out;
  }
  out.kind = ex.exhausted ? OracleKind::Holds : OracleKind::Inconclusive;
  return out;
}

bool validate_witness(const ThresholdAutomaton& ta, const WitnessPath& w) {
  if (w.params.size() != ta.params.size()) return false;
  for (long long p : w.params)
    if (p < 0) return false;
  if (!bexpr_eval(*ta.resilience, w.params)) return false;

  Rat n = ta.size_term.eval(w.params);
  if (n.get_den() != 1 || n < 0) return false;

  if (w.initial_counters.size() != ta.locations.size()) return false;
  long long initial_sum = 0;
  for (size_t i = 0; i < w.initial_counters.size(); ++i) {
    if (w.initial_counters[i] < 0) return false;
    if (!ta.is_initial(static_cast<int>(i))) {
      if (w.initial_counters[i] != 0) return false;
    } else {
      initial_sum += w.initial_counters[i];
    }
  }
  if (Rat(static_cast<long>(initial_sum)) != n) return false;

  ConcreteConfig c;
  c.counters = w.initial_counters;
  c.shared.assign(ta.shared.size(), 0);
  c.params = w.params;
  for (const WitnessStep& step : w.steps) {
    if (step.rule < 0 || step.rule >= static_cast<int>(ta.rules.size())) return false;
    if (step.count < 1) return false;
    for (long long k = 0; k < step.count; ++k) {
      auto next = concrete_step(ta, c, step.rule);
      if (!next) return false;
      c = std::move(*next);
    }
  }
  return c.counters == w.final_counters && c.shared == w.final_shared;
}

std::vector<std::vector<long long>> enumerate_admissible(const ThresholdAutomaton& ta,
                                                         long long cap) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> v(ta.params.size(), 0);
  for (;;) {
    if (bexpr_eval(*ta.resilience, v)) {
      Rat n = ta.size_term.eval(v);
      if (n.get_den() == 1 && n >= 0) out.push_back(v);
    }
    size_t i = v.size();
    while (i > 0) {
      --i;
      if (++v[i] <= cap) break;
      v[i] = 0;
      if (i == 0) return out;
    }
    if (v.empty()) return out;
  }
}

}  // namespace eta

