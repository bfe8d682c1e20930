#include "eta/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <deque>
#include <set>
#include <stdexcept>
#include <thread>

#include "eta/oracle.hpp"

namespace eta {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Witness: return "witness";
    case Verdict::SafeProven: return "safe";
    case Verdict::BudgetExhausted: return "budget-exhausted";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

struct AcsCoverTraits {
  using Config = AbsConfig;
  static constexpr ConcretizeMode mode = ConcretizeMode::Cover;

  static bool leq(const Config& a, const Config& b) { return acs_leq(a, b); }
  static bool initial_class(const AbstractTa& at, const Config& c) {
    return acs_initial(at, c);
  }
  static std::vector<std::pair<Config, int>> preds(const AbstractTa& at,
                                                   const Config& target) {
    std::vector<std::pair<Config, int>> out;
    for (AcsPred& p : cpred_basis(at, target))
      out.emplace_back(std::move(p.source), p.rule);
    return out;
  }
  static DischargePath path(const AbstractTa&, const std::vector<Config>& configs,
                            const std::vector<int>& rules) {
    return discharge_path_from_acs(configs, rules);
  }
};

struct ZcsCoverTraits {
  using Config = ZConfig;
  static constexpr ConcretizeMode mode = ConcretizeMode::Cover;

  static bool leq(const Config& a, const Config& b) { return zcs_leq(a, b); }
  static bool initial_class(const AbstractTa& at, const Config& z) {
    return zcs_initial(at, z);
  }
  static std::vector<std::pair<Config, int>> preds(const AbstractTa& at,
                                                   const Config& target) {
    std::vector<std::pair<Config, int>> out;
    for (ZcsPred& p : zcs_cpred_basis(at, target))
      out.emplace_back(std::move(p.source), p.rule);
    return out;
  }
  static DischargePath path(const AbstractTa& at, const std::vector<Config>& configs,
                            const std::vector<int>& rules) {
    return discharge_path_from_zcs(at, configs, rules);
  }
};

struct ZcsReachTraits {
  using Config = ZConfig;
  static constexpr ConcretizeMode mode = ConcretizeMode::Reach;

  // Exact predecessors; pruning degenerates to visited-state dedup.
  static bool leq(const Config& a, const Config& b) { return a == b; }
  static bool initial_class(const AbstractTa& at, const Config& z) {
    return zcs_initial(at, z);
  }
  static std::vector<std::pair<Config, int>> preds(const AbstractTa& at,
                                                   const Config& target) {
    std::vector<std::pair<Config, int>> out;
    for (size_t r = 0; r < at.rules.size(); ++r)
      for (ZcsPred& p : zcs_pred(at, at.rules[r], target))
        out.emplace_back(std::move(p.source), p.rule);
    return out;
  }
  static DischargePath path(const AbstractTa& at, const std::vector<Config>& configs,
                            const std::vector<int>& rules) {
    return discharge_path_from_zcs(at, configs, rules);
  }
};

template <class T>
class Engine {
 public:
  Engine(const AbstractTa& at, const ThresholdOrder& order,
         SolverClient& solver, const EngineBudget& budget)
      : at_(at), order_(order), solver_(solver), budget_(budget) {}

  EngineResult run(const std::vector<typename T::Config>& err) {
    deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                   std::chrono::duration<double>(budget_.wall_seconds));
    seed(err);
    fixpoint();
    collect_roots();
    analyze_cycles();

    result_.stats.nodes = cfgs_.size();
    result_.stats.edges = 0;
    for (const auto& edges : out_) result_.stats.edges += edges.size();
    result_.stats.kept = static_cast<size_t>(
        std::count(kept_.begin(), kept_.end(), static_cast<char>(1)));
    result_.stats.roots = roots_.size();

    if (roots_.empty()) {
      result_.verdict = Verdict::SafeProven;
      return result_;
    }
    if (enumerate_and_discharge()) {
      result_.verdict = Verdict::Witness;
      return result_;
    }
    bool cycles_ok = result_.stats.graph_acyclic || result_.stats.cycles_safe;
    result_.verdict = (!result_.stats.enumeration_truncated && cycles_ok)
                          ? Verdict::SafeProven
                          : Verdict::BudgetExhausted;
    return result_;
  }

 private:
  using Config = typename T::Config;

  const AbstractTa& at_;
  const ThresholdOrder& order_;
  SolverClient& solver_;
  const EngineBudget& budget_;
  Clock::time_point deadline_;

  std::vector<Config> cfgs_;  // node id -> configuration, never removed
  std::map<Config, int> ids_;
  std::vector<std::vector<std::pair<int, int>>> out_;  // node -> (rule, target)
  std::vector<std::set<std::pair<int, int>>> out_seen_;
  std::vector<char> kept_;  // member of the current anti-chain
  std::vector<char> sink_;  // member of the error basis
  std::vector<int> frontier_;
  std::vector<int> roots_;
  EngineResult result_;

  int materialize(const Config& c) {
    int id = static_cast<int>(cfgs_.size());
    cfgs_.push_back(c);
    ids_.emplace(c, id);
    out_.emplace_back();
    out_seen_.emplace_back();
    kept_.push_back(1);
    sink_.push_back(0);
    return id;
  }

  void add_edge(int src, int rule, int dst) {
    if (!out_seen_[src].insert({rule, dst}).second) return;
    out_[src].push_back({rule, dst});
  }

  /// Inserts a predecessor candidate, keeping the kept set an anti-chain
  /// (error-basis nodes exempt). A dominated candidate only contributes an
  /// edge from its smallest kept representative; configurations it dominates
  /// are retired and folded into it, so the graph never enumerates a path
  /// whose discharge duplicates that of a smaller representative.
  void insert_candidate(const Config& c, int rule, int target,
                        std::vector<int>& next_frontier) {
    for (int v = 0; v < static_cast<int>(cfgs_.size()); ++v) {
      if (!kept_[v] || !T::leq(cfgs_[v], c)) continue;
      add_edge(v, rule, target);
      return;
    }
    int id = materialize(c);
    add_edge(id, rule, target);
    std::set<int> retired;
    for (int v = 0; v < id; ++v) {
      if (!kept_[v] || sink_[v]) continue;
      if (!T::leq(c, cfgs_[v])) continue;
      kept_[v] = 0;  // skipped when its frontier turn comes
      retired.insert(v);
      for (auto& e : out_[v]) add_edge(id, e.first, e.second);
      out_[v].clear();
      out_seen_[v].clear();
    }
    if (!retired.empty()) redirect_targets(retired, id);
    next_frontier.push_back(id);
  }

  /// Rewrites every edge into a retired configuration to point at its kept
  /// representative. The order requires equal interval vectors, so rewritten
  /// paths discharge the same constraints as the originals.
  void redirect_targets(const std::set<int>& retired, int id) {
    for (int src = 0; src < static_cast<int>(cfgs_.size()); ++src) {
      if (out_[src].empty()) continue;
      bool touched = false;
      for (auto& e : out_[src])
        if (retired.count(e.second)) {
          e.second = id;
          touched = true;
        }
      if (!touched) continue;
      std::set<std::pair<int, int>> seen;
      std::vector<std::pair<int, int>> unique;
      unique.reserve(out_[src].size());
      for (auto& e : out_[src])
        if (seen.insert(e).second) unique.push_back(e);
      out_[src] = std::move(unique);
      out_seen_[src] = std::move(seen);
    }
  }

  void seed(const std::vector<Config>& err) {
    std::vector<int> seeded;
    for (const Config& c : err) {
      auto it = ids_.find(c);
      if (it != ids_.end()) continue;
      // The error basis is pruned against itself under the covering order.
      bool dominated = false;
      for (int v : seeded)
        if (kept_[v] && T::leq(cfgs_[v], c)) dominated = true;
      if (dominated) continue;
      int id = materialize(c);
      sink_[id] = 1;
      for (int v : seeded)
        if (kept_[v] && T::leq(c, cfgs_[v])) kept_[v] = 0;
      seeded.push_back(id);
    }
    for (int v : seeded)
      if (kept_[v]) frontier_.push_back(v);
  }

  void fixpoint() {
    while (!frontier_.empty()) {
      ++result_.stats.iterations;
      result_.stats.frontier_sizes.push_back(frontier_.size());
      std::vector<int> current = std::move(frontier_);
      std::vector<int> next;
      for (size_t i = 0; i < current.size(); ++i) {
        int target = current[i];
        if (!kept_[target]) continue;  // retired mid-round
        std::vector<std::pair<Config, int>> preds = T::preds(at_, cfgs_[target]);
        for (auto& [cfg, rule] : preds) insert_candidate(cfg, rule, target, next);
      }
      frontier_ = std::move(next);
    }
  }

  void collect_roots() {
    for (int v = 0; v < static_cast<int>(cfgs_.size()); ++v)
      if (kept_[v] && T::initial_class(at_, cfgs_[v])) roots_.push_back(v);
  }

  /// Cycle structure of the part of the graph reachable from the roots,
  /// via iterative Tarjan strongly-connected components.
  void analyze_cycles() {
    int n = static_cast<int>(cfgs_.size());
    std::vector<char> reach(n, 0);
    std::vector<int> stack = roots_;
    for (int v : roots_) reach[v] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto& e : out_[v])
        if (!reach[e.second]) {
          reach[e.second] = 1;
          stack.push_back(e.second);
        }
    }

    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<int> scc_stack;
    int next_index = 0, next_comp = 0;
    struct Frame {
      int v;
      size_t edge;
    };
    for (int start = 0; start < n; ++start) {
      if (!reach[start] || index[start] >= 0) continue;
      std::vector<Frame> call{{start, 0}};
      index[start] = low[start] = next_index++;
      scc_stack.push_back(start);
      on_stack[start] = 1;
      while (!call.empty()) {
        Frame& f = call.back();
        if (f.edge < out_[f.v].size()) {
          int w = out_[f.v][f.edge++].second;
          if (!reach[w]) continue;
          if (index[w] < 0) {
            index[w] = low[w] = next_index++;
            scc_stack.push_back(w);
            on_stack[w] = 1;
            call.push_back({w, 0});
          } else if (on_stack[w]) {
            low[f.v] = std::min(low[f.v], index[w]);
          }
        } else {
          if (low[f.v] == index[f.v]) {
            for (;;) {
              int w = scc_stack.back();
              scc_stack.pop_back();
              on_stack[w] = 0;
              comp[w] = next_comp;
              if (w == f.v) break;
            }
            ++next_comp;
          }
          int v = f.v;
          call.pop_back();
          if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        }
      }
    }

    std::vector<int> comp_size(next_comp, 0);
    for (int v = 0; v < n; ++v)
      if (reach[v]) ++comp_size[comp[v]];

    for (int v = 0; v < n; ++v) {
      if (!reach[v]) continue;
      for (auto& [rule, w] : out_[v]) {
        bool cyclic = comp[v] == comp[w] && (v == w || comp_size[comp[v]] > 1);
        if (!cyclic) continue;
        result_.stats.graph_acyclic = false;
        const AbstractRule& ar = at_.rules[rule];
        bool dec = std::any_of(ar.update.begin(), ar.update.end(),
                               [](int u) { return u < 0; });
        if (dec || !ar.resets.empty()) result_.stats.cycles_safe = false;
        if (ar.has_upper_atom) result_.stats.upper_guard_warning = true;
      }
    }
    if (result_.stats.graph_acyclic) result_.stats.upper_guard_warning = false;
  }

  struct Entry {
    std::vector<int> nodes;
    std::vector<int> rules;
  };

  /// Breadth-first error-path enumeration in nondecreasing length. A node may
  /// appear at most unfold+1 times on one path. Complete paths are discharged
  /// in enumeration-order batches. Returns true on a validated concrete
  /// witness.
  bool enumerate_and_discharge() {
    std::deque<Entry> queue;
    for (int r : roots_) queue.push_back({{r}, {}});

    std::vector<Entry> pending;
    const size_t batch = std::max<size_t>(budget_.jobs, 1) * 4;
    size_t pops = 0;
    const size_t pop_cap = budget_.max_paths * 64 + 1024;
    while (!queue.empty()) {
      if (Clock::now() > deadline_ || ++pops > pop_cap) {
        result_.stats.enumeration_truncated = true;
        break;
      }
      Entry e = std::move(queue.front());
      queue.pop_front();
      int last = e.nodes.back();

      if (sink_[last]) {
        if (result_.stats.paths_enumerated >= budget_.max_paths) {
          result_.stats.enumeration_truncated = true;
          break;
        }
        ++result_.stats.paths_enumerated;
        pending.push_back(e);
        if (pending.size() >= batch && discharge_batch(pending)) return true;
      }

      for (auto& [rule, dst] : out_[last]) {
        long occurrences = std::count(e.nodes.begin(), e.nodes.end(), dst);
        if (occurrences > budget_.unfold) continue;
        Entry ext = e;
        ext.nodes.push_back(dst);
        ext.rules.push_back(rule);
        queue.push_back(std::move(ext));
      }
    }
    return discharge_batch(pending);
  }

  /// Discharges a batch of complete paths, concurrently when the budget
  /// allows. Each path is first screened in-process: rational infeasibility
  /// of its relaxation already proves it spurious, and only survivors are
  /// sent to the solver. Outcomes are consumed in enumeration order, so the
  /// reported witness (or propagated failure) matches a sequential run.
  bool discharge_batch(std::vector<Entry>& pending) {
    if (pending.empty()) return false;
    const size_t n = pending.size();
    struct Slot {
      DischargePath dp;
      DischargeResult res;
      std::exception_ptr error;
      bool screened = false;
    };
    std::vector<Slot> slots(n);

    std::atomic<size_t> cursor{0};
    auto work = [&]() {
      for (;;) {
        size_t i = cursor.fetch_add(1);
        if (i >= n) return;
        try {
          std::vector<Config> configs;
          configs.reserve(pending[i].nodes.size());
          for (int v : pending[i].nodes) configs.push_back(cfgs_[v]);
          slots[i].dp = T::path(at_, configs, pending[i].rules);
          if (budget_.screen &&
              !lia::lp_feasible(build_relaxation(at_, order_, slots[i].dp, T::mode))
                   .feasible) {
            slots[i].screened = true;
            slots[i].res = DischargeResult{DischargeResult::Kind::Spurious, {}, {}};
          } else {
            slots[i].res = discharge(at_, order_, slots[i].dp, T::mode, solver_);
          }
        } catch (...) {
          slots[i].error = std::current_exception();
        }
      }
    };
    size_t workers = std::min(std::max<size_t>(budget_.jobs, 1), n);
    if (workers <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (size_t t = 0; t < workers; ++t) pool.emplace_back(work);
      for (std::thread& t : pool) t.join();
    }
    pending.clear();

    for (size_t i = 0; i < n; ++i) {
      if (slots[i].error) continue;
      if (slots[i].screened)
        ++result_.stats.screened;
      else
        ++result_.stats.solver_calls;
    }

    for (size_t i = 0; i < n; ++i) {
      if (slots[i].error) std::rethrow_exception(slots[i].error);
      if (slots[i].res.kind == DischargeResult::Kind::Spurious) {
        ++result_.stats.spurious;
        continue;
      }
      if (!validate_witness(*at_.ta, slots[i].res.witness))
        throw std::logic_error("discharged witness failed concrete validation");
      result_.witness_abstract = std::move(slots[i].dp);
      result_.witness = std::move(slots[i].res.witness);
      result_.witness_model = std::move(slots[i].res.model);
      return true;
    }
    return false;
  }
};

}  // namespace

EngineResult run_acs_cover(const AbstractTa& at, const ThresholdOrder& order,
                           const std::vector<AbsConfig>& err, SolverClient& solver,
                           const EngineBudget& budget) {
  return Engine<AcsCoverTraits>(at, order, solver, budget).run(err);
}

EngineResult run_zcs_cover(const AbstractTa& at, const ThresholdOrder& order,
                           const std::vector<ZConfig>& err, SolverClient& solver,
                           const EngineBudget& budget) {
  return Engine<ZcsCoverTraits>(at, order, solver, budget).run(err);
}

EngineResult run_zcs_reach(const AbstractTa& at, const ThresholdOrder& order,
                           const std::vector<ZConfig>& err, SolverClient& solver,
                           const EngineBudget& budget) {
  return Engine<ZcsReachTraits>(at, order, solver, budget).run(err);
}

bool acs_replays(const AbstractTa& at, const std::vector<AbsConfig>& configs,
                 const std::vector<int>& rules) {
  if (configs.empty() || configs.size() != rules.size() + 1) return false;
  for (size_t i = 0; i < rules.size(); ++i) {
    if (rules[i] < 0 || rules[i] >= static_cast<int>(at.rules.size())) return false;
    auto succs = acs_successors(at, at.rules[rules[i]], configs[i]);
    if (std::find(succs.begin(), succs.end(), configs[i + 1]) == succs.end())
      return false;
  }
  return true;
}

bool zcs_replays(const AbstractTa& at, const std::vector<ZConfig>& configs,
                 const std::vector<int>& rules) {
  if (configs.empty() || configs.size() != rules.size() + 1) return false;
  for (size_t i = 0; i < rules.size(); ++i) {
    if (rules[i] < 0 || rules[i] >= static_cast<int>(at.rules.size())) return false;
    auto succs = zcs_successors(at, at.rules[rules[i]], configs[i]);
    if (std::find(succs.begin(), succs.end(), configs[i + 1]) == succs.end())
      return false;
  }
  return true;
}

}  // namespace eta
