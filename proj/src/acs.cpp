#include "eta/acs.hpp"

#include <algorithm>

namespace eta {

bool acs_leq(const AbsConfig& a, const AbsConfig& b) {
  if (a.intervals != b.intervals) return false;
  for (size_t i = 0; i < a.counters.size(); ++i)
    if (a.counters[i] > b.counters[i]) return false;
  return true;
}

bool acs_initial(const AbstractTa& at, const AbsConfig& c) {
  for (size_t i = 0; i < c.counters.size(); ++i)
    if (c.counters[i] > 0 && !at.ta->is_initial(static_cast<int>(i))) return false;
  for (int8_t g : c.intervals)
    if (g != 0) return false;
  return true;
}

std::vector<int> interval_targets(int i, int delta, int last) {
  if (delta == 0) return {i};
  if (delta > 0) {
    if (i == 0) return {1};  // I_0 holds only the value 0
    if (i == last) return {last};
    return {i, i + 1};
  }
  if (i == 0) return {0};
  return {i - 1, i};
}

std::vector<int> interval_sources(int i, int delta, int last) {
  if (delta == 0) return {i};
  if (delta > 0) {
    std::vector<int> out;
    if (i - 1 >= 0) out.push_back(i - 1);
    if (i != 0) out.push_back(i);
    return out;
  }
  std::vector<int> out{i};
  if (i + 1 <= last) out.push_back(i + 1);
  return out;
}

namespace {

bool is_reset(const AbstractRule& r, int var) {
  return std::find(r.resets.begin(), r.resets.end(), var) != r.resets.end();
}

}  // namespace

std::vector<std::vector<int>> interval_target_options(const AbstractTa& at,
                                                      const AbstractRule& r,
                                                      const std::vector<int8_t>& source) {
  const int last = at.num_intervals() - 1;
  std::vector<std::vector<int>> options(at.num_shared());
  for (int x = 0; x < at.num_shared(); ++x) {
    if (is_reset(r, x))
      options[x] = {0};
    else
      options[x] = interval_targets(source[x], r.update[x], last);
  }
  return options;
}

std::vector<std::vector<int>> interval_source_options(const AbstractTa& at,
                                                      const AbstractRule& r,
                                                      const std::vector<int8_t>& target) {
  const int last = at.num_intervals() - 1;
  std::vector<std::vector<int>> options(at.num_shared());
  for (int x = 0; x < at.num_shared(); ++x) {
    std::vector<int> opts;
    if (is_reset(r, x)) {
      if (target[x] != 0) return std::vector<std::vector<int>>(at.num_shared());
      for (int i = 0; i <= last; ++i) opts.push_back(i);
    } else {
      opts = interval_sources(target[x], r.update[x], last);
    }
    std::erase_if(opts, [&](int i) { return !(r.allowed[x] >> i & 1); });
    options[x] = std::move(opts);
  }
  return options;
}

std::vector<std::vector<int8_t>> cross_intervals(
    const std::vector<std::vector<int>>& options) {
  for (const auto& opt : options)
    if (opt.empty()) return {};
  std::vector<std::vector<int8_t>> out;
  std::vector<size_t> pick(options.size(), 0);
  for (;;) {
    std::vector<int8_t> v(options.size());
    for (size_t x = 0; x < options.size(); ++x)
      v[x] = static_cast<int8_t>(options[x][pick[x]]);
    out.push_back(std::move(v));
    if (options.empty()) return out;
    size_t x = options.size();
    while (x > 0) {
      --x;
      if (++pick[x] < options[x].size()) break;
      pick[x] = 0;
      if (x == 0) return out;
    }
  }
}

bool acs_enabled(const AbstractTa& at, const AbstractRule& r, const AbsConfig& c) {
  if (c.counters[r.from] < 1) return false;
  for (int x = 0; x < at.num_shared(); ++x)
    if (!(r.allowed[x] >> c.intervals[x] & 1)) return false;
  return true;
}

std::vector<AbsConfig> acs_successors(const AbstractTa& at, const AbstractRule& r,
                                      const AbsConfig& c) {
  if (!acs_enabled(at, r, c)) return {};
  std::vector<AbsConfig> out;
  for (auto& intervals : cross_intervals(interval_target_options(at, r, c.intervals))) {
    AbsConfig s;
    s.counters = c.counters;
    s.counters[r.from] -= 1;
    s.counters[r.to] += 1;
    s.intervals = std::move(intervals);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::pair<int, AbsConfig>> acs_successors(const AbstractTa& at,
                                                      const AbsConfig& c) {
  std::vector<std::pair<int, AbsConfig>> out;
  for (const AbstractRule& r : at.rules)
    for (AbsConfig& s : acs_successors(at, r, c)) out.emplace_back(r.index, std::move(s));
  return out;
}

std::vector<AcsPred> cpred_basis(const AbstractTa& at, const AbsConfig& target) {
  std::vector<AcsPred> out;
  for (const AbstractRule& r : at.rules) {
    // Unique minimal counter vector per rule: undo the move, lifting the
    // target where undoing would drive a counter negative or leave the
    // source location empty.
    std::vector<int> counters = target.counters;
    if (r.from != r.to) {
      counters[r.from] += 1;
      if (counters[r.to] >= 1) counters[r.to] -= 1;
    } else if (counters[r.from] < 1) {
      counters[r.from] = 1;
    }

    for (auto& intervals :
         cross_intervals(interval_source_options(at, r, target.intervals))) {
      AcsPred p;
      p.source.counters = counters;
      p.source.intervals = std::move(intervals);
      p.rule = r.index;
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace eta
