#include "eta/zcs.hpp"

namespace eta {

bool zcs_leq(const ZConfig& a, const ZConfig& b) {
  if (a.intervals != b.intervals) return false;
  for (size_t i = 0; i < a.bits.size(); ++i)
    if (a.bits[i] > b.bits[i]) return false;
  return true;
}

bool zcs_initial(const AbstractTa& at, const ZConfig& z) {
  for (size_t i = 0; i < z.bits.size(); ++i)
    if (z.bits[i] && !at.ta->is_initial(static_cast<int>(i))) return false;
  for (int8_t g : z.intervals)
    if (g != 0) return false;
  return true;
}

ZConfig zcs_project(const AbsConfig& c) {
  ZConfig z;
  z.bits.reserve(c.counters.size());
  for (int k : c.counters) z.bits.push_back(k > 0 ? 1 : 0);
  z.intervals = c.intervals;
  return z;
}

bool zcs_enabled(const AbstractTa& at, const AbstractRule& r, const ZConfig& z) {
  if (!z.bits[r.from]) return false;
  for (int x = 0; x < at.num_shared(); ++x)
    if (!(r.allowed[x] >> z.intervals[x] & 1)) return false;
  return true;
}

std::vector<ZConfig> zcs_successors(const AbstractTa& at, const AbstractRule& r,
                                    const ZConfig& z) {
  if (!zcs_enabled(at, r, z)) return {};
  std::vector<ZConfig> out;
  for (auto& intervals : cross_intervals(interval_target_options(at, r, z.intervals))) {
    for (int keep = 0; keep <= 1; ++keep) {
      if (keep == 1 && r.from == r.to) continue;  // self loop stays occupied
      ZConfig s;
      s.bits = z.bits;
      s.bits[r.from] = static_cast<int8_t>(r.from == r.to ? 1 : keep);
      s.bits[r.to] = 1;
      s.intervals = intervals;
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<std::pair<int, ZConfig>> zcs_successors(const AbstractTa& at,
                                                    const ZConfig& z) {
  std::vector<std::pair<int, ZConfig>> out;
  for (const AbstractRule& r : at.rules)
    for (ZConfig& s : zcs_successors(at, r, z)) out.emplace_back(r.index, std::move(s));
  return out;
}

std::vector<ZcsPred> zcs_pred(const AbstractTa& at, const AbstractRule& r,
                              const ZConfig& target) {
  if (!target.bits[r.to]) return {};
  std::vector<ZcsPred> out;
  for (auto& intervals :
       cross_intervals(interval_source_options(at, r, target.intervals))) {
    // The step overwrites the target bit, so its previous value is free
    // unless the rule is a self loop.
    const int prev_to_max = r.from == r.to ? 0 : 1;
    for (int prev_to = 0; prev_to <= prev_to_max; ++prev_to) {
      ZConfig p;
      p.bits = target.bits;
      p.bits[r.from] = 1;
      if (r.from != r.to) p.bits[r.to] = static_cast<int8_t>(prev_to);
      p.intervals = intervals;
      out.push_back(ZcsPred{std::move(p), r.index});
    }
  }
  return out;
}

std::vector<ZcsPred> zcs_cpred_basis(const AbstractTa& at, const ZConfig& target) {
  std::vector<ZcsPred> out;
  for (const AbstractRule& r : at.rules) {
    // The step always fills the target location, so a target with that bit
    // clear is covered via its lifted variant; the minimal source leaves the
    // filled location empty beforehand.
    for (auto& intervals :
         cross_intervals(interval_source_options(at, r, target.intervals))) {
      ZcsPred p;
      p.source.bits = target.bits;
      p.source.bits[r.from] = 1;
      if (r.to != r.from) p.source.bits[r.to] = 0;
      p.source.intervals = std::move(intervals);
      p.rule = r.index;
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace eta
