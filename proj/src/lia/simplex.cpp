#include "lia/simplex.hpp"

#include <optional>

namespace eta::lia {

namespace {

using Rat = mpq_class;

struct Bounds {
  std::optional<Rat> lower;
  std::optional<Rat> upper;

  bool tighten_lower(const Rat& v) {
    if (!lower || v > *lower) lower = v;
    return !upper || *lower <= *upper;
  }
  bool tighten_upper(const Rat& v) {
    if (!upper || v < *upper) upper = v;
    return !lower || *lower <= *upper;
  }
};

/// Bounded-variable simplex: every constraint row becomes a slack variable
/// with bounds, single-variable rows become bounds directly. The assignment
/// keeps nonbasic variables inside their bounds; pivoting repairs basic ones.
class Tableau {
 public:
  bool load(const std::vector<LinRow>& rows) {
    for (const LinRow& row : rows) {
      if (row.c.empty()) {
        if (row.eq ? row.k != 0 : row.k < 0) return false;
        continue;
      }
      if (row.c.size() == 1) {
        auto& [var, a] = *row.c.begin();
        int x = dense(var);
        Rat bound = Rat(-row.k) / Rat(a);
        bound.canonicalize();
        if (row.eq) {
          if (!bounds_[x].tighten_lower(bound) || !bounds_[x].tighten_upper(bound))
            return false;
        } else if (a > 0) {
          if (!bounds_[x].tighten_lower(bound)) return false;
        } else {
          if (!bounds_[x].tighten_upper(bound)) return false;
        }
        continue;
      }
      std::map<int, Rat> form;
      for (const auto& [var, a] : row.c) form[dense(var)] = Rat(a);
      pending_rows_.push_back({std::move(form), Rat(-row.k), row.eq});
    }

    // Slack variables come after every structural one.
    for (auto& [form, rhs, eq] : pending_rows_) {
      int s = static_cast<int>(beta_.size());
      beta_.emplace_back(0);
      bounds_.emplace_back();
      if (eq) {
        bounds_[s].lower = rhs;
        bounds_[s].upper = rhs;
      } else {
        bounds_[s].lower = rhs;
      }
      rows_[s] = std::move(form);
    }

    // Start nonbasic variables at a value inside their bounds, then derive
    // the basic (slack) values from their rows.
    for (size_t x = 0; x < beta_.size(); ++x) {
      if (rows_.count(static_cast<int>(x))) continue;
      if (bounds_[x].lower)
        beta_[x] = *bounds_[x].lower;
      else if (bounds_[x].upper)
        beta_[x] = *bounds_[x].upper;
    }
    for (auto& [s, form] : rows_) {
      Rat acc = 0;
      for (const auto& [v, a] : form) acc += a * beta_[v];
      beta_[s] = acc;
    }
    return true;
  }

  bool solve() {
    for (;;) {
      int b = -1;
      bool need_increase = false;
      for (const auto& [s, form] : rows_) {
        if (bounds_[s].lower && beta_[s] < *bounds_[s].lower) {
          b = s;
          need_increase = true;
          break;
        }
        if (bounds_[s].upper && beta_[s] > *bounds_[s].upper) {
          b = s;
          need_increase = false;
          break;
        }
      }
      if (b < 0) return true;

      const std::map<int, Rat>& form = rows_[b];
      int j = -1;
      for (const auto& [v, a] : form) {
        bool can_increase = !bounds_[v].upper || beta_[v] < *bounds_[v].upper;
        bool can_decrease = !bounds_[v].lower || beta_[v] > *bounds_[v].lower;
        bool helps = need_increase ? (a > 0 ? can_increase : can_decrease)
                                   : (a > 0 ? can_decrease : can_increase);
        if (helps) {
          j = v;
          break;
        }
      }
      if (j < 0) return false;

      Rat target = need_increase ? *bounds_[b].lower : *bounds_[b].upper;
      pivot_and_update(b, j, target);
    }
  }

  std::map<int, Rat> extract(int num_structural) const {
    std::map<int, Rat> out;
    for (const auto& [orig, x] : dense_ids_)
      if (x < num_structural) out[orig] = beta_[x];
    return out;
  }

  int num_structural() const { return num_structural_; }

 private:
  std::vector<Rat> beta_;
  std::vector<Bounds> bounds_;
  std::map<int, std::map<int, Rat>> rows_;  // basic var -> nonbasic form
  std::map<int, int> dense_ids_;            // original var -> dense index
  int num_structural_ = 0;

  struct PendingRow {
    std::map<int, Rat> form;
    Rat rhs;
    bool eq;
  };
  std::vector<PendingRow> pending_rows_;

  int dense(int var) {
    auto it = dense_ids_.find(var);
    if (it != dense_ids_.end()) return it->second;
    int x = static_cast<int>(beta_.size());
    dense_ids_.emplace(var, x);
    beta_.emplace_back(0);
    bounds_.emplace_back();
    ++num_structural_;
    return x;
  }

  void pivot_and_update(int b, int j, const Rat& target) {
    std::map<int, Rat> row = std::move(rows_[b]);
    rows_.erase(b);
    Rat a = row[j];
    Rat theta = (target - beta_[b]) / a;
    beta_[b] = target;
    beta_[j] += theta;
    for (auto& [s, form] : rows_) {
      auto it = form.find(j);
      if (it != form.end()) beta_[s] += it->second * theta;
    }

    // Solve row b for x_j and substitute it everywhere x_j occurs.
    std::map<int, Rat> jrow;
    jrow[b] = 1 / a;
    for (const auto& [v, coeff] : row)
      if (v != j) jrow[v] = -coeff / a;
    for (auto& [s, form] : rows_) {
      auto it = form.find(j);
      if (it == form.end()) continue;
      Rat factor = it->second;
      form.erase(it);
      for (const auto& [v, coeff] : jrow) {
        Rat& slot = form[v];
        slot += factor * coeff;
        if (slot == 0) form.erase(v);
      }
    }
    rows_[j] = std::move(jrow);
  }
};

}  // namespace

LpResult lp_feasible(const std::vector<LinRow>& rows) {
  Tableau t;
  LpResult out;
  if (!t.load(rows)) return out;
  if (!t.solve()) return out;
  out.feasible = true;
  out.point = t.extract(t.num_structural());
  return out;
}

}  // namespace eta::lia
