#pragma once

// Exact feasibility of linear systems
//
//     A x = b,   x_j >= l_j  (for every j with a lower bound),
//
// decided by a two-phase simplex over Q with Bland's anti-cycling rule.
// Phase 1 finds a basic feasible point; phase 2 optionally minimizes a linear
// objective so that returned witnesses are small and reproducible.

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "sphfan/error.hpp"
#include "sphfan/rational.hpp"

namespace sphfan {

struct FeasibilitySystem {
  Mat equalities;
  Vec rhs;                                     // empty means all zeros
  std::vector<std::optional<Rat>> lower_bounds;  // one entry per variable; nullopt = free
  Vec objective;                               // empty means "any feasible point"

  std::size_t variables() const { return equalities.cols(); }

  Rat rhs_at(std::size_t i) const { return rhs.empty() ? Rat{} : rhs[i]; }

  void check_shape() const {
    if (!rhs.empty() && rhs.size() != equalities.rows()) throw DimensionMismatch(equalities.rows(), rhs.size());
    if (lower_bounds.size() != variables()) throw DimensionMismatch(variables(), lower_bounds.size());
    if (!objective.empty() && objective.size() != variables()) throw DimensionMismatch(variables(), objective.size());
  }
};

inline bool satisfies(const FeasibilitySystem& sys, const Vec& x) {
  if (x.size() != sys.variables()) return false;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (sys.lower_bounds[j] && x[j] < *sys.lower_bounds[j]) return false;
  const Vec ax = sys.equalities.apply(x);
  for (std::size_t i = 0; i < ax.size(); ++i)
    if (ax[i] != sys.rhs_at(i)) return false;
  return true;
}

// An independent yes/no decision procedure that can shadow the simplex.
using FeasibilityDecider = std::function<bool(const FeasibilitySystem&)>;

namespace detail {

inline thread_local const FeasibilityDecider* active_cross_check = nullptr;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cells_(rows, std::vector<Rat>(cols + 1)), cost_(cols + 1), basis_(rows) {}

  std::size_t rows() const { return cells_.size(); }
  std::size_t cols() const { return cost_.size() - 1; }
  Rat& at(std::size_t i, std::size_t j) { return cells_[i][j]; }
  Rat& rhs(std::size_t i) { return cells_[i].back(); }
  Rat& cost(std::size_t j) { return cost_[j]; }
  Rat objective_value() const { return -cost_.back(); }
  std::size_t& basis(std::size_t i) { return basis_[i]; }

  void pivot(std::size_t p, std::size_t q) {
    const Rat piv = cells_[p][q];
    for (auto& v : cells_[p]) v /= piv;
    auto eliminate = [&](std::vector<Rat>& row) {
      if (row[q].is_zero()) return;
      const Rat f = row[q];
      for (std::size_t j = 0; j < row.size(); ++j)
        if (!cells_[p][j].is_zero()) row[j] -= f * cells_[p][j];
    };
    for (std::size_t i = 0; i < rows(); ++i)
      if (i != p) eliminate(cells_[i]);
    eliminate(cost_);
    basis_[p] = q;
  }

  // Runs Bland's rule over columns [0, limit).  Returns false on unboundedness.
  bool optimize(std::size_t limit) {
    for (;;) {
      std::size_t q = limit;
      for (std::size_t j = 0; j < limit; ++j)
        if (cost_[j].sign() < 0) {
          q = j;
          break;
        }
      if (q == limit) return true;
      std::optional<std::size_t> p;
      Rat best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (cells_[i][q].sign() <= 0) continue;
        const Rat ratio = cells_[i].back() / cells_[i][q];
        if (!p || ratio < best || (ratio == best && basis_[i] < basis_[*p])) {
          p = i;
          best = ratio;
        }
      }
      if (!p) return false;
      pivot(*p, q);
    }
  }

  void drop_row(std::size_t i) {
    cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(i));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
  }

 private:
  std::vector<std::vector<Rat>> cells_;
  std::vector<Rat> cost_;
  std::vector<std::size_t> basis_;
};

inline std::optional<Vec> run_simplex(const FeasibilitySystem& sys) {
  const std::size_t m = sys.equalities.rows();
  const std::size_t n = sys.variables();

  // Column layout of the standard form y >= 0: one column per bounded
  // variable (x = l + y), two per free variable (x = y+ - y-).
  struct Column {
    std::size_t var;
    int sign;
  };
  std::vector<Column> columns;
  std::vector<std::size_t> first_column(n);
  for (std::size_t j = 0; j < n; ++j) {
    first_column[j] = columns.size();
    columns.push_back({j, 1});
    if (!sys.lower_bounds[j]) columns.push_back({j, -1});
  }
  const std::size_t width = columns.size();

  Tableau t(m, width + m);
  for (std::size_t i = 0; i < m; ++i) {
    Rat b = sys.rhs_at(i);
    for (std::size_t j = 0; j < n; ++j)
      if (sys.lower_bounds[j]) b -= sys.equalities(i, j) * *sys.lower_bounds[j];
    const bool flip = b.sign() < 0;
    for (std::size_t k = 0; k < width; ++k) {
      Rat a = sys.equalities(i, columns[k].var);
      if (columns[k].sign < 0) a = -a;
      t.at(i, k) = flip ? -a : a;
    }
    t.at(i, width + i) = 1;
    t.rhs(i) = flip ? -b : b;
    t.basis(i) = width + i;
  }

  // Phase 1: minimize the sum of artificials.
  for (std::size_t k = 0; k < width; ++k) {
    Rat s;
    for (std::size_t i = 0; i < m; ++i) s += t.at(i, k);
    t.cost(k) = -s;
  }
  {
    Rat s;
    for (std::size_t i = 0; i < m; ++i) s += t.rhs(i);
    t.cost(width + m) = -s;
  }
  t.optimize(width + m);
  if (!t.objective_value().is_zero()) return std::nullopt;

  // Drive remaining artificials out of the basis; rows that cannot pivot are
  // linearly dependent and are dropped.
  for (std::size_t i = t.rows(); i-- > 0;) {
    if (t.basis(i) < width) continue;
    std::optional<std::size_t> q;
    for (std::size_t k = 0; k < width; ++k)
      if (!t.at(i, k).is_zero()) {
        q = k;
        break;
      }
    if (q) {
      t.pivot(i, *q);
    } else {
      t.drop_row(i);
    }
  }

  // Phase 2: minimize the requested objective over the original columns.
  if (!sys.objective.empty()) {
    for (std::size_t k = 0; k <= width + m; ++k) t.cost(k) = Rat{};
    std::vector<Rat> c(width);
    for (std::size_t k = 0; k < width; ++k) {
      c[k] = sys.objective[columns[k].var];
      if (columns[k].sign < 0) c[k] = -c[k];
    }
    for (std::size_t k = 0; k < width; ++k) {
      Rat r = c[k];
      for (std::size_t i = 0; i < t.rows(); ++i) r -= c[t.basis(i)] * t.at(i, k);
      t.cost(k) = r;
    }
    t.optimize(width);  // unbounded objectives still leave a feasible basis
  }

  std::vector<Rat> y(width);
  for (std::size_t i = 0; i < t.rows(); ++i)
    if (t.basis(i) < width) y[t.basis(i)] = t.rhs(i);
  Vec x(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = first_column[j];
    if (sys.lower_bounds[j]) {
      x[j] = *sys.lower_bounds[j] + y[k];
    } else {
      x[j] = y[k] - y[k + 1];
    }
  }
  return x;
}

}  // namespace detail

// Returns a feasible point, or nullopt when the system is infeasible.  When an
// objective is set and bounded below, the point is a minimizer.
inline std::optional<Vec> find_feasible_point(const FeasibilitySystem& sys) {
  sys.check_shape();
  auto x = detail::run_simplex(sys);
  if (x && !satisfies(sys, *x)) throw Error("internal error: simplex returned an infeasible point");
  if (detail::active_cross_check != nullptr) {
    const bool other = (*detail::active_cross_check)(sys);
    if (other != x.has_value()) {
      throw OracleDisagreement(std::string("simplex reports ") + (x ? "feasible" : "infeasible") +
                               ", cross-check reports " + (other ? "feasible" : "infeasible"));
    }
  }
  return x;
}

inline bool is_feasible(const FeasibilitySystem& sys) { return find_feasible_point(sys).has_value(); }

// Shadows every feasibility decision on this thread with `decider` for the
// lifetime of the guard; a disagreement raises OracleDisagreement.
class ScopedCrossCheck {
 public:
  explicit ScopedCrossCheck(FeasibilityDecider decider)
      : decider_(std::move(decider)), previous_(detail::active_cross_check) {
    detail::active_cross_check = &decider_;
  }
  ~ScopedCrossCheck() { detail::active_cross_check = previous_; }
  ScopedCrossCheck(const ScopedCrossCheck&) = delete;
  ScopedCrossCheck& operator=(const ScopedCrossCheck&) = delete;

 private:
  FeasibilityDecider decider_;
  const FeasibilityDecider* previous_;
};

}  // namespace sphfan
