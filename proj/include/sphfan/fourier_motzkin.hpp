#pragma once

// Fourier-Motzkin elimination over Q.
//
// A deliberately simple, independent feasibility decision used to cross-check
// the simplex.  Equalities are removed by exact substitution first; the
// remaining inequalities are eliminated one variable at a time, discarding
// combinations that a (widened) Chernikov history rule proves redundant.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "sphfan/feasibility.hpp"
#include "sphfan/rational.hpp"

namespace sphfan::fm {

// a . x >= b  (or == b when `equality` is set).
struct Constraint {
  Vec coeffs;
  Rat bound;
  bool equality = false;
};

namespace detail {

struct Row {
  Vec coeffs;
  Rat bound;
  std::set<std::size_t> history;
};

// Scales a row so that its largest absolute coefficient is 1; rows become
// comparable for deduplication.
inline void normalize(Row& r) {
  Rat scale;
  for (const auto& c : r.coeffs) {
    const Rat a = c.sign() < 0 ? -c : c;
    if (a > scale) scale = a;
  }
  if (scale.is_zero()) return;
  for (auto& c : r.coeffs) c /= scale;
  r.bound /= scale;
}

}  // namespace detail

inline bool feasible(std::size_t variables, const std::vector<Constraint>& constraints) {
  std::vector<Constraint> eqs;
  std::vector<detail::Row> rows;
  for (const auto& c : constraints) {
    if (c.coeffs.size() != variables) throw DimensionMismatch(variables, c.coeffs.size());
    if (c.equality) {
      eqs.push_back(c);
    } else {
      rows.push_back({c.coeffs, c.bound, {rows.size()}});
    }
  }

  // Substitute equalities away: pick a variable with a nonzero coefficient and
  // replace it everywhere by its expression in the others.
  while (!eqs.empty()) {
    Constraint e = std::move(eqs.back());
    eqs.pop_back();
    std::optional<std::size_t> k;
    for (std::size_t j = 0; j < variables; ++j)
      if (!e.coeffs[j].is_zero()) {
        k = j;
        break;
      }
    if (!k) {
      if (!e.bound.is_zero()) return false;
      continue;
    }
    const Rat pivot = e.coeffs[*k];
    auto substitute = [&](Vec& coeffs, Rat& bound) {
      if (coeffs[*k].is_zero()) return;
      const Rat f = coeffs[*k] / pivot;
      for (std::size_t j = 0; j < variables; ++j) coeffs[j] -= f * e.coeffs[j];
      bound -= f * e.bound;
    };
    for (auto& other : eqs) substitute(other.coeffs, other.bound);
    for (auto& r : rows) substitute(r.coeffs, r.bound);
  }

  std::vector<bool> eliminated(variables, false);
  std::size_t eliminated_count = 0;
  for (;;) {
    // Check and drop rows with no remaining variables.
    std::vector<detail::Row> live;
    for (auto& r : rows) {
      if (is_zero(r.coeffs)) {
        if (r.bound.sign() > 0) return false;
      } else {
        live.push_back(std::move(r));
      }
    }
    rows = std::move(live);
    if (rows.empty()) return true;

    // Pick the variable whose elimination creates the fewest combinations.
    std::optional<std::size_t> var;
    std::size_t best_cost = 0;
    for (std::size_t j = 0; j < variables; ++j) {
      if (eliminated[j]) continue;
      std::size_t pos = 0;
      std::size_t neg = 0;
      for (const auto& r : rows) {
        if (r.coeffs[j].sign() > 0) ++pos;
        if (r.coeffs[j].sign() < 0) ++neg;
      }
      if (pos + neg == 0) continue;
      const std::size_t cost = pos * neg;
      if (!var || cost < best_cost) {
        var = j;
        best_cost = cost;
      }
    }
    if (!var) return true;
    const std::size_t j = *var;
    eliminated[j] = true;
    ++eliminated_count;

    std::vector<detail::Row> next;
    std::vector<const detail::Row*> pos;
    std::vector<const detail::Row*> neg;
    for (const auto& r : rows) {
      const int s = r.coeffs[j].sign();
      if (s > 0) {
        pos.push_back(&r);
      } else if (s < 0) {
        neg.push_back(&r);
      } else {
        next.push_back(r);
      }
    }
    for (const auto* p : pos) {
      for (const auto* q : neg) {
        detail::Row c;
        c.history = p->history;
        c.history.insert(q->history.begin(), q->history.end());
        const Rat a = p->coeffs[j];
        const Rat b = -q->coeffs[j];
        c.coeffs = b * p->coeffs + a * q->coeffs;
        c.coeffs[j] = Rat{};
        c.bound = b * p->bound + a * q->bound;
        // Chernikov's bound, widened by every live variable missing from the
        // row (covers implicitly eliminated variables).
        std::size_t absent = 0;
        for (std::size_t v = 0; v < variables; ++v)
          if (!eliminated[v] && c.coeffs[v].is_zero()) ++absent;
        if (c.history.size() > eliminated_count + absent + 1) continue;
        next.push_back(std::move(c));
      }
    }
    // Deduplicate after normalization, keeping the tightest bound.
    std::map<std::vector<std::string>, std::size_t> seen;
    std::vector<detail::Row> unique;
    for (auto& r : next) {
      detail::normalize(r);
      std::vector<std::string> key;
      key.reserve(r.coeffs.size());
      for (const auto& c : r.coeffs) key.push_back(c.str());
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(std::move(key), unique.size());
        unique.push_back(std::move(r));
      } else if (r.bound > unique[it->second].bound) {
        unique[it->second] = std::move(r);
      }
    }
    rows = std::move(unique);
  }
}

// Decides a simplex-style system by translating it into constraints.
inline bool feasible(const FeasibilitySystem& sys) {
  sys.check_shape();
  const std::size_t n = sys.variables();
  std::vector<Constraint> cs;
  for (std::size_t i = 0; i < sys.equalities.rows(); ++i) cs.push_back({sys.equalities.row(i), sys.rhs_at(i), true});
  for (std::size_t j = 0; j < n; ++j) {
    if (!sys.lower_bounds[j]) continue;
    Vec e(n);
    e[j] = 1;
    cs.push_back({std::move(e), *sys.lower_bounds[j], false});
  }
  return feasible(n, cs);
}

}  // namespace sphfan::fm
