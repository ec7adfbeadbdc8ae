#pragma once

// Finitely generated rational polyhedral cones.
//
// A Cone is stored by its generators.  The inequality description (facet
// normals), the orthogonal complement of its span and its lineality space are
// derived once, on first use, by the double description method and shared by
// all copies of the cone.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "sphfan/error.hpp"
#include "sphfan/feasibility.hpp"
#include "sphfan/rational.hpp"

namespace sphfan {

// Extreme rays plus lineality basis of {x : <a, x> >= 0 for all rows a}.
struct RayDescription {
  std::vector<Vec> rays;
  std::vector<Vec> lineality;
};

namespace detail {

inline std::vector<bool> zero_set(const Vec& ray, const std::vector<Vec>& processed) {
  std::vector<bool> z(processed.size());
  for (std::size_t i = 0; i < processed.size(); ++i) z[i] = dot(processed[i], ray).is_zero();
  return z;
}

inline bool subset_of(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

inline void push_unique_ray(std::vector<Vec>& rays, Vec r) {
  r = primitive(r);
  if (std::find(rays.begin(), rays.end(), r) == rays.end()) rays.push_back(std::move(r));
}

}  // namespace detail

// Motzkin's double description method.  Constraints are inserted one at a
// time; lineality directions are consumed first, then rays are split into
// positive/zero/negative parts and adjacent pairs combined (combinatorial
// adjacency test).
inline RayDescription double_description(const std::vector<Vec>& constraints, std::size_t ambient) {
  RayDescription out;
  for (std::size_t i = 0; i < ambient; ++i) {
    Vec e(ambient);
    e[i] = 1;
    out.lineality.push_back(std::move(e));
  }
  std::vector<Vec> processed;

  for (const auto& a : constraints) {
    if (a.size() != ambient) throw DimensionMismatch(ambient, a.size());
    if (is_zero(a)) continue;

    auto lin_it = std::find_if(out.lineality.begin(), out.lineality.end(),
                               [&](const Vec& l) { return !dot(a, l).is_zero(); });
    if (lin_it != out.lineality.end()) {
      Vec l = *lin_it;
      out.lineality.erase(lin_it);
      Rat al = dot(a, l);
      if (al.sign() < 0) {
        l = -l;
        al = -al;
      }
      for (auto& other : out.lineality) other = primitive(other - (dot(a, other) / al) * l);
      for (auto& r : out.rays) r = primitive(r - (dot(a, r) / al) * l);
      out.rays.push_back(primitive(l));
      processed.push_back(a);
      continue;
    }

    processed.push_back(a);
    std::vector<Vec> pos;
    std::vector<Vec> zero;
    std::vector<Vec> neg;
    std::vector<Rat> pos_val;
    std::vector<Rat> neg_val;
    for (auto& r : out.rays) {
      const Rat s = dot(a, r);
      if (s.sign() > 0) {
        pos.push_back(r);
        pos_val.push_back(s);
      } else if (s.sign() < 0) {
        neg.push_back(r);
        neg_val.push_back(s);
      } else {
        zero.push_back(r);
      }
    }
    if (neg.empty()) continue;

    // Zero sets are taken w.r.t. the constraints before `a`.
    const std::vector<Vec> before(processed.begin(), processed.end() - 1);
    std::vector<std::vector<bool>> zs;
    zs.reserve(out.rays.size());
    for (const auto& r : out.rays) zs.push_back(detail::zero_set(r, before));
    auto index_of = [&](const Vec& r) {
      return static_cast<std::size_t>(std::find(out.rays.begin(), out.rays.end(), r) - out.rays.begin());
    };

    std::vector<Vec> next = pos;
    for (auto& z : zero) next.push_back(z);
    for (std::size_t p = 0; p < pos.size(); ++p) {
      const std::size_t ip = index_of(pos[p]);
      for (std::size_t q = 0; q < neg.size(); ++q) {
        const std::size_t iq = index_of(neg[q]);
        std::vector<bool> common(before.size());
        for (std::size_t k = 0; k < before.size(); ++k) common[k] = zs[ip][k] && zs[iq][k];
        bool adjacent = true;
        for (std::size_t t = 0; t < out.rays.size() && adjacent; ++t) {
          if (t == ip || t == iq) continue;
          if (detail::subset_of(common, zs[t])) adjacent = false;
        }
        if (!adjacent) continue;
        Vec combo = pos_val[p] * neg[q] - neg_val[q] * pos[p];
        detail::push_unique_ray(next, std::move(combo));
      }
    }
    out.rays = std::move(next);
  }
  for (auto& r : out.rays) r = primitive(r);
  return out;
}

class Cone {
 public:
  // Derived inequality data.  A point x lies in the cone iff <u, x> = 0 for
  // every u in `orthogonal` and <w, x> >= 0 for every w in `facets`.
  struct DualDescription {
    std::vector<Vec> facets;
    std::vector<Vec> orthogonal;
    std::vector<Vec> lineality;
    std::size_t dimension = 0;
  };

  explicit Cone(std::size_t ambient_rank = 0) : ambient_(ambient_rank), cache_(std::make_shared<Cache>()) {}

  // Zero vectors are dropped and repeated rays keep their first representative.
  static Cone from_generators(std::size_t ambient_rank, const std::vector<Vec>& gens) {
    Cone c(ambient_rank);
    std::vector<Vec> seen_rays;
    for (const auto& g : gens) {
      if (g.size() != ambient_rank) throw DimensionMismatch(ambient_rank, g.size());
      if (is_zero(g)) continue;
      Vec key = primitive(g);
      if (std::find(seen_rays.begin(), seen_rays.end(), key) != seen_rays.end()) continue;
      seen_rays.push_back(std::move(key));
      c.generators_.push_back(g);
    }
    return c;
  }

  static Cone zero(std::size_t ambient_rank) { return Cone(ambient_rank); }

  static Cone full_space(std::size_t ambient_rank) {
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < ambient_rank; ++i) {
      Vec e(ambient_rank);
      e[i] = 1;
      gens.push_back(e);
      gens.push_back(-e);
    }
    return from_generators(ambient_rank, gens);
  }

  // Cone of all x with <a, x> >= 0 for the inequality rows and <e, x> = 0 for
  // the equality rows.
  static Cone from_inequalities(std::size_t ambient_rank, const std::vector<Vec>& inequalities,
                                const std::vector<Vec>& equalities = {}) {
    std::vector<Vec> rows = inequalities;
    for (const auto& e : equalities) {
      rows.push_back(e);
      rows.push_back(-e);
    }
    const RayDescription rd = double_description(rows, ambient_rank);
    std::vector<Vec> gens = rd.rays;
    for (const auto& l : rd.lineality) {
      gens.push_back(l);
      gens.push_back(-l);
    }
    return from_generators(ambient_rank, gens);
  }

  std::size_t ambient_rank() const { return ambient_; }
  const std::vector<Vec>& generators() const { return generators_; }
  bool is_zero_cone() const { return generators_.empty(); }

  const DualDescription& dual() const {
    std::call_once(cache_->once, [this] { cache_->dual = compute_dual(); });
    return cache_->dual;
  }

  const std::vector<Vec>& facets() const { return dual().facets; }
  const std::vector<Vec>& lineality_basis() const { return dual().lineality; }
  std::size_t dimension() const { return dual().dimension; }

  // Image under a linear map (rows = target rank).
  Cone image(const Mat& m) const {
    if (m.cols() != ambient_) throw DimensionMismatch(ambient_, m.cols());
    std::vector<Vec> gens;
    gens.reserve(generators_.size());
    for (const auto& g : generators_) gens.push_back(m.apply(g));
    return from_generators(m.rows(), gens);
  }

 private:
  struct Cache {
    std::once_flag once;
    DualDescription dual;
  };

  DualDescription compute_dual() const {
    DualDescription d;
    const RayDescription polar = double_description(generators_, ambient_);
    d.facets = polar.rays;
    d.orthogonal = polar.lineality;
    std::vector<Vec> rows = d.facets;
    rows.insert(rows.end(), d.orthogonal.begin(), d.orthogonal.end());
    d.lineality = solve_homogeneous(Mat::from_rows(rows, ambient_));
    d.dimension = ambient_ - d.orthogonal.size();
    return d;
  }

  std::size_t ambient_;
  std::vector<Vec> generators_;
  std::shared_ptr<Cache> cache_;
};

inline void require_same_rank(const Cone& a, const Cone& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw DimensionMismatch(a.ambient_rank(), b.ambient_rank());
}

inline Cone cone_from_generators(std::size_t ambient_rank, const std::vector<Vec>& gens) {
  return Cone::from_generators(ambient_rank, gens);
}

inline bool contains(const Cone& c, const Vec& x) {
  if (x.size() != c.ambient_rank()) throw DimensionMismatch(c.ambient_rank(), x.size());
  const auto& d = c.dual();
  for (const auto& u : d.orthogonal)
    if (!dot(u, x).is_zero()) return false;
  for (const auto& w : d.facets)
    if (dot(w, x).sign() < 0) return false;
  return true;
}

// a is contained in b.
inline bool is_subcone(const Cone& a, const Cone& b) {
  require_same_rank(a, b);
  return std::all_of(a.generators().begin(), a.generators().end(), [&](const Vec& g) { return contains(b, g); });
}

inline bool cones_equal(const Cone& a, const Cone& b) {
  if (a.ambient_rank() != b.ambient_rank()) return false;
  return is_subcone(a, b) && is_subcone(b, a);
}

inline bool is_strictly_convex(const Cone& c) { return c.lineality_basis().empty(); }

inline Cone intersect(const Cone& a, const Cone& b) {
  require_same_rank(a, b);
  std::vector<Vec> ineq = a.facets();
  ineq.insert(ineq.end(), b.facets().begin(), b.facets().end());
  std::vector<Vec> eq = a.dual().orthogonal;
  eq.insert(eq.end(), b.dual().orthogonal.begin(), b.dual().orthogonal.end());
  return Cone::from_inequalities(a.ambient_rank(), ineq, eq);
}

// All faces, each given by the generators lying on it.  Ordered by dimension,
// ties broken by discovery order starting from the cone itself.
inline std::vector<Cone> faces(const Cone& c) {
  const auto& gens = c.generators();
  const auto& facets = c.facets();
  std::vector<std::vector<bool>> tight;
  tight.reserve(facets.size());
  for (const auto& w : facets) {
    std::vector<bool> t(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) t[i] = dot(w, gens[i]).is_zero();
    tight.push_back(std::move(t));
  }

  std::vector<std::vector<bool>> found{std::vector<bool>(gens.size(), true)};
  for (std::size_t k = 0; k < found.size(); ++k) {
    for (const auto& t : tight) {
      std::vector<bool> f(gens.size());
      for (std::size_t i = 0; i < gens.size(); ++i) f[i] = found[k][i] && t[i];
      if (std::find(found.begin(), found.end(), f) == found.end()) found.push_back(std::move(f));
    }
  }

  std::vector<Cone> out;
  out.reserve(found.size());
  for (const auto& f : found) {
    std::vector<Vec> sub;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (f[i]) sub.push_back(gens[i]);
    out.push_back(Cone::from_generators(c.ambient_rank(), sub));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Cone& a, const Cone& b) { return a.dimension() < b.dimension(); });
  return out;
}

// x is a strictly positive combination of the generators.  Decided as the
// system sum(l_i g_i) = t x with l_i >= 1, t >= 1 (conic rescaling of l > 0).
inline bool relint_contains(const Cone& c, const Vec& x) {
  if (x.size() != c.ambient_rank()) throw DimensionMismatch(c.ambient_rank(), x.size());
  const auto& gens = c.generators();
  const std::size_t n = c.ambient_rank();
  FeasibilitySystem sys;
  sys.equalities = Mat(n, gens.size() + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < gens.size(); ++j) sys.equalities(i, j) = gens[j][i];
    sys.equalities(i, gens.size()) = -x[i];
  }
  sys.lower_bounds.assign(gens.size() + 1, Rat(1));
  return is_feasible(sys);
}

namespace detail {

// Builds sum_k (sign_k * sum_j coeff_kj g_kj) = 0 over several generator
// blocks, with per-block lower bounds.  Returns the witness sum of block 0.
struct Block {
  const std::vector<Vec>* gens;
  Rat lower;
};

inline std::optional<Vec> common_point(std::size_t n, const std::vector<Block>& blocks) {
  std::size_t vars = 0;
  for (const auto& b : blocks) vars += b.gens->size();
  FeasibilitySystem sys;
  sys.equalities = Mat(n * (blocks.size() - 1), vars);
  sys.lower_bounds.reserve(vars);
  sys.objective.assign(vars, Rat(1));
  std::size_t offset = 0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto& gens = *blocks[k].gens;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      sys.lower_bounds.emplace_back(blocks[k].lower);
      // Block 0 equals every other block: rows (k-1)*n .. k*n-1.
      for (std::size_t eq = 1; eq < blocks.size(); ++eq) {
        for (std::size_t i = 0; i < n; ++i) {
          if (k == 0) {
            sys.equalities((eq - 1) * n + i, offset + j) = gens[j][i];
          } else if (k == eq) {
            sys.equalities((eq - 1) * n + i, offset + j) = -gens[j][i];
          }
        }
      }
    }
    offset += gens.size();
  }
  const auto sol = find_feasible_point(sys);
  if (!sol) return std::nullopt;
  Vec x(n);
  const auto& g0 = *blocks[0].gens;
  for (std::size_t j = 0; j < g0.size(); ++j) x = x + (*sol)[j] * g0[j];
  return x;
}

}  // namespace detail

// A point of relint(c) that lies in v, if any.
inline std::optional<Vec> relint_meets_cone(const Cone& c, const Cone& v) {
  require_same_rank(c, v);
  return detail::common_point(c.ambient_rank(), {{&c.generators(), Rat(1)}, {&v.generators(), Rat(0)}});
}

// A point of relint(c1) and relint(c2) that lies in v, if any.
inline std::optional<Vec> relints_meet_in(const Cone& c1, const Cone& c2, const Cone& v) {
  require_same_rank(c1, c2);
  require_same_rank(c1, v);
  return detail::common_point(c1.ambient_rank(),
                              {{&c1.generators(), Rat(1)}, {&c2.generators(), Rat(1)}, {&v.generators(), Rat(0)}});
}

}  // namespace sphfan
