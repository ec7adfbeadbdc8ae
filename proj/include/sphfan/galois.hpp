#pragma once

// Finite group actions on a spherical datum (a finite quotient of the Galois
// group through which the action factors), invariance of colored fans and
// invariant closure.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sphfan/cone.hpp"
#include "sphfan/error.hpp"
#include "sphfan/rational.hpp"
#include "sphfan/spherical.hpp"

namespace sphfan {

// Acts by `matrix` on Q and by `color_perm` on the colors.  Names are labels;
// equality compares matrix and permutation only.
struct GroupElement {
  std::string name;
  Mat matrix;
  std::map<std::string, std::string> color_perm;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.matrix == b.matrix && a.color_perm == b.color_perm;
  }
};

// (a * b) acts as "first b, then a".
inline GroupElement compose(const GroupElement& a, const GroupElement& b) {
  GroupElement out{a.name + "*" + b.name, a.matrix * b.matrix, {}};
  for (const auto& [from, mid] : b.color_perm) {
    auto it = a.color_perm.find(mid);
    if (it == a.color_perm.end()) throw UnknownColor(mid);
    out.color_perm.emplace(from, it->second);
  }
  return out;
}

class GaloisAction {
 public:
  GaloisAction(SphericalDatum datum, std::vector<GroupElement> elements)
      : datum_(std::move(datum)), elements_(std::move(elements)) {
    if (elements_.empty()) throw DomainError("a group action needs at least one element");
    for (const auto& g : elements_) {
      if (g.matrix.rows() != datum_.rank() || g.matrix.cols() != datum_.rank()) {
        throw DimensionMismatch(datum_.rank(), g.matrix.rows() != datum_.rank() ? g.matrix.rows() : g.matrix.cols());
      }
      for (const auto& [from, to] : g.color_perm) {
        if (!datum_.has_color(from)) throw UnknownColor(from);
        if (!datum_.has_color(to)) throw UnknownColor(to);
      }
    }
  }

  static GaloisAction trivial(const SphericalDatum& d) {
    GroupElement id{"id", Mat::identity(d.rank()), {}};
    for (const auto& c : d.colors()) id.color_perm.emplace(c.name, c.name);
    return GaloisAction(d, {id});
  }

  const SphericalDatum& datum() const { return datum_; }
  const std::vector<GroupElement>& elements() const { return elements_; }

  const GroupElement& element(const std::string& name) const {
    for (const auto& g : elements_)
      if (g.name == name) return g;
    throw UnknownElement(name);
  }

  std::optional<std::size_t> find(const GroupElement& g) const {
    for (std::size_t i = 0; i < elements_.size(); ++i)
      if (elements_[i] == g) return i;
    return std::nullopt;
  }

 private:
  SphericalDatum datum_;
  std::vector<GroupElement> elements_;
};

struct ActionViolation {
  std::string check;    // which invariant
  std::string element;  // offending element name(s)
  std::string detail;
  std::optional<Vec> vector;
};

struct ActionReport {
  bool has_identity = false;
  bool permutations = true;
  bool closed = true;
  bool inverses = true;
  bool unimodular = true;
  bool valuation_stable = true;
  bool rho_equivariant = true;
  std::vector<ActionViolation> violations;

  bool valid() const {
    return has_identity && permutations && closed && inverses && unimodular && valuation_stable && rho_equivariant;
  }
};

inline ActionReport validate_action(const GaloisAction& a) {
  const auto& d = a.datum();
  ActionReport r;
  const auto& els = a.elements();

  for (const auto& g : els) {
    bool bijective = g.color_perm.size() == d.colors().size();
    std::map<std::string, int> hits;
    for (const auto& [from, to] : g.color_perm) ++hits[to];
    for (const auto& c : d.colors())
      if (g.color_perm.count(c.name) == 0 || hits[c.name] != 1) bijective = false;
    if (!bijective) {
      r.permutations = false;
      r.violations.push_back({"permutation", g.name, "color map is not a bijection of the colors", std::nullopt});
    }
  }
  if (!r.permutations) {
    // Composition below needs total maps.
    r.closed = r.inverses = false;
  }

  GroupElement id = GaloisAction::trivial(d).elements().front();
  r.has_identity = a.find(id).has_value();
  if (!r.has_identity) r.violations.push_back({"identity", "", "identity element missing", std::nullopt});

  if (r.permutations) {
    for (const auto& g : els) {
      bool has_inverse = false;
      for (const auto& h : els) {
        if (!a.find(compose(g, h))) {
          if (r.closed) r.violations.push_back({"closure", g.name + "*" + h.name, "product not in the group", std::nullopt});
          r.closed = false;
        }
        if (compose(g, h) == id) has_inverse = true;
      }
      if (!has_inverse) {
        r.inverses = false;
        r.violations.push_back({"inverse", g.name, "no inverse in the group", std::nullopt});
      }
    }
  }

  const Cone& v = d.valuation_cone();
  for (const auto& g : els) {
    if (!is_integral_unimodular(g.matrix)) {
      r.unimodular = false;
      r.violations.push_back({"unimodular", g.name, "matrix is not an integral unimodular matrix", std::nullopt});
    }
    const Cone image = v.image(g.matrix);
    for (const auto& x : image.generators())
      if (!contains(v, x)) {
        r.valuation_stable = false;
        r.violations.push_back({"valuation", g.name, "image of the valuation cone leaves it", x});
        break;
      }
    for (const auto& x : v.generators())
      if (!contains(image, x)) {
        r.valuation_stable = false;
        r.violations.push_back({"valuation", g.name, "valuation cone not covered by its image", x});
        break;
      }
    for (const auto& c : d.colors()) {
      auto it = g.color_perm.find(c.name);
      if (it == g.color_perm.end()) continue;
      const Vec lhs = d.rho(it->second);
      const Vec rhs = g.matrix.apply(c.rho);
      if (lhs != rhs) {
        r.rho_equivariant = false;
        r.violations.push_back({"equivariance", g.name, "rho(g.color) != M rho(color) for " + c.name, rhs});
      }
    }
  }
  return r;
}

inline ColoredCone apply_element(const GroupElement& g, const ColoredCone& cc) {
  ColoredCone out{cc.cone.image(g.matrix), {}};
  for (const auto& f : cc.palette) {
    auto it = g.color_perm.find(f);
    if (it == g.color_perm.end()) throw UnknownColor(f);
    out.palette.insert(it->second);
  }
  return out;
}

inline ColoredCone apply_element(const GaloisAction& a, const std::string& element, const ColoredCone& cc) {
  return apply_element(a.element(element), cc);
}

struct InvarianceFailure {
  std::string element;
  std::size_t member;
  ColoredCone image;
};

struct InvarianceReport {
  std::vector<InvarianceFailure> failures;
  bool invariant() const { return failures.empty(); }
};

inline InvarianceReport is_invariant_fan(const GaloisAction& a, const ColoredFan& fan) {
  InvarianceReport r;
  for (const auto& g : a.elements()) {
    for (std::size_t i = 0; i < fan.size(); ++i) {
      ColoredCone img = apply_element(g, fan.cones()[i]);
      if (!fan.contains_member(img)) r.failures.push_back({g.name, i, std::move(img)});
    }
  }
  return r;
}

inline std::vector<ColoredCone> orbit(const GaloisAction& a, const ColoredCone& cc) {
  std::vector<ColoredCone> out;
  for (const auto& g : a.elements()) detail::push_if_new(out, apply_element(g, cc));
  return out;
}

// Smallest fan containing the seeds that is closed under the group and under
// colored faces.  Throws Cf2Violation when the closure is not a fan.
inline ColoredFan invariant_closure(const GaloisAction& a, const std::vector<ColoredCone>& seeds) {
  if (seeds.empty()) throw DomainError("a colored fan must be nonempty");
  const auto& d = a.datum();
  std::vector<ColoredCone> cones;
  for (const auto& s : seeds) detail::push_if_new(cones, s);
  for (std::size_t k = 0; k < cones.size(); ++k) {
    const ColoredCone current = cones[k];
    for (auto& img : orbit(a, current)) detail::push_if_new(cones, std::move(img));
    for (auto& face : colored_faces(d, current)) detail::push_if_new(cones, std::move(face));
  }
  return detail::checked_fan(d, std::move(cones));
}

}  // namespace sphfan
