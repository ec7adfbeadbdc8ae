#pragma once

// Spherical data (Q, V, D, rho), colored cones and colored fans together with
// their validity axioms:
//
//   CC1  C is generated by rho(F) and finitely many elements of V.
//   CC2  the relative interior of C meets V.
//   CF1  every colored face of a member is a member.
//   CF2  no point of V lies in the relative interiors of two members.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sphfan/cone.hpp"
#include "sphfan/error.hpp"
#include "sphfan/rational.hpp"

namespace sphfan {

struct Color {
  std::string name;
  Vec rho;
};

class SphericalDatum {
 public:
  SphericalDatum(std::size_t rank, Cone valuation_cone, std::vector<Color> colors)
      : rank_(rank), valuation_cone_(std::move(valuation_cone)), colors_(std::move(colors)) {
    if (valuation_cone_.ambient_rank() != rank_) throw DimensionMismatch(rank_, valuation_cone_.ambient_rank());
    for (std::size_t i = 0; i < colors_.size(); ++i) {
      if (colors_[i].rho.size() != rank_) throw DimensionMismatch(rank_, colors_[i].rho.size());
      if (!index_.emplace(colors_[i].name, i).second) {
        throw DomainError("duplicate color \"" + colors_[i].name + "\"");
      }
    }
  }

  std::size_t rank() const { return rank_; }
  const Cone& valuation_cone() const { return valuation_cone_; }
  const std::vector<Color>& colors() const { return colors_; }

  bool has_color(const std::string& name) const { return index_.count(name) != 0; }

  const Vec& rho(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UnknownColor(name);
    return colors_[it->second].rho;
  }

  std::size_t color_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UnknownColor(name);
    return it->second;
  }

 private:
  std::size_t rank_;
  Cone valuation_cone_;
  std::vector<Color> colors_;
  std::map<std::string, std::size_t> index_;
};

using Palette = std::set<std::string>;

struct ColoredCone {
  Cone cone;
  Palette palette;

  friend bool operator==(const ColoredCone& a, const ColoredCone& b) {
    return a.palette == b.palette && cones_equal(a.cone, b.cone);
  }
};

inline void check_colored_cone(const SphericalDatum& d, const ColoredCone& cc) {
  if (cc.cone.ambient_rank() != d.rank()) throw DimensionMismatch(d.rank(), cc.cone.ambient_rank());
  for (const auto& f : cc.palette)
    if (!d.has_color(f)) throw UnknownColor(f);
}

struct ColoredConeReport {
  bool cc1 = false;
  bool cc2 = false;
  // CC1 failure: a color image outside C, or a generator of C that is not in
  // cone(rho(F) + C cap V).
  std::optional<Vec> cc1_counterexample;
  std::string cc1_reason;
  // CC2 success: a point of relint(C) inside V.
  std::optional<Vec> cc2_witness;

  bool valid() const { return cc1 && cc2; }
};

// CC1 is decided as: rho(F) is inside C and C = cone(rho(F) + generators of
// C cap V).  Any finite S in V generating C together with rho(F) lies in
// C cap V, so this is equivalent to the existential form.
inline ColoredConeReport validate_colored_cone(const SphericalDatum& d, const ColoredCone& cc) {
  check_colored_cone(d, cc);
  ColoredConeReport r;
  r.cc1 = true;
  std::vector<Vec> span;
  for (const auto& f : cc.palette) {
    const Vec& img = d.rho(f);
    if (!contains(cc.cone, img)) {
      r.cc1 = false;
      r.cc1_counterexample = img;
      r.cc1_reason = "rho(" + f + ") is not in the cone";
      break;
    }
    span.push_back(img);
  }
  if (r.cc1) {
    const Cone meet = intersect(cc.cone, d.valuation_cone());
    span.insert(span.end(), meet.generators().begin(), meet.generators().end());
    const Cone generated = Cone::from_generators(d.rank(), span);
    for (const auto& g : cc.cone.generators()) {
      if (!contains(generated, g)) {
        r.cc1 = false;
        r.cc1_counterexample = g;
        r.cc1_reason = "generator not reached by colors and valuation-cone elements";
        break;
      }
    }
  }
  r.cc2_witness = relint_meets_cone(cc.cone, d.valuation_cone());
  r.cc2 = r.cc2_witness.has_value();
  return r;
}

inline bool is_strictly_convex_colored(const SphericalDatum& d, const ColoredCone& cc) {
  check_colored_cone(d, cc);
  if (!is_strictly_convex(cc.cone)) return false;
  return std::none_of(cc.palette.begin(), cc.palette.end(), [&](const std::string& f) { return is_zero(d.rho(f)); });
}

// Faces C0 of C whose relative interior meets V, colored by F cap rho^-1(C0).
// Ordered by dimension; the colored cone itself comes last.
inline std::vector<ColoredCone> colored_faces(const SphericalDatum& d, const ColoredCone& cc) {
  check_colored_cone(d, cc);
  std::vector<ColoredCone> out;
  for (auto& face : faces(cc.cone)) {
    if (!relint_meets_cone(face, d.valuation_cone())) continue;
    Palette p;
    for (const auto& f : cc.palette)
      if (contains(face, d.rho(f))) p.insert(f);
    out.push_back({std::move(face), std::move(p)});
  }
  return out;
}

class ColoredFan {
 public:
  // Duplicates (equal cone and palette) keep their first occurrence.
  explicit ColoredFan(const std::vector<ColoredCone>& cones) {
    if (cones.empty()) throw DomainError("a colored fan must be nonempty");
    for (const auto& cc : cones)
      if (!contains_member(cc)) cones_.push_back(cc);
  }

  const std::vector<ColoredCone>& cones() const { return cones_; }
  std::size_t size() const { return cones_.size(); }

  bool contains_member(const ColoredCone& cc) const { return find(cc).has_value(); }

  std::optional<std::size_t> find(const ColoredCone& cc) const {
    for (std::size_t i = 0; i < cones_.size(); ++i)
      if (cones_[i] == cc) return i;
    return std::nullopt;
  }

 private:
  std::vector<ColoredCone> cones_;
};

inline bool same_members(const ColoredFan& a, const ColoredFan& b) {
  if (a.size() != b.size()) return false;
  return std::all_of(a.cones().begin(), a.cones().end(), [&](const ColoredCone& cc) { return b.contains_member(cc); });
}

struct Cf1Failure {
  std::size_t member;
  ColoredCone missing_face;
};

struct Cf2Failure {
  std::size_t first;
  std::size_t second;
  Vec witness;
};

struct FanReport {
  std::vector<ColoredConeReport> cones;
  bool cf1 = true;
  bool cf2 = true;
  std::vector<Cf1Failure> cf1_failures;
  std::vector<Cf2Failure> cf2_failures;

  bool cones_valid() const {
    return std::all_of(cones.begin(), cones.end(), [](const ColoredConeReport& r) { return r.valid(); });
  }
  bool valid() const { return cones_valid() && cf1 && cf2; }
};

inline std::vector<Cf2Failure> cf2_failures(const SphericalDatum& d, const std::vector<ColoredCone>& cones) {
  std::vector<Cf2Failure> out;
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = i + 1; j < cones.size(); ++j)
      if (auto w = relints_meet_in(cones[i].cone, cones[j].cone, d.valuation_cone())) out.push_back({i, j, *w});
  return out;
}

inline FanReport validate_colored_fan(const SphericalDatum& d, const ColoredFan& fan) {
  FanReport r;
  for (const auto& cc : fan.cones()) r.cones.push_back(validate_colored_cone(d, cc));
  for (std::size_t i = 0; i < fan.size(); ++i) {
    for (auto& face : colored_faces(d, fan.cones()[i])) {
      if (!fan.contains_member(face)) {
        r.cf1 = false;
        r.cf1_failures.push_back({i, std::move(face)});
      }
    }
  }
  r.cf2_failures = cf2_failures(d, fan.cones());
  r.cf2 = r.cf2_failures.empty();
  return r;
}

inline bool is_strictly_convex_fan(const SphericalDatum& d, const ColoredFan& fan) {
  return std::all_of(fan.cones().begin(), fan.cones().end(),
                     [&](const ColoredCone& cc) { return is_strictly_convex_colored(d, cc); });
}

// Members that are not a proper colored face of another member.
inline std::vector<ColoredCone> maximal_cones(const SphericalDatum& d, const ColoredFan& fan) {
  const auto& cones = fan.cones();
  std::vector<bool> dominated(cones.size(), false);
  for (std::size_t j = 0; j < cones.size(); ++j) {
    for (const auto& face : colored_faces(d, cones[j])) {
      if (face == cones[j]) continue;
      for (std::size_t i = 0; i < cones.size(); ++i)
        if (!dominated[i] && cones[i] == face) dominated[i] = true;
    }
  }
  std::vector<ColoredCone> out;
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (!dominated[i]) out.push_back(cones[i]);
  return out;
}

// One maximal colored cone: the embedding has a single closed orbit.
inline bool is_simple(const SphericalDatum& d, const ColoredFan& fan) { return maximal_cones(d, fan).size() == 1; }

// Members correspond one-to-one with orbits of the classified embedding.
inline std::size_t orbit_count(const ColoredFan& fan) { return fan.size(); }

class Cf2Violation : public Error {
 public:
  Cf2Violation(ColoredCone first, ColoredCone second, Vec witness)
      : Error("CF2 violated: two relative interiors meet the valuation cone"),
        first_(std::move(first)),
        second_(std::move(second)),
        witness_(std::move(witness)) {}

  const ColoredCone& first() const { return first_; }
  const ColoredCone& second() const { return second_; }
  const Vec& witness() const { return witness_; }

 private:
  ColoredCone first_;
  ColoredCone second_;
  Vec witness_;
};

namespace detail {

inline bool push_if_new(std::vector<ColoredCone>& cones, ColoredCone cc) {
  if (std::find(cones.begin(), cones.end(), cc) != cones.end()) return false;
  cones.push_back(std::move(cc));
  return true;
}

inline ColoredFan checked_fan(const SphericalDatum& d, std::vector<ColoredCone> cones) {
  const auto failures = cf2_failures(d, cones);
  if (!failures.empty()) {
    const auto& f = failures.front();
    throw Cf2Violation(cones[f.first], cones[f.second], f.witness);
  }
  return ColoredFan(cones);
}

}  // namespace detail

// Adds every colored face of the inputs, then checks CF2.  Throws
// Cf2Violation carrying a witness when two relative interiors meet in V.
inline ColoredFan faces_closure(const SphericalDatum& d, const std::vector<ColoredCone>& cones) {
  if (cones.empty()) throw DomainError("a colored fan must be nonempty");
  // Inputs keep their positions; missing faces are appended.  colored_faces
  // is already closed under taking faces.
  std::vector<ColoredCone> out;
  for (const auto& cc : cones) detail::push_if_new(out, cc);
  for (const auto& cc : cones)
    for (auto& face : colored_faces(d, cc)) detail::push_if_new(out, std::move(face));
  return detail::checked_fan(d, std::move(out));
}

}  // namespace sphfan
