#pragma once

// Morphisms between spherical data and colored cones/fans.
//
// A morphism is a surjective linear map Q1 -> Q2 sending V1 onto V2 together
// with a color map defined on a designated subset of source colors.

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
#include "sphfan/spherical.hpp"

namespace sphfan {

struct FanMorphism {
  SphericalDatum source;
  SphericalDatum target;
  Mat linear_map;  // target rank x source rank
  std::set<std::string> domain_colors;
  std::map<std::string, std::string> color_map;

  std::optional<std::string> mapped_color(const std::string& c) const {
    if (domain_colors.count(c) == 0) return std::nullopt;
    auto it = color_map.find(c);
    if (it == color_map.end()) return std::nullopt;
    return it->second;
  }
};

inline FanMorphism identity_morphism(const SphericalDatum& d) {
  FanMorphism m{d, d, Mat::identity(d.rank()), {}, {}};
  for (const auto& c : d.colors()) {
    m.domain_colors.insert(c.name);
    m.color_map.emplace(c.name, c.name);
  }
  return m;
}

// Structural consistency: shapes and color references.  Throws on violation.
inline void check_morphism_shape(const FanMorphism& m) {
  if (m.linear_map.rows() != m.target.rank()) throw DimensionMismatch(m.target.rank(), m.linear_map.rows());
  if (m.linear_map.cols() != m.source.rank()) throw DimensionMismatch(m.source.rank(), m.linear_map.cols());
  for (const auto& c : m.domain_colors)
    if (!m.source.has_color(c)) throw UnknownColor(c);
  for (const auto& [from, to] : m.color_map) {
    if (m.domain_colors.count(from) == 0) throw UnknownColor(from);
    if (!m.target.has_color(to)) throw UnknownColor(to);
  }
  for (const auto& c : m.domain_colors)
    if (m.color_map.count(c) == 0) throw DomainError("color \"" + c + "\" in domain_colors has no image");
}

struct RhoMismatch {
  std::string color;
  Vec mapped_rho;  // linear_map * rho_source(color)
  Vec target_rho;  // rho_target(color_map(color))
};

struct MorphismReport {
  bool surjective = false;
  std::size_t map_rank = 0;
  bool valuation_onto = false;
  // Failure witnesses: an image generator outside V2, or a generator of V2
  // not covered by the image.
  std::optional<Vec> image_outside_target;
  std::optional<Vec> target_not_covered;
  // Informational only; never affects validity.
  std::vector<RhoMismatch> rho_warnings;

  bool valid() const { return surjective && valuation_onto; }
};

inline MorphismReport validate_morphism(const FanMorphism& m) {
  check_morphism_shape(m);
  MorphismReport r;
  r.map_rank = rank(m.linear_map);
  r.surjective = r.map_rank == m.target.rank();
  const Cone image = m.source.valuation_cone().image(m.linear_map);
  const Cone& v2 = m.target.valuation_cone();
  for (const auto& g : image.generators())
    if (!contains(v2, g)) {
      r.image_outside_target = g;
      break;
    }
  for (const auto& g : v2.generators())
    if (!contains(image, g)) {
      r.target_not_covered = g;
      break;
    }
  r.valuation_onto = !r.image_outside_target && !r.target_not_covered;
  for (const auto& c : m.domain_colors) {
    const auto to = m.mapped_color(c);
    if (!to) continue;
    Vec mapped = m.linear_map.apply(m.source.rho(c));
    const Vec& expected = m.target.rho(*to);
    if (mapped != expected) r.rho_warnings.push_back({c, std::move(mapped), expected});
  }
  return r;
}

// phi(C1) inside C2 and phi(F1 cap D_phi) inside F2.
inline bool is_morphism_of_cones(const FanMorphism& m, const ColoredCone& cc1, const ColoredCone& cc2) {
  if (cc1.cone.ambient_rank() != m.source.rank()) throw DimensionMismatch(m.source.rank(), cc1.cone.ambient_rank());
  if (cc2.cone.ambient_rank() != m.target.rank()) throw DimensionMismatch(m.target.rank(), cc2.cone.ambient_rank());
  for (const auto& g : cc1.cone.generators())
    if (!contains(cc2.cone, m.linear_map.apply(g))) return false;
  for (const auto& f : cc1.palette) {
    const auto to = m.mapped_color(f);
    if (to && cc2.palette.count(*to) == 0) return false;
  }
  return true;
}

struct FanMorphismReport {
  // For each source member, the first target member (input order) it maps into.
  std::vector<std::optional<std::size_t>> matches;

  bool valid() const {
    return std::all_of(matches.begin(), matches.end(), [](const auto& x) { return x.has_value(); });
  }
};

inline FanMorphismReport is_morphism_of_fans(const FanMorphism& m, const ColoredFan& f1, const ColoredFan& f2) {
  FanMorphismReport r;
  for (const auto& cc1 : f1.cones()) {
    std::optional<std::size_t> hit;
    for (std::size_t j = 0; j < f2.size() && !hit; ++j)
      if (is_morphism_of_cones(m, cc1, f2.cones()[j])) hit = j;
    r.matches.push_back(hit);
  }
  return r;
}

// second after first: d1 -> d2 -> d3.  Colors compose where both maps are
// defined.
inline FanMorphism compose(const FanMorphism& second, const FanMorphism& first) {
  if (first.target.rank() != second.source.rank()) throw DimensionMismatch(second.source.rank(), first.target.rank());
  FanMorphism out{first.source, second.target, second.linear_map * first.linear_map, {}, {}};
  for (const auto& c : first.domain_colors) {
    const auto mid = first.mapped_color(c);
    if (!mid) continue;
    const auto end = second.mapped_color(*mid);
    if (!end) continue;
    out.domain_colors.insert(c);
    out.color_map.emplace(c, *end);
  }
  return out;
}

}  // namespace sphfan
