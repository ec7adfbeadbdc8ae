#pragma once

// Small hand-built data used across the suites.

#include <string>
#include <vector>

#include "sphfan/cone.hpp"
#include "sphfan/galois.hpp"
#include "sphfan/morphism.hpp"
#include "sphfan/spherical.hpp"

namespace sphfan::testing {

inline Cone ray(std::initializer_list<long> v) { return Cone::from_generators(v.size(), {make_vec(v)}); }

inline Cone cone_of(std::size_t n, std::initializer_list<std::initializer_list<long>> gens) {
  std::vector<Vec> vs;
  for (const auto& g : gens) vs.push_back(make_vec(g));
  return Cone::from_generators(n, vs);
}

// Rank 1, V = whole line, no colors: the toric projective line.
inline SphericalDatum p1_datum() { return SphericalDatum(1, Cone::full_space(1), {}); }

inline ColoredFan p1_fan() {
  return ColoredFan({{Cone::zero(1), {}}, {ray({1}), {}}, {ray({-1}), {}}});
}

// Rank 2, V = whole plane, one color alpha with rho = (1,0).
inline SphericalDatum alpha_datum() { return SphericalDatum(2, Cone::full_space(2), {{"alpha", make_vec({1, 0})}}); }

inline ColoredCone alpha_quadrant() { return {cone_of(2, {{1, 0}, {0, 1}}), {"alpha"}}; }

inline GaloisAction negation_action(const SphericalDatum& d) {
  return GaloisAction(d, {{"id", Mat::identity(1), {}}, {"sigma", Mat::from_rows({{-1}}), {}}});
}

// Rank 2 with colors alpha, beta exchanged by the coordinate swap.
inline SphericalDatum swap_datum(const Cone& v, const Vec& rho_alpha) {
  return SphericalDatum(2, v, {{"alpha", rho_alpha}, {"beta", Vec{rho_alpha[1], rho_alpha[0]}}});
}

inline GaloisAction swap_action(const SphericalDatum& d) {
  return GaloisAction(d, {{"id", Mat::identity(2), {{"alpha", "alpha"}, {"beta", "beta"}}},
                          {"swap", Mat::from_rows({{0, 1}, {1, 0}}), {{"alpha", "beta"}, {"beta", "alpha"}}}});
}

}  // namespace sphfan::testing
