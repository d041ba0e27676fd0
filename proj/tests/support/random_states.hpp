#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "cvgauss/recipe.hpp"
#include "cvgauss/symplectic.hpp"

namespace cvg::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Random product of squeezers, rotations, beam splitters and two-mode squeezers.
inline SymplecticMap random_symplectic(std::size_t modes, std::mt19937_64& rng, double max_squeeze = 0.8) {
  SymplecticMap map = SymplecticMap::identity(modes);
  for (int k = 0; k < 6; ++k) {
    const auto m = static_cast<std::size_t>(rng() % modes);
    map = compose(squeeze_single(modes, m, uniform(rng, -max_squeeze, max_squeeze)), map);
    map = compose(rotate(modes, m, uniform(rng, 0.0, 2 * std::numbers::pi)), map);
    if (modes > 1) {
      const auto other = (m + 1 + static_cast<std::size_t>(rng() % (modes - 1))) % modes;
      map = compose(beam_split(modes, m, other, uniform(rng, 0.0, std::numbers::pi)), map);
      map = compose(two_mode_squeeze(modes, m, other, uniform(rng, -max_squeeze, max_squeeze)), map);
    }
  }
  return map;
}

/// Thermal inputs in [1, 4] through a random symplectic map, random means.
inline GaussianState random_physical_state(std::size_t modes, std::mt19937_64& rng) {
  std::vector<double> occ(modes);
  for (auto& n : occ) n = uniform(rng, 1.0, 4.0);
  GaussianState state = apply(random_symplectic(modes, rng), thermal_state(occ));
  for (std::size_t m = 0; m < modes; ++m) {
    state = apply(Displacement{m, uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)}, state);
  }
  return state;
}

struct StandardFormRanges {
  double max_occupation = 4.0;
  double max_squeeze = 0.7;
};

/// Standard-form states: thermal (nu1, nu2), local squeezers along q/p, then a
/// 50:50 beam splitter. The output always has L1 = L2 diagonal and C diagonal,
/// and every physical standard-form state is reachable this way.
inline Recipe random_standard_form_recipe(std::mt19937_64& rng, StandardFormRanges r = {}) {
  Recipe recipe;
  recipe.occupations = {uniform(rng, 1.0, r.max_occupation), uniform(rng, 1.0, r.max_occupation)};
  recipe.steps = {Squeeze{0, uniform(rng, -r.max_squeeze, r.max_squeeze)},
                  Squeeze{1, uniform(rng, -r.max_squeeze, r.max_squeeze)},
                  BeamSplit{0, 1, 0.25 * std::numbers::pi}};
  return recipe;
}

/// Single-mode state, pure (vacuum input) or thermal, squeezed, rotated, displaced.
inline Recipe random_single_mode_recipe(std::mt19937_64& rng, bool pure) {
  Recipe recipe;
  recipe.occupations = {pure ? 1.0 : uniform(rng, 1.0, 4.0)};
  recipe.steps = {Squeeze{0, uniform(rng, -1.0, 1.0)}, Rotate{0, uniform(rng, 0.0, 2 * std::numbers::pi)},
                  Displacement{0, uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)}};
  return recipe;
}

}  // namespace cvg::testing
