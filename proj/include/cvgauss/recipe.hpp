#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "cvgauss/gaussian_state.hpp"
#include "cvgauss/symplectic.hpp"

namespace cvg {

// A state preparation: thermal inputs followed by a sequence of linear-optics
// operations. The same recipe drives the covariance route (build_state) and
// the truncated Fock-space oracle, so the two can be compared step for step.

struct Squeeze {
  std::size_t mode = 0;
  double s = 0.0;
};

struct Rotate {
  std::size_t mode = 0;
  double phi = 0.0;
};

struct TwoModeSqueeze {
  std::size_t mode_a = 0;
  std::size_t mode_b = 1;
  double s = 0.0;
};

struct BeamSplit {
  std::size_t mode_a = 0;
  std::size_t mode_b = 1;
  double theta = 0.0;
};

using RecipeStep = std::variant<Squeeze, Rotate, TwoModeSqueeze, BeamSplit, Displacement>;

struct Recipe {
  /// Thermal occupation per input mode (1 = vacuum); its length is the mode count.
  std::vector<double> occupations;
  std::vector<RecipeStep> steps;

  std::size_t modes() const { return occupations.size(); }
};

GaussianState build_state(const Recipe& recipe);

}  // namespace cvg
