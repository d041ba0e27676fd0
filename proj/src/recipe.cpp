#include "cvgauss/recipe.hpp"

namespace cvg {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

GaussianState build_state(const Recipe& recipe) {
  GaussianState state = thermal_state(recipe.occupations);
  const std::size_t n = recipe.modes();
  for (const auto& step : recipe.steps) {
    state = std::visit(
        Overloaded{
            [&](const Squeeze& op) { return apply(squeeze_single(n, op.mode, op.s), state); },
            [&](const Rotate& op) { return apply(rotate(n, op.mode, op.phi), state); },
            [&](const TwoModeSqueeze& op) { return apply(two_mode_squeeze(n, op.mode_a, op.mode_b, op.s), state); },
            [&](const BeamSplit& op) { return apply(beam_split(n, op.mode_a, op.mode_b, op.theta), state); },
            [&](const Displacement& op) { return apply(op, state); },
        },
        step);
  }
  return state;
}

}  // namespace cvg
