// Seeded random model generation for fuzzing and corpus construction.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epi/model.hpp"
#include "epi/rng.hpp"

namespace epi {

enum class ModelFamily { general, partitional, reflexive };

inline const char* to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::general: return "general";
    case ModelFamily::partitional: return "partitional";
    case ModelFamily::reflexive: return "reflexive";
  }
  return "general";
}

/// Parameters for generate_model. density is the probability that a given
/// state belongs to a given image; p_empty is the probability that an image
/// is forced empty. The partitional family ignores p_empty (treated as 0),
/// and the reflexive family forces it to 0 before adding each state to its
/// own image.
struct GeneratorParams {
  unsigned n_states = 4;
  double density = 0.5;
  double p_empty = 0.0;
  ModelFamily family = ModelFamily::general;
  std::uint64_t seed = 1;
};

/// Deterministic given params: states are named s0..s{n-1} and draws are
/// consumed in a fixed order (states ascending; within a state, first the
/// empty-image draw where applicable, then one membership draw per state in
/// ascending order). The partitional family draws one block id per state,
/// uniform over ceil(n/2) blocks, and maps each state to its block.
inline Model generate_model(const GeneratorParams& params) {
  if (params.n_states < 1 || params.n_states > kMaxStates)
    throw std::invalid_argument("n_states must be between 1 and " +
                                std::to_string(kMaxStates));
  if (params.density < 0.0 || params.density > 1.0)
    throw std::invalid_argument("density must lie in [0, 1]");
  if (params.p_empty < 0.0 || params.p_empty > 1.0)
    throw std::invalid_argument("p_empty must lie in [0, 1]");

  const unsigned n = params.n_states;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (unsigned i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i));
  StateSpace space{std::move(labels)};

  SplitMix64 rng(params.seed);
  std::vector<Event> images;
  images.reserve(n);

  switch (params.family) {
    case ModelFamily::general: {
      for (unsigned i = 0; i < n; ++i) {
        if (rng.next_unit() < params.p_empty) {
          images.push_back(space.empty_event());
          continue;
        }
        Event image = space.empty_event();
        for (unsigned j = 0; j < n; ++j)
          if (rng.next_unit() < params.density) image = image.with(j);
        images.push_back(image);
      }
      break;
    }
    case ModelFamily::reflexive: {
      for (unsigned i = 0; i < n; ++i) {
        Event image = space.empty_event();
        for (unsigned j = 0; j < n; ++j)
          if (rng.next_unit() < params.density) image = image.with(j);
        images.push_back(image.with(i));
      }
      break;
    }
    case ModelFamily::partitional: {
      const std::uint64_t blocks = (n + 1) / 2;
      std::vector<std::uint64_t> block_of(n);
      for (unsigned i = 0; i < n; ++i) block_of[i] = rng.next_below(blocks);
      for (unsigned i = 0; i < n; ++i) {
        Event image = space.empty_event();
        for (unsigned j = 0; j < n; ++j)
          if (block_of[j] == block_of[i]) image = image.with(j);
        images.push_back(image);
      }
      break;
    }
  }

  return Model{std::move(space), std::move(images)};
}

}  // namespace epi
