#pragma once

#include <cstdint>
#include <vector>

#include "occtomo/forward.hpp"
#include "occtomo/views.hpp"

namespace occtomo {

/// Renders occluded measurement data by walking each detector ray from the
/// detector inward: every reached pixel contributes its brightness times its
/// projection weight, attenuated along the path from the pixel to the
/// detector; the first pixel at or below opaque_threshold terminates the
/// walk. Independent of the factored model.
SlantStack render_occluded(const Grid& grid, const ViewSet& views, const std::vector<double>& a,
                           const std::vector<double>& s, double opaque_threshold = 0.5,
                           Weighting weighting = Weighting::length);

/// Additive Gaussian noise with sigma = level * max|data|. The generator is
/// a fixed Box-Muller transform over std::mt19937_64, so identical seeds give
/// bit-identical output on any platform.
SlantStack add_noise(const SlantStack& stack, double level, std::uint64_t seed);

/// Per-pixel count of detector rays that reach the pixel: rays for which it
/// is the first opaque pixel, plus (for transparent pixels) rays reaching it
/// unobstructed. Interior pixels of opaque regions score 0.
std::vector<int> visibility_map(const Grid& grid, const ViewSet& views,
                                const std::vector<double>& a, double opaque_threshold = 0.5);

}  // namespace occtomo
