#include "occtomo/occlusion.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace occtomo {

namespace {

void check_lengths(const Grid& grid, const std::vector<double>& v, const char* name) {
    if (static_cast<int>(v.size()) != grid.pixel_count())
        throw std::invalid_argument(std::string(name) + " length does not match the grid");
}

}  // namespace

SlantStack render_occluded(const Grid& grid, const ViewSet& views, const std::vector<double>& a,
                           const std::vector<double>& s, double opaque_threshold,
                           Weighting weighting) {
    check_lengths(grid, a, "a");
    check_lengths(grid, s, "s");
    if (!(opaque_threshold > 0.0 && opaque_threshold < 1.0))
        throw std::invalid_argument("render_occluded: opaque_threshold must be in (0, 1)");

    SlantStack stack;
    stack.n_views = views.n_views();
    stack.detector_pixels = views.detector_pixels;
    stack.data.assign(static_cast<std::size_t>(views.n_rays()), 0.0);

    for (int k = 0; k < views.n_rays(); ++k) {
        const auto crossings = trace_ray(grid, views.ray(k));
        double acc = 0.0;
        double transmittance = 1.0;  // product of a over pixels already passed
        // Walk from the detector side inward.
        for (auto it = crossings.rbegin(); it != crossings.rend(); ++it) {
            const auto j = static_cast<std::size_t>(it->pixel);
            const double weight = weighting == Weighting::length ? it->length : 1.0;
            acc += weight * s[j] * transmittance;
            if (a[j] <= opaque_threshold) break;  // first-seen opaque pixel ends the ray
            transmittance *= a[j];
        }
        stack.data[static_cast<std::size_t>(k)] = acc;
    }
    return stack;
}

SlantStack add_noise(const SlantStack& stack, double level, std::uint64_t seed) {
    if (level < 0.0) throw std::invalid_argument("add_noise: level must be >= 0");
    SlantStack out = stack;
    double vmax = 0.0;
    for (double v : stack.data) vmax = std::max(vmax, std::abs(v));
    const double sigma = level * vmax;
    out.noise_sigma = sigma;
    if (sigma == 0.0) return out;

    // Box-Muller over explicit 53-bit uniforms; the stream depends only on
    // the seed, not on the standard library's normal_distribution.
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() {
        return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
    };
    for (std::size_t i = 0; i < out.data.size(); i += 2) {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        out.data[i] += sigma * r * std::cos(2.0 * std::numbers::pi * u2);
        if (i + 1 < out.data.size()) out.data[i + 1] += sigma * r * std::sin(2.0 * std::numbers::pi * u2);
    }
    return out;
}

std::vector<int> visibility_map(const Grid& grid, const ViewSet& views,
                                const std::vector<double>& a, double opaque_threshold) {
    check_lengths(grid, a, "a");
    std::vector<int> counts(static_cast<std::size_t>(grid.pixel_count()), 0);
    for (int k = 0; k < views.n_rays(); ++k) {
        const auto crossings = trace_ray(grid, views.ray(k));
        for (auto it = crossings.rbegin(); it != crossings.rend(); ++it) {
            const auto j = static_cast<std::size_t>(it->pixel);
            ++counts[j];
            if (a[j] <= opaque_threshold) break;
        }
    }
    return counts;
}

}  // namespace occtomo
