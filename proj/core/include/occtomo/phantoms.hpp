#pragma once

#include <cstdint>
#include <vector>

#include "occtomo/forward.hpp"
#include "occtomo/geometry.hpp"

namespace occtomo {

/// Disk in world coordinates; a pixel belongs to it when its center does.
struct Disk {
    Vec2 center;
    double radius = 0.0;

    bool covers(Vec2 p) const {
        const Vec2 d = p - center;
        return d.x * d.x + d.y * d.y <= radius * radius;
    }
};

/// The default five-disk occluder layout, scaled to the grid.
std::vector<Disk> five_circle_disks(const Grid& grid);

/// Five disjoint opaque disks that scatter light: inside each disk
/// (a, s) = (eps, 1); air is (1, eps).
ObjectState five_circles(const Grid& grid);

/// Opaque occluder disks plus n_sources unit point sources placed uniformly
/// at random from the seed. Sources may land inside occluders, reproducing
/// the hidden-source configuration.
ObjectState point_sources(const Grid& grid, int n_sources, const std::vector<Disk>& occluders,
                          std::uint64_t seed);

enum class ShapeKind { square, circle, cross };

/// One solid opaque scattering shape centered in the grid.
ObjectState shape(ShapeKind kind, const Grid& grid);

/// Pixels where the shape/disks are solid, as a 0/1 mask (from the a-map).
std::vector<int> solid_mask(const ObjectState& state, double threshold = 0.5);

}  // namespace occtomo
