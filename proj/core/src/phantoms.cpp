#include "occtomo/phantoms.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace occtomo {

namespace {

// Fractions of the minimum grid side; the layout mirrors the five-blob
// arrangement of the reference experiments without claiming pixel exactness.
struct FracDisk {
    double cx, cy, r;
};
constexpr FracDisk kFiveCircleLayout[5] = {
    {0.28, 0.30, 0.14},
    {0.70, 0.26, 0.12},
    {0.74, 0.70, 0.13},
    {0.30, 0.72, 0.12},
    {0.51, 0.49, 0.09},
};

void paint_disks(const Grid& grid, const std::vector<Disk>& disks, ObjectState& st) {
    for (int j = 0; j < grid.pixel_count(); ++j) {
        const Vec2 c = grid.pixel_center(j);
        for (const Disk& d : disks) {
            if (d.covers(c)) {
                st.a[static_cast<std::size_t>(j)] = kEpsilon;
                break;
            }
        }
    }
}

}  // namespace

std::vector<Disk> five_circle_disks(const Grid& grid) {
    const double side = std::min(grid.width(), grid.height());
    std::vector<Disk> disks;
    disks.reserve(5);
    for (const FracDisk& f : kFiveCircleLayout) {
        disks.push_back({{grid.origin.x + f.cx * grid.width(), grid.origin.y + f.cy * grid.height()},
                         f.r * side});
    }
    return disks;
}

ObjectState five_circles(const Grid& grid) {
    const auto disks = five_circle_disks(grid);
    for (const Disk& d : disks) {
        if (d.center.x - d.radius < grid.origin.x || d.center.x + d.radius > grid.origin.x + grid.width() ||
            d.center.y - d.radius < grid.origin.y || d.center.y + d.radius > grid.origin.y + grid.height())
            throw std::invalid_argument("five_circles: disks do not fit the grid");
    }
    for (std::size_t i = 0; i < disks.size(); ++i) {
        for (std::size_t j = i + 1; j < disks.size(); ++j) {
            if (norm(disks[i].center - disks[j].center) <= disks[i].radius + disks[j].radius)
                throw std::invalid_argument("five_circles: disks overlap");
        }
    }
    ObjectState st = uniform_state(grid.pixel_count(), 1.0, kEpsilon);
    paint_disks(grid, disks, st);
    for (std::size_t j = 0; j < st.a.size(); ++j)
        if (st.a[j] <= 0.5) st.s[j] = 1.0;
    return st;
}

ObjectState point_sources(const Grid& grid, int n_sources, const std::vector<Disk>& occluders,
                          std::uint64_t seed) {
    if (n_sources < 0) throw std::invalid_argument("point_sources: n_sources must be >= 0");
    ObjectState st = uniform_state(grid.pixel_count(), 1.0, kEpsilon);
    paint_disks(grid, occluders, st);

    std::mt19937_64 rng(seed);
    std::vector<char> taken(static_cast<std::size_t>(grid.pixel_count()), 0);
    int placed = 0;
    while (placed < n_sources) {
        const auto j = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(grid.pixel_count()));
        if (taken[j]) continue;
        taken[j] = 1;
        st.s[j] = 1.0;
        ++placed;
    }
    return st;
}

ObjectState shape(ShapeKind kind, const Grid& grid) {
    ObjectState st = uniform_state(grid.pixel_count(), 1.0, kEpsilon);
    const Vec2 c = grid.center();
    const double side = std::min(grid.width(), grid.height());
    for (int j = 0; j < grid.pixel_count(); ++j) {
        const Vec2 p = grid.pixel_center(j) - c;
        bool solid = false;
        switch (kind) {
            case ShapeKind::square:
                solid = std::abs(p.x) <= 0.2 * side && std::abs(p.y) <= 0.2 * side;
                break;
            case ShapeKind::circle:
                solid = p.x * p.x + p.y * p.y <= 0.25 * side * 0.25 * side;
                break;
            case ShapeKind::cross:
                solid = (std::abs(p.x) <= 0.3 * side && std::abs(p.y) <= 0.1 * side) ||
                        (std::abs(p.y) <= 0.3 * side && std::abs(p.x) <= 0.1 * side);
                break;
            default:
                throw std::invalid_argument("shape: unsupported kind");
        }
        if (solid) {
            st.a[static_cast<std::size_t>(j)] = kEpsilon;
            st.s[static_cast<std::size_t>(j)] = 1.0;
        }
    }
    return st;
}

std::vector<int> solid_mask(const ObjectState& state, double threshold) {
    std::vector<int> mask(state.a.size(), 0);
    for (std::size_t j = 0; j < state.a.size(); ++j) mask[j] = state.a[j] <= threshold ? 1 : 0;
    return mask;
}

}  // namespace occtomo
