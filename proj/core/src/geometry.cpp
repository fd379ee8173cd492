#include "occtomo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace occtomo {

Grid make_grid(int nx, int ny, double pixel_size) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("make_grid: pixel counts must be >= 1");
    if (!(pixel_size > 0.0)) throw std::invalid_argument("make_grid: pixel_size must be > 0");
    Grid g;
    g.nx = nx;
    g.ny = ny;
    g.pixel_size = pixel_size;
    g.origin = {-0.5 * nx * pixel_size, -0.5 * ny * pixel_size};
    return g;
}

namespace {

// Clips the segment parameter range [t0, t1] against one slab [lo, hi].
// Returns false when the segment misses the slab entirely.
bool clip_axis(double p, double d, double lo, double hi, double& t0, double& t1) {
    if (d == 0.0) return p >= lo && p <= hi;
    double ta = (lo - p) / d;
    double tb = (hi - p) / d;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    return t0 <= t1;
}

// Appends the parameters where the segment crosses integer gridlines of one
// axis, restricted to the open interval (t0, t1). a/d are in pixel units.
void axis_crossings(double a, double d, int n_cells, double t0, double t1,
                    std::vector<double>& out) {
    if (d == 0.0) return;
    // Gridlines k = 0..n_cells; solve a + t*d = k.
    double u0 = a + t0 * d;
    double u1 = a + t1 * d;
    if (d > 0.0) {
        int k_first = static_cast<int>(std::ceil(u0));
        int k_last = static_cast<int>(std::floor(u1));
        k_first = std::max(k_first, 0);
        k_last = std::min(k_last, n_cells);
        for (int k = k_first; k <= k_last; ++k) {
            double t = (k - a) / d;
            if (t > t0 && t < t1) out.push_back(t);
        }
    } else {
        int k_first = static_cast<int>(std::floor(u0));
        int k_last = static_cast<int>(std::ceil(u1));
        k_first = std::min(k_first, n_cells);
        k_last = std::max(k_last, 0);
        for (int k = k_first; k >= k_last; --k) {
            double t = (k - a) / d;
            if (t > t0 && t < t1) out.push_back(t);
        }
    }
}

}  // namespace

std::vector<Crossing> trace_ray(const Grid& grid, const Ray& ray) {
    if (ray.point_a.x == ray.point_b.x && ray.point_a.y == ray.point_b.y)
        throw std::invalid_argument("trace_ray: degenerate ray (point_a == point_b)");

    // Work in pixel units relative to the grid origin.
    const double h = grid.pixel_size;
    const double ax = (ray.point_a.x - grid.origin.x) / h;
    const double ay = (ray.point_a.y - grid.origin.y) / h;
    const double dx = (ray.point_b.x - ray.point_a.x) / h;
    const double dy = (ray.point_b.y - ray.point_a.y) / h;

    double t0 = 0.0, t1 = 1.0;
    if (!clip_axis(ax, dx, 0.0, grid.nx, t0, t1)) return {};
    if (!clip_axis(ay, dy, 0.0, grid.ny, t0, t1)) return {};
    if (!(t1 > t0)) return {};

    std::vector<double> ts;
    ts.reserve(static_cast<std::size_t>(std::abs(dx) + std::abs(dy)) + 4);
    ts.push_back(t0);
    axis_crossings(ax, dx, grid.nx, t0, t1, ts);
    axis_crossings(ay, dy, grid.ny, t0, t1, ts);
    ts.push_back(t1);
    std::sort(ts.begin(), ts.end());

    const double seg_len = std::hypot(dx, dy);  // already in pixel units
    std::vector<Crossing> out;
    out.reserve(ts.size());
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        const double ta = ts[i], tb = ts[i + 1];
        if (!(tb > ta)) continue;  // corner hit or duplicate gridline: no cell between
        const double tm = 0.5 * (ta + tb);
        int ix = static_cast<int>(std::floor(ax + tm * dx));
        int iy = static_cast<int>(std::floor(ay + tm * dy));
        ix = std::clamp(ix, 0, grid.nx - 1);
        iy = std::clamp(iy, 0, grid.ny - 1);
        const double len = (tb - ta) * seg_len;
        if (len > 0.0) out.push_back({grid.flat_index(ix, iy), len});
    }
    return out;
}

std::vector<Crossing> trace_between(const Grid& grid, int pixel_j, Vec2 detector_point,
                                    bool exclude_source) {
    if (pixel_j < 0 || pixel_j >= grid.pixel_count())
        throw std::invalid_argument("trace_between: pixel index out of range");
    const Vec2 c = grid.pixel_center(pixel_j);
    if (c.x == detector_point.x && c.y == detector_point.y) return {};
    auto crossings = trace_ray(grid, Ray{c, detector_point});
    if (exclude_source) {
        std::erase_if(crossings, [&](const Crossing& cr) { return cr.pixel == pixel_j; });
    }
    return crossings;
}

}  // namespace occtomo
