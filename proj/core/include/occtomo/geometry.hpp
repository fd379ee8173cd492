#pragma once

#include <cmath>
#include <vector>

namespace occtomo {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double t, Vec2 v) { return {t * v.x, t * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// Axis-aligned pixel lattice. Pixel (ix, iy) covers the square
/// [origin + ix*h, origin + (ix+1)*h) x [origin + iy*h, origin + (iy+1)*h)
/// with h = pixel_size. Flat indices are row-major with y selecting the row.
struct Grid {
    int nx = 0;
    int ny = 0;
    double pixel_size = 1.0;
    Vec2 origin;  // world coordinates of the corner of pixel (0, 0)

    int pixel_count() const { return nx * ny; }
    int flat_index(int ix, int iy) const { return iy * nx + ix; }
    int index_x(int flat) const { return flat % nx; }
    int index_y(int flat) const { return flat / nx; }

    Vec2 pixel_center(int flat) const {
        return {origin.x + (index_x(flat) + 0.5) * pixel_size,
                origin.y + (index_y(flat) + 0.5) * pixel_size};
    }

    double width() const { return nx * pixel_size; }
    double height() const { return ny * pixel_size; }
    Vec2 center() const { return {origin.x + 0.5 * width(), origin.y + 0.5 * height()}; }

    /// Radius of the circle through the grid corners.
    double half_diagonal() const { return 0.5 * std::hypot(width(), height()); }
    /// Radius of the largest disk contained in the grid.
    double inscribed_radius() const { return 0.5 * std::min(width(), height()); }

    bool contains(Vec2 p) const {
        return p.x >= origin.x && p.x <= origin.x + width() &&
               p.y >= origin.y && p.y <= origin.y + height();
    }
};

/// Grid centered at the world origin.
Grid make_grid(int nx, int ny, double pixel_size);

/// Oriented segment; point_a on the source side, point_b on the detector side.
struct Ray {
    Vec2 point_a;
    Vec2 point_b;
};

/// One pixel crossed by a ray. `length` is the chord inside the pixel in
/// units of pixel_size, so a full straight crossing is 1 and a corner-to-corner
/// diagonal is sqrt(2).
struct Crossing {
    int pixel = 0;
    double length = 0.0;
};

/// Pixels crossed by the ray, ordered from point_a to point_b. Zero-length
/// boundary grazes are dropped; a ray missing the grid yields an empty list.
std::vector<Crossing> trace_ray(const Grid& grid, const Ray& ray);

/// Crossings along the segment from the center of pixel_j to detector_point.
/// With exclude_source set (the default), pixel_j's own chord is omitted.
std::vector<Crossing> trace_between(const Grid& grid, int pixel_j, Vec2 detector_point,
                                    bool exclude_source = true);

}  // namespace occtomo
