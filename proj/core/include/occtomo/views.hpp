#pragma once

#include <vector>

#include "occtomo/geometry.hpp"

namespace occtomo {

enum class ViewKind { parallel, pinhole };

/// One collection view: a family of rays, one per detector pixel.
/// angle_deg is the propagation direction of the view's rays (degrees,
/// counter-clockwise from +x); for pinhole views it is the direction from the
/// grid center toward the pinhole.
struct View {
    double angle_deg = 0.0;
    std::vector<Ray> rays;
};

struct ViewSet {
    ViewKind kind = ViewKind::parallel;
    int detector_pixels = 0;
    std::vector<View> views;

    int n_views() const { return static_cast<int>(views.size()); }
    int n_rays() const { return n_views() * detector_pixels; }
    /// Flat detector-row index, view-major.
    int ray_index(int view, int det) const { return view * detector_pixels + det; }
    const Ray& ray(int flat) const {
        return views[flat / detector_pixels].rays[flat % detector_pixels];
    }
};

/// Parallel-beam collection. View v looks along angle start_deg + v*step_deg;
/// its rays are evenly spaced across the disk inscribed in the grid
/// (detector width = min(nx, ny) * pixel_size) and extend strictly outside
/// the grid on both ends.
ViewSet parallel_views(const Grid& grid, int n_views, double start_deg, double step_deg,
                       int detector_pixels);

/// Pinhole camera pose. Rays fan from detector pixels through the pinhole;
/// the fan samples the same transverse offsets through `target` as a parallel
/// view, so a distant pinhole reproduces the parallel geometry.
struct PinholePose {
    Vec2 position;
    Vec2 target;  // aim point, normally the grid center
};

ViewSet pinhole_views(const Grid& grid, const std::vector<PinholePose>& poses,
                      int detector_pixels);

}  // namespace occtomo
