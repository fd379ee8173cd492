#include "occtomo/views.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace occtomo {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

ViewSet parallel_views(const Grid& grid, int n_views, double start_deg, double step_deg,
                       int detector_pixels) {
    if (n_views < 1) throw std::invalid_argument("parallel_views: n_views must be >= 1");
    if (detector_pixels < 1)
        throw std::invalid_argument("parallel_views: detector_pixels must be >= 1");

    const Vec2 c = grid.center();
    const double detector_width = 2.0 * grid.inscribed_radius();
    const double spacing = detector_width / detector_pixels;
    // Half-length such that every ray starts and ends strictly outside the grid.
    const double reach = grid.half_diagonal() + grid.pixel_size;

    ViewSet vs;
    vs.kind = ViewKind::parallel;
    vs.detector_pixels = detector_pixels;
    vs.views.reserve(static_cast<std::size_t>(n_views));
    for (int v = 0; v < n_views; ++v) {
        View view;
        view.angle_deg = start_deg + v * step_deg;
        const double th = view.angle_deg * kDegToRad;
        const Vec2 u = {std::cos(th), std::sin(th)};   // propagation direction
        const Vec2 w = {-std::sin(th), std::cos(th)};  // detector axis
        view.rays.reserve(static_cast<std::size_t>(detector_pixels));
        for (int i = 0; i < detector_pixels; ++i) {
            const double off = (i + 0.5) * spacing - 0.5 * detector_width;
            const Vec2 mid = c + off * w;
            view.rays.push_back(Ray{mid - reach * u, mid + reach * u});
        }
        vs.views.push_back(std::move(view));
    }
    return vs;
}

ViewSet pinhole_views(const Grid& grid, const std::vector<PinholePose>& poses,
                      int detector_pixels) {
    if (detector_pixels < 1)
        throw std::invalid_argument("pinhole_views: detector_pixels must be >= 1");

    const double detector_width = 2.0 * grid.inscribed_radius();
    const double spacing = detector_width / detector_pixels;
    // Long enough to exit the grid from any in-grid sample point.
    const double reach = 2.0 * grid.half_diagonal() + grid.pixel_size;

    ViewSet vs;
    vs.kind = ViewKind::pinhole;
    vs.detector_pixels = detector_pixels;
    vs.views.reserve(poses.size());
    for (const PinholePose& pose : poses) {
        if (grid.contains(pose.position))
            throw std::invalid_argument("pinhole_views: pinhole must be strictly outside the grid");
        const Vec2 to_pinhole = pose.position - pose.target;
        const double dist = norm(to_pinhole);
        if (dist == 0.0)
            throw std::invalid_argument("pinhole_views: pinhole coincides with its target");
        const Vec2 u = (1.0 / dist) * to_pinhole;      // grid -> pinhole
        const Vec2 w = {-u.y, u.x};                    // transverse axis

        View view;
        view.angle_deg = std::atan2(u.y, u.x) / kDegToRad;
        view.rays.reserve(static_cast<std::size_t>(detector_pixels));
        for (int i = 0; i < detector_pixels; ++i) {
            const double off = (i + 0.5) * spacing - 0.5 * detector_width;
            const Vec2 sample = pose.target + off * w;  // transverse sample at the target
            Vec2 dir = pose.position - sample;
            const double dn = norm(dir);
            if (dn == 0.0)
                throw std::invalid_argument("pinhole_views: pinhole on the detector axis");
            dir = (1.0 / dn) * dir;
            // From beyond the far side of the grid, through the sample, to the pinhole.
            view.rays.push_back(Ray{sample - reach * dir, pose.position});
        }
        vs.views.push_back(std::move(view));
    }
    return vs;
}

}  // namespace occtomo
