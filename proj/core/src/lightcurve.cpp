#include "occtomo/lightcurve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "occtomo/io.hpp"

namespace occtomo {

Lightcurve lightcurve_forward(const NonlinearModel& model, const SparseOperator& D,
                              const ObjectState& x) {
    if (D.cols() != model.n_detector_rows())
        throw std::invalid_argument("lightcurve_forward: downsampler does not match the model");
    Lightcurve lc;
    lc.values = D.apply(forward(model, x));
    lc.angles_deg.reserve(model.views.views.size());
    for (const View& v : model.views.views) lc.angles_deg.push_back(v.angle_deg);
    if (static_cast<int>(lc.angles_deg.size()) != D.rows())
        throw std::invalid_argument("lightcurve_forward: downsampler rows != view count");
    return lc;
}

ObjectState lightcurve_initial_state(const Grid& grid, const Lightcurve& lc) {
    double mean = 0.0;
    for (double v : lc.values) mean += v;
    if (!lc.values.empty()) mean /= static_cast<double>(lc.values.size());
    const double radius = std::max(0.5 * mean, grid.pixel_size);
    ObjectState st = uniform_state(grid.pixel_count(), 1.0, kEpsilon);
    const Vec2 c = grid.center();
    for (int j = 0; j < grid.pixel_count(); ++j) {
        const Vec2 p = grid.pixel_center(j) - c;
        if (p.x * p.x + p.y * p.y <= radius * radius) {
            st.a[static_cast<std::size_t>(j)] = kEpsilon;
            st.s[static_cast<std::size_t>(j)] = 1.0;
        }
    }
    return st;
}

SolveResult lightcurve_reconstruct(const NonlinearModel& model, const SparseOperator& D,
                                   const Lightcurve& lc, double mu, const SolverConfig& config) {
    Problem p = make_problem(model, lc.values, mu, &D);
    SolverConfig cfg = config;
    if (!cfg.initial_state) cfg.initial_state = lightcurve_initial_state(model.grid, lc);
    return reconstruct(p, cfg);
}

namespace {

double cross(Vec2 o, Vec2 a, Vec2 b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain; returns the hull counter-clockwise.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

bool point_in_hull(const std::vector<Vec2>& hull, Vec2 p, double tol) {
    if (hull.empty()) return false;
    if (hull.size() == 1) return norm(p - hull[0]) <= tol;
    if (hull.size() == 2) {
        // Distance to the segment.
        const Vec2 d = hull[1] - hull[0];
        const double len2 = dot(d, d);
        double t = len2 > 0.0 ? dot(p - hull[0], d) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        return norm(p - (hull[0] + t * d)) <= tol;
    }
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Vec2 a = hull[i];
        const Vec2 b = hull[(i + 1) % hull.size()];
        if (cross(a, b, p) < -tol * norm(b - a)) return false;
    }
    return true;
}

}  // namespace

std::vector<int> convex_hull_mask(const ObjectState& state, const Grid& grid, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("convex_hull_mask: threshold must be in (0, 1)");
    if (static_cast<int>(state.pixels()) != grid.pixel_count())
        throw std::invalid_argument("convex_hull_mask: state does not match the grid");
    std::vector<Vec2> pts;
    for (int j = 0; j < grid.pixel_count(); ++j)
        if (state.a[static_cast<std::size_t>(j)] <= threshold) pts.push_back(grid.pixel_center(j));
    std::vector<int> mask(static_cast<std::size_t>(grid.pixel_count()), 0);
    if (pts.empty()) return mask;
    const auto hull = convex_hull(std::move(pts));
    const double tol = 1e-9 * grid.pixel_size;
    for (int j = 0; j < grid.pixel_count(); ++j)
        mask[static_cast<std::size_t>(j)] = point_in_hull(hull, grid.pixel_center(j), tol) ? 1 : 0;
    return mask;
}

void write_lightcurve_csv(const std::string& path, const Lightcurve& lc) {
    if (lc.values.size() != lc.angles_deg.size())
        throw std::invalid_argument("write_lightcurve_csv: mismatched lengths");
    std::vector<std::pair<double, double>> rows;
    rows.reserve(lc.values.size());
    for (std::size_t i = 0; i < lc.values.size(); ++i)
        rows.emplace_back(lc.angles_deg[i], lc.values[i]);
    write_csv_pairs(path, rows);
}

Lightcurve read_lightcurve_csv(const std::string& path) {
    Lightcurve lc;
    for (const auto& [angle, value] : read_csv_pairs(path)) {
        lc.angles_deg.push_back(angle);
        lc.values.push_back(value);
    }
    return lc;
}

}  // namespace occtomo
