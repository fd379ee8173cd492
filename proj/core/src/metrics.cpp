#include "occtomo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace occtomo {

std::vector<int> threshold_mask(const std::vector<double>& v, double frac) {
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, x);
    std::vector<int> mask(v.size(), 0);
    if (vmax <= 0.0) return mask;
    for (std::size_t i = 0; i < v.size(); ++i) mask[i] = v[i] > frac * vmax ? 1 : 0;
    return mask;
}

double mask_iou(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("mask_iou: size mismatch");
    std::size_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        inter += (a[i] && b[i]) ? 1 : 0;
        uni += (a[i] || b[i]) ? 1 : 0;
    }
    return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<int> dilate_mask(const std::vector<int>& mask, const Grid& grid, int steps) {
    std::vector<int> cur = mask;
    for (int s = 0; s < steps; ++s) {
        std::vector<int> next = cur;
        for (int iy = 0; iy < grid.ny; ++iy) {
            for (int ix = 0; ix < grid.nx; ++ix) {
                if (cur[static_cast<std::size_t>(grid.flat_index(ix, iy))]) continue;
                bool solid_neighbor = false;
                for (int dy = -1; dy <= 1 && !solid_neighbor; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int jx = ix + dx, jy = iy + dy;
                        if (jx < 0 || jx >= grid.nx || jy < 0 || jy >= grid.ny) continue;
                        if (cur[static_cast<std::size_t>(grid.flat_index(jx, jy))]) {
                            solid_neighbor = true;
                            break;
                        }
                    }
                }
                if (solid_neighbor) next[static_cast<std::size_t>(grid.flat_index(ix, iy))] = 1;
            }
        }
        cur = std::move(next);
    }
    return cur;
}

std::vector<int> local_maxima(const std::vector<double>& v, const Grid& grid, double min_value) {
    std::vector<int> peaks;
    for (int iy = 0; iy < grid.ny; ++iy) {
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double c = v[static_cast<std::size_t>(grid.flat_index(ix, iy))];
            if (c < min_value) continue;
            bool is_max = true;
            for (int dy = -1; dy <= 1 && is_max; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const int jx = ix + dx, jy = iy + dy;
                    if (jx < 0 || jx >= grid.nx || jy < 0 || jy >= grid.ny) continue;
                    if (v[static_cast<std::size_t>(grid.flat_index(jx, jy))] > c) {
                        is_max = false;
                        break;
                    }
                }
            }
            if (is_max) peaks.push_back(grid.flat_index(ix, iy));
        }
    }
    return peaks;
}

int nearest_peak_distance(int pixel, const std::vector<int>& peaks, const Grid& grid) {
    int best = std::numeric_limits<int>::max();
    const int px = grid.index_x(pixel), py = grid.index_y(pixel);
    for (int p : peaks) {
        const int d = std::max(std::abs(grid.index_x(p) - px), std::abs(grid.index_y(p) - py));
        best = std::min(best, d);
    }
    return best;
}

double median_abs_error(const std::vector<double>& estimate, const std::vector<double>& reference,
                        const std::vector<int>& mask) {
    if (estimate.size() != reference.size() || estimate.size() != mask.size())
        throw std::invalid_argument("median_abs_error: size mismatch");
    std::vector<double> errs;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) errs.push_back(std::abs(estimate[i] - reference[i]));
    if (errs.empty()) throw std::invalid_argument("median_abs_error: empty selection");
    const std::size_t mid = errs.size() / 2;
    std::nth_element(errs.begin(), errs.begin() + static_cast<std::ptrdiff_t>(mid), errs.end());
    double med = errs[mid];
    if (errs.size() % 2 == 0) {
        const double lower = *std::max_element(errs.begin(), errs.begin() + static_cast<std::ptrdiff_t>(mid));
        med = 0.5 * (med + lower);
    }
    return med;
}

}  // namespace occtomo
