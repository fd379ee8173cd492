#pragma once

#include <vector>

#include "occtomo/forward.hpp"
#include "occtomo/geometry.hpp"

namespace occtomo {

/// Pixels where v exceeds frac * max(v), as a 0/1 mask.
std::vector<int> threshold_mask(const std::vector<double>& v, double frac);

/// Intersection-over-union of two 0/1 masks (1.0 when both are empty).
double mask_iou(const std::vector<int>& a, const std::vector<int>& b);

/// Grows a mask by one pixel in the 8-neighborhood, `steps` times.
std::vector<int> dilate_mask(const std::vector<int>& mask, const Grid& grid, int steps = 1);

/// Flat indices of strict-or-plateau local maxima of v (8-neighborhood)
/// above min_value.
std::vector<int> local_maxima(const std::vector<double>& v, const Grid& grid, double min_value);

/// Chebyshev distance in pixels from `pixel` to the nearest listed peak;
/// returns a large sentinel when peaks is empty.
int nearest_peak_distance(int pixel, const std::vector<int>& peaks, const Grid& grid);

/// Median of |estimate - reference| over the pixels selected by the mask.
double median_abs_error(const std::vector<double>& estimate, const std::vector<double>& reference,
                        const std::vector<int>& mask);

}  // namespace occtomo
