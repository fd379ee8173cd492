#pragma once

#include <string>
#include <vector>

#include "occtomo/solver.hpp"

namespace occtomo {

/// One total brightness per view.
struct Lightcurve {
    std::vector<double> values;
    std::vector<double> angles_deg;  // same length; view angles

    int n_views() const { return static_cast<int>(values.size()); }
};

/// values = D forward(model, x).
Lightcurve lightcurve_forward(const NonlinearModel& model, const SparseOperator& D,
                              const ObjectState& x);

/// Compact-object starting point for lightcurve inversion: an opaque bright
/// disk at the grid center with radius mean(lightcurve)/2 (a disk of radius
/// r projects total width 2r from every angle). Per-view totals are blind to
/// the object's position, so a centered start also fixes that gauge.
ObjectState lightcurve_initial_state(const Grid& grid, const Lightcurve& lc);

/// Solves the downsampled problem; the shape estimate is read off the
/// support of s (or 1 - a). Starts from lightcurve_initial_state unless the
/// config provides its own initial state.
SolveResult lightcurve_reconstruct(const NonlinearModel& model, const SparseOperator& D,
                                   const Lightcurve& lc, double mu,
                                   const SolverConfig& config = {});

/// Binary mask of the convex hull of the pixels where a <= threshold.
std::vector<int> convex_hull_mask(const ObjectState& state, const Grid& grid, double threshold);

/// CSV exchange: one "angle_deg,value" line per view.
void write_lightcurve_csv(const std::string& path, const Lightcurve& lc);
Lightcurve read_lightcurve_csv(const std::string& path);

}  // namespace occtomo
