#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "occtomo/forward.hpp"
#include "occtomo/operators.hpp"

namespace occtomo {

/// Regularized bound-constrained data-fit problem
///   min ||b - F(x)||^2 + mu ||x - x_air||^2,  x >= epsilon,
/// where F is the occluded forward model, optionally composed with the
/// per-view downsampler.
struct Problem {
    const NonlinearModel* model = nullptr;
    std::vector<double> data;   // detector rows, or one entry per view with a downsampler
    double mu = 0.0;
    std::vector<double> x_air;  // empty-space prior, (1,...,1, 0,...,0) unless overridden
    double epsilon = kEpsilon;
    const SparseOperator* downsampler = nullptr;

    int n_unknowns() const { return 2 * model->n_pixels(); }
};

Problem make_problem(const NonlinearModel& model, std::vector<double> data, double mu,
                     const SparseOperator* downsampler = nullptr, double epsilon = kEpsilon);

struct SolverConfig {
    double tol = 1e-6;
    int max_iter = 500;
    bool log_reparam = false;
    int memory = 10;
    double armijo = 1e-4;
    double backtrack = 0.5;
    int max_backtracks = 60;
    std::uint64_t seed = 0;
    std::optional<ObjectState> initial_state;  // default: transparent mid-brightness start
};

enum class SolveStatus { converged, max_iter, line_search_failure };

std::string to_string(SolveStatus s);

struct SolveResult {
    ObjectState x;
    std::vector<double> objective_trace;  // one entry per accepted iterate, non-increasing
    double grad_norm = 0.0;               // final projected-gradient norm
    int iterations = 0;
    SolveStatus status = SolveStatus::max_iter;
};

/// phi(x); throws std::domain_error for infeasible x.
double objective(const Problem& problem, const ObjectState& x);

/// Gradient of phi (length 2K); the descent direction is its negative.
std::vector<double> gradient(const Problem& problem, const ObjectState& x);

/// Transparent starting point: a = 1, s = 0.5 max(b) / max row sum of the
/// effective linear projection.
ObjectState default_initial_state(const Problem& problem);

/// Projected limited-memory quasi-Newton descent with backtracking line
/// search; iterates stay feasible via projection onto [epsilon, inf)^2K.
SolveResult reconstruct(const Problem& problem, const SolverConfig& config = {});

}  // namespace occtomo
