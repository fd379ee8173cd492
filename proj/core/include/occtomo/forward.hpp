#pragma once

#include <optional>
#include <vector>

#include "occtomo/operators.hpp"

namespace occtomo {

/// Lower bound keeping log x finite; opaque matter is stored at this value.
inline constexpr double kEpsilon = 1e-9;

/// Per-pixel attenuation factors and brightnesses, exposed jointly as the
/// stacked vector x = (a; s).
struct ObjectState {
    std::vector<double> a;
    std::vector<double> s;

    std::size_t pixels() const { return a.size(); }
    std::vector<double> packed() const;
    static ObjectState unpack(const std::vector<double>& x);
};

ObjectState uniform_state(int pixels, double a_value, double s_value);

/// View-indexed detector measurements, flattened view-major.
struct SlantStack {
    int n_views = 0;
    int detector_pixels = 0;
    std::vector<double> data;  // n_views * detector_pixels
    std::optional<double> noise_sigma;

    double& at(int view, int det) {
        return data[static_cast<std::size_t>(view) * detector_pixels + det];
    }
    double at(int view, int det) const {
        return data[static_cast<std::size_t>(view) * detector_pixels + det];
    }
};

/// Throws std::domain_error when any entry of x is below floor (no clamping).
void require_feasible(const std::vector<double>& x, double floor = kEpsilon);

/// b = C exp(E log x).
std::vector<double> forward(const NonlinearModel& model, const ObjectState& x,
                            double floor = kEpsilon);

/// Intermediates of one forward evaluation, reusable for Jacobian products
/// at the same state.
struct ForwardEvaluation {
    std::vector<double> term_weights;  // exp(E log x), one entry per term row
    std::vector<double> measurements;  // C * term_weights
};

ForwardEvaluation forward_evaluate(const NonlinearModel& model, const ObjectState& x,
                                   double floor = kEpsilon);

/// J^T w reusing a forward evaluation at the same x (saves the exp(E log x)
/// sweep).
std::vector<double> jacobian_transpose_from(const NonlinearModel& model, const ObjectState& x,
                                            const ForwardEvaluation& eval,
                                            const std::vector<double>& w);

/// b = P s (attenuation neglected).
std::vector<double> forward_linear(const SparseOperator& P, const std::vector<double>& s);

/// J v and J^T w with J = C diag(exp(E log x)) E diag(x^-1), matrix-free.
std::vector<double> jacobian_apply(const NonlinearModel& model, const ObjectState& x,
                                   const std::vector<double>& v, double floor = kEpsilon);
std::vector<double> jacobian_transpose_apply(const NonlinearModel& model, const ObjectState& x,
                                             const std::vector<double>& w, double floor = kEpsilon);

/// Explicit Jacobian (rows = detector rows, cols = 2K); guarded to small
/// problems, intended for tests.
std::vector<std::vector<double>> jacobian_dense(const NonlinearModel& model, const ObjectState& x,
                                                double floor = kEpsilon);

}  // namespace occtomo
