#include "occtomo/forward.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace occtomo {

std::vector<double> ObjectState::packed() const {
    std::vector<double> x;
    x.reserve(a.size() + s.size());
    x.insert(x.end(), a.begin(), a.end());
    x.insert(x.end(), s.begin(), s.end());
    return x;
}

ObjectState ObjectState::unpack(const std::vector<double>& x) {
    if (x.size() % 2 != 0)
        throw std::invalid_argument("ObjectState::unpack: odd-length state vector");
    const std::size_t k = x.size() / 2;
    ObjectState st;
    st.a.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k));
    st.s.assign(x.begin() + static_cast<std::ptrdiff_t>(k), x.end());
    return st;
}

ObjectState uniform_state(int pixels, double a_value, double s_value) {
    ObjectState st;
    st.a.assign(static_cast<std::size_t>(pixels), a_value);
    st.s.assign(static_cast<std::size_t>(pixels), s_value);
    return st;
}

void require_feasible(const std::vector<double>& x, double floor) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= floor))
            throw std::domain_error("state entry " + std::to_string(i) + " = " +
                                    std::to_string(x[i]) + " violates the lower bound " +
                                    std::to_string(floor));
    }
}

namespace {

void check_state(const NonlinearModel& model, const ObjectState& x, double floor) {
    if (static_cast<int>(x.pixels()) != model.n_pixels())
        throw std::invalid_argument("state size does not match the model grid");
    require_feasible(x.a, floor);
    require_feasible(x.s, floor);
}

// log x for the stacked state (a; s).
std::vector<double> stacked_log(const ObjectState& x) {
    std::vector<double> lx;
    lx.reserve(2 * x.pixels());
    for (double v : x.a) lx.push_back(std::log(v));
    for (double v : x.s) lx.push_back(std::log(v));
    return lx;
}

// w = exp(E log x), one entry per term row.
std::vector<double> term_weights(const NonlinearModel& model, const std::vector<double>& log_x) {
    std::vector<double> w(static_cast<std::size_t>(model.n_terms()));
    for (int t = 0; t < model.n_terms(); ++t) {
        double acc = 0.0;
        model.for_each_term_entry(
            t, [&](int col, double val) { acc += val * log_x[static_cast<std::size_t>(col)]; });
        w[static_cast<std::size_t>(t)] = std::exp(acc);
    }
    return w;
}

}  // namespace

std::vector<double> forward(const NonlinearModel& model, const ObjectState& x, double floor) {
    return forward_evaluate(model, x, floor).measurements;
}

ForwardEvaluation forward_evaluate(const NonlinearModel& model, const ObjectState& x,
                                   double floor) {
    check_state(model, x, floor);
    ForwardEvaluation eval;
    eval.term_weights = term_weights(model, stacked_log(x));
    eval.measurements = model.C.apply(eval.term_weights);
    return eval;
}

std::vector<double> forward_linear(const SparseOperator& P, const std::vector<double>& s) {
    return P.apply(s);
}

std::vector<double> jacobian_apply(const NonlinearModel& model, const ObjectState& x,
                                   const std::vector<double>& v, double floor) {
    check_state(model, x, floor);
    const std::vector<double> xs = x.packed();
    if (v.size() != xs.size())
        throw std::invalid_argument("jacobian_apply: direction has wrong length");
    const auto w = term_weights(model, stacked_log(x));

    // u = E (v / x), then J v = C (w . u).
    std::vector<double> u(static_cast<std::size_t>(model.n_terms()), 0.0);
    for (int t = 0; t < model.n_terms(); ++t) {
        double acc = 0.0;
        model.for_each_term_entry(t, [&](int col, double val) {
            const auto i = static_cast<std::size_t>(col);
            acc += val * v[i] / xs[i];
        });
        u[static_cast<std::size_t>(t)] = acc * w[static_cast<std::size_t>(t)];
    }
    return model.C.apply(u);
}

std::vector<double> jacobian_transpose_apply(const NonlinearModel& model, const ObjectState& x,
                                             const std::vector<double>& wvec, double floor) {
    return jacobian_transpose_from(model, x, forward_evaluate(model, x, floor), wvec);
}

std::vector<double> jacobian_transpose_from(const NonlinearModel& model, const ObjectState& x,
                                            const ForwardEvaluation& eval,
                                            const std::vector<double>& wvec) {
    if (static_cast<int>(wvec.size()) != model.n_detector_rows())
        throw std::invalid_argument("jacobian_transpose_apply: vector has wrong length");
    const std::vector<double> xs = x.packed();
    const auto& w = eval.term_weights;

    // g = diag(1/x) E^T diag(w) C^T wvec, accumulated term by term.
    std::vector<double> ct = model.C.apply_transpose(wvec);
    std::vector<double> g(xs.size(), 0.0);
    for (int t = 0; t < model.n_terms(); ++t) {
        const double scale = ct[static_cast<std::size_t>(t)] * w[static_cast<std::size_t>(t)];
        if (scale == 0.0) continue;
        model.for_each_term_entry(t, [&](int col, double val) {
            const auto i = static_cast<std::size_t>(col);
            g[i] += scale * val / xs[i];
        });
    }
    return g;
}

std::vector<std::vector<double>> jacobian_dense(const NonlinearModel& model, const ObjectState& x,
                                                double floor) {
    check_state(model, x, floor);
    const std::size_t n_rows = static_cast<std::size_t>(model.n_detector_rows());
    const std::size_t n_cols = 2 * x.pixels();
    if (n_rows * n_cols > 10'000'000)
        throw std::invalid_argument("jacobian_dense: matrix exceeds the 1e7-entry guard");
    const std::vector<double> xs = x.packed();
    const auto w = term_weights(model, stacked_log(x));

    std::vector<std::vector<double>> J(n_rows, std::vector<double>(n_cols, 0.0));
    for (const auto& ce : model.C.entries()) {
        const int t = ce.col;
        auto& row = J[static_cast<std::size_t>(ce.row)];
        const double scale = ce.value * w[static_cast<std::size_t>(t)];
        model.for_each_term_entry(t, [&](int col, double val) {
            const auto i = static_cast<std::size_t>(col);
            row[i] += scale * val / xs[i];
        });
    }
    return J;
}

}  // namespace occtomo
