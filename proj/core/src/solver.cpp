#include "occtomo/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace occtomo {

namespace {

double dot_v(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm2_v(const std::vector<double>& a) { return std::sqrt(dot_v(a, a)); }

void check_problem(const Problem& p) {
    if (p.model == nullptr) throw std::invalid_argument("problem has no model");
    if (p.mu < 0.0) throw std::invalid_argument("mu must be >= 0");
    if (!(p.epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    const int expected_rows =
        p.downsampler ? p.downsampler->rows() : p.model->n_detector_rows();
    if (static_cast<int>(p.data.size()) != expected_rows)
        throw std::invalid_argument("data length does not match the measurement operator");
    if (p.downsampler && p.downsampler->cols() != p.model->n_detector_rows())
        throw std::invalid_argument("downsampler does not match the model");
    if (static_cast<int>(p.x_air.size()) != p.n_unknowns())
        throw std::invalid_argument("x_air length does not match the model");
}

// One full evaluation at a feasible state; the forward intermediates are
// kept so the gradient at the same point costs only the transpose sweep.
struct Evaluation {
    ObjectState state;
    ForwardEvaluation fwd;
    std::vector<double> residual;  // data - F(x)
    double data_term = 0.0;
    double reg_term = 0.0;
    double phi() const { return data_term + reg_term; }
};

Evaluation evaluate(const Problem& p, ObjectState st) {
    Evaluation ev;
    ev.state = std::move(st);
    ev.fwd = forward_evaluate(*p.model, ev.state, p.epsilon);
    std::vector<double> downsampled;
    const std::vector<double>* f = &ev.fwd.measurements;
    if (p.downsampler) {
        downsampled = p.downsampler->apply(ev.fwd.measurements);
        f = &downsampled;
    }
    ev.residual.resize(f->size());
    for (std::size_t i = 0; i < f->size(); ++i) {
        ev.residual[i] = p.data[i] - (*f)[i];
        ev.data_term += ev.residual[i] * ev.residual[i];
    }
    if (p.mu > 0.0) {
        const auto xs = ev.state.packed();
        double dist2 = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double d = xs[i] - p.x_air[i];
            dist2 += d * d;
        }
        ev.reg_term = p.mu * dist2;
    }
    return ev;
}

std::vector<double> gradient_from(const Problem& p, const Evaluation& ev) {
    std::vector<double> lifted;
    const std::vector<double>* w = &ev.residual;
    if (p.downsampler) {
        lifted = p.downsampler->apply_transpose(ev.residual);
        w = &lifted;
    }
    std::vector<double> g = jacobian_transpose_from(*p.model, ev.state, ev.fwd, *w);
    const auto xs = ev.state.packed();
    for (std::size_t i = 0; i < g.size(); ++i) {
        g[i] = -2.0 * g[i];
        if (p.mu > 0.0) g[i] += 2.0 * p.mu * (xs[i] - p.x_air[i]);
    }
    return g;
}

}  // namespace

Problem make_problem(const NonlinearModel& model, std::vector<double> data, double mu,
                     const SparseOperator* downsampler, double epsilon) {
    Problem p;
    p.model = &model;
    p.data = std::move(data);
    p.mu = mu;
    p.downsampler = downsampler;
    p.epsilon = epsilon;
    const int K = model.n_pixels();
    p.x_air.assign(static_cast<std::size_t>(2 * K), 0.0);
    std::fill(p.x_air.begin(), p.x_air.begin() + K, 1.0);
    check_problem(p);
    return p;
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_iter: return "max_iter";
        case SolveStatus::line_search_failure: return "line_search_failure";
    }
    return "unknown";
}

double objective(const Problem& problem, const ObjectState& x) {
    check_problem(problem);
    return evaluate(problem, x).phi();
}

std::vector<double> gradient(const Problem& problem, const ObjectState& x) {
    check_problem(problem);
    return gradient_from(problem, evaluate(problem, x));
}

ObjectState default_initial_state(const Problem& problem) {
    check_problem(problem);
    const NonlinearModel& m = *problem.model;
    // Row sums of the effective linear projection (a == 1 collapses the model
    // to P s, and P's row sums equal C's).
    std::vector<double> ones(static_cast<std::size_t>(m.n_terms()), 1.0);
    std::vector<double> row_sums = m.C.apply(ones);
    if (problem.downsampler) row_sums = problem.downsampler->apply(row_sums);
    double max_row = 0.0;
    for (double v : row_sums) max_row = std::max(max_row, v);
    double max_b = 0.0;
    for (double v : problem.data) max_b = std::max(max_b, v);
    double s0 = max_row > 0.0 ? 0.5 * max_b / max_row : 0.5;
    s0 = std::max(s0, problem.epsilon);
    return uniform_state(m.n_pixels(), 1.0, s0);
}

SolveResult reconstruct(const Problem& problem, const SolverConfig& config) {
    check_problem(problem);
    if (config.memory < 1 || config.max_iter < 0 ||
        !(config.backtrack > 0.0 && config.backtrack < 1.0))
        throw std::invalid_argument("invalid solver configuration");

    const std::size_t n = static_cast<std::size_t>(problem.n_unknowns());
    const double eps = problem.epsilon;
    const bool logp = config.log_reparam;
    const double lb = logp ? std::log(eps) : eps;

    // The iterate y lives in x-space or z = log x space.
    auto decode = [&](const std::vector<double>& y) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = logp ? std::max(std::exp(y[i]), eps) : y[i];
        return ObjectState::unpack(x);
    };

    ObjectState x0 = config.initial_state ? *config.initial_state : default_initial_state(problem);
    std::vector<double> y = x0.packed();
    if (static_cast<int>(y.size()) != problem.n_unknowns())
        throw std::invalid_argument("initial state does not match the model");
    for (double& v : y) v = std::max(v, eps);
    if (logp)
        for (double& v : y) v = std::log(v);

    auto eval_at = [&](const std::vector<double>& yy) { return evaluate(problem, decode(yy)); };
    auto grad_at = [&](const Evaluation& ev) {
        std::vector<double> g = gradient_from(problem, ev);
        if (logp) {
            const auto xs = ev.state.packed();
            for (std::size_t i = 0; i < n; ++i) g[i] *= xs[i];
        }
        return g;
    };
    auto projected_gradient_norm = [&](const std::vector<double>& yy,
                                       const std::vector<double>& g) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double step = std::max(yy[i] - g[i], lb) - yy[i];
            acc += step * step;
        }
        return std::sqrt(acc);
    };

    // Limited-memory pairs for the two-loop recursion.
    std::deque<std::vector<double>> mem_s, mem_y;
    std::deque<double> mem_rho;
    auto lbfgs_direction = [&](const std::vector<double>& g) {
        std::vector<double> q = g;
        const std::size_t m = mem_s.size();
        std::vector<double> alpha(m);
        for (std::size_t i = m; i-- > 0;) {
            alpha[i] = mem_rho[i] * dot_v(mem_s[i], q);
            for (std::size_t k = 0; k < n; ++k) q[k] -= alpha[i] * mem_y[i][k];
        }
        if (m > 0) {
            const double gamma =
                dot_v(mem_s[m - 1], mem_y[m - 1]) / dot_v(mem_y[m - 1], mem_y[m - 1]);
            for (double& v : q) v *= gamma;
        }
        for (std::size_t i = 0; i < m; ++i) {
            const double beta = mem_rho[i] * dot_v(mem_y[i], q);
            for (std::size_t k = 0; k < n; ++k) q[k] += (alpha[i] - beta) * mem_s[i][k];
        }
        for (double& v : q) v = -v;
        return q;  // -H g
    };

    SolveResult result;
    Evaluation cur = eval_at(y);
    std::vector<double> g = grad_at(cur);
    result.objective_trace.push_back(cur.phi());

    // Line search along the projection arc; returns accepted (y+, eval).
    auto line_search = [&](const std::vector<double>& dir, Evaluation& out_eval,
                           std::vector<double>& out_y) {
        double alpha = 1.0;
        for (int bt = 0; bt <= config.max_backtracks; ++bt) {
            for (std::size_t i = 0; i < n; ++i)
                out_y[i] = std::max(y[i] + alpha * dir[i], lb);
            double gdelta = 0.0;
            double step2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = out_y[i] - y[i];
                gdelta += g[i] * d;
                step2 += d * d;
            }
            if (step2 == 0.0) return false;  // projection absorbed the whole step
            Evaluation trial = eval_at(out_y);
            const double phi_trial = trial.phi();
            if (std::isfinite(phi_trial) &&
                phi_trial <= cur.phi() + config.armijo * std::min(gdelta, 0.0)) {
                out_eval = std::move(trial);
                return true;
            }
            alpha *= config.backtrack;
        }
        return false;
    };

    int iter = 0;
    SolveStatus status = SolveStatus::max_iter;
    if (problem.mu == 0.0 && cur.data_term == 0.0) {
        status = SolveStatus::converged;
    } else {
        for (iter = 0; iter < config.max_iter; ++iter) {
            const double pg = projected_gradient_norm(y, g);
            if (pg <= config.tol * (1.0 + std::abs(cur.phi()))) {
                status = SolveStatus::converged;
                break;
            }

            std::vector<double> dir = lbfgs_direction(g);
            if (dot_v(dir, g) >= 0.0) {
                dir = g;
                for (double& v : dir) v = -v;
            }

            Evaluation next;
            std::vector<double> y_next(n);
            bool accepted = line_search(dir, next, y_next);
            if (!accepted) {
                // Retry once along steepest descent before giving up.
                std::vector<double> sd = g;
                for (double& v : sd) v = -v;
                accepted = line_search(sd, next, y_next);
            }
            if (!accepted) {
                status = SolveStatus::line_search_failure;
                break;
            }

            std::vector<double> g_next = grad_at(next);
            std::vector<double> step(n), ydiff(n);
            for (std::size_t i = 0; i < n; ++i) {
                step[i] = y_next[i] - y[i];
                ydiff[i] = g_next[i] - g[i];
            }
            const double sy = dot_v(step, ydiff);
            if (sy > 1e-10 * norm2_v(step) * norm2_v(ydiff)) {
                mem_s.push_back(std::move(step));
                mem_y.push_back(std::move(ydiff));
                mem_rho.push_back(1.0 / sy);
                if (static_cast<int>(mem_s.size()) > config.memory) {
                    mem_s.pop_front();
                    mem_y.pop_front();
                    mem_rho.pop_front();
                }
            }

            y = std::move(y_next);
            cur = std::move(next);
            g = std::move(g_next);
            result.objective_trace.push_back(cur.phi());
        }
    }

    result.x = decode(y);
    result.grad_norm = projected_gradient_norm(y, g);
    result.iterations = iter;
    result.status = status;
    return result;
}

}  // namespace occtomo
