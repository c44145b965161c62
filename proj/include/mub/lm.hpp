#pragma once

// Levenberg-Marquardt for nonlinear least squares with forward-difference
// Jacobians.
//
// Residual callables have the shape
//     void operator()(std::span<const double> x, std::span<double> out)
// and must be pure: the output depends on x alone.
//
// Damping follows the classic Levenberg schedule: solve
// (J^T J + lambda * 1) step = -J^T f with lambda initialised relative to
// max(diag(J^T J)). Uniform damping is essential here: residual functions
// with gauge freedom (and this project's main one has plenty) produce
// near-null Jacobian columns, and per-column scaled damping lets steps blow
// up along exactly those directions. A step is accepted only if it strictly
// decreases the sum of squares; on acceptance lambda shrinks and the
// Jacobian is refreshed, on rejection lambda grows and the Jacobian is
// reused. The run terminates when an accepted step changes the objective by
// less than func_change_tol, when the damping factor overflows damping_max,
// when the gradient vanishes, or at the iteration cap.

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mub/errors.hpp"
#include "mub/real_matrix.hpp"

namespace mub {

struct LmOptions {
    double func_change_tol = 1e-8;
    int max_iterations = 400;
    double fd_step = 1.4901161193847656e-8;  // sqrt(machine epsilon)
    double damping_init = 1e-3;
    double damping_up = 10.0;
    double damping_down = 0.1;
    double damping_max = 1e16;
};

enum class LmTermination : std::uint8_t {
    FunctionChangeTol,
    MaxIterations,
    DampingOverflow,
    GradientVanished,
};

inline const char* to_string(LmTermination t) {
    switch (t) {
        case LmTermination::FunctionChangeTol: return "function_change_tol";
        case LmTermination::MaxIterations: return "max_iterations";
        case LmTermination::DampingOverflow: return "damping_overflow";
        case LmTermination::GradientVanished: return "gradient_vanished";
    }
    return "unknown";
}

struct LmResult {
    std::vector<double> x_final;
    double objective_final = 0.0;
    int iterations = 0;  // accepted steps
    LmTermination termination = LmTermination::MaxIterations;
    std::vector<double> objective_trace;  // initial value, then one entry per accepted step
};

namespace detail {

inline double sum_of_squares(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

inline bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

// Cholesky solve of a symmetric positive definite system, in place.
// Returns false when a pivot is non-positive or non-finite.
inline bool cholesky_solve(RealMatrix a, std::span<const double> b, std::span<double> x) {
    const int n = a.rows();
    for (int j = 0; j < n; ++j) {
        double diag = a(j, j);
        for (int p = 0; p < j; ++p) diag -= a(j, p) * a(j, p);
        if (!(diag > 0.0) || !std::isfinite(diag)) return false;
        const double ljj = std::sqrt(diag);
        a(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) {
            double v = a(i, j);
            for (int p = 0; p < j; ++p) v -= a(i, p) * a(j, p);
            a(i, j) = v / ljj;
        }
    }
    // forward then backward substitution
    for (int i = 0; i < n; ++i) {
        double v = b[i];
        for (int p = 0; p < i; ++p) v -= a(i, p) * x[p];
        x[i] = v / a(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
        double v = x[i];
        for (int p = i + 1; p < n; ++p) v -= a(p, i) * x[p];
        x[i] = v / a(i, i);
    }
    return true;
}

}  // namespace detail

// Forward-difference Jacobian with per-coordinate steps
// h_j = fd_step * max(|x_j|, 1), given the residual at the base point.
template <class F>
RealMatrix fd_jacobian_from_base(F&& residual_fn, std::span<const double> x,
                                 std::span<const double> f_base, double fd_step) {
    const int k = static_cast<int>(x.size());
    const int l = static_cast<int>(f_base.size());
    RealMatrix jac(l, k);
    std::vector<double> xp(x.begin(), x.end());
    std::vector<double> fp(l);
    for (int j = 0; j < k; ++j) {
        const double h = fd_step * std::max(std::abs(x[j]), 1.0);
        const double saved = xp[j];
        xp[j] = saved + h;
        residual_fn(std::span<const double>(xp), std::span<double>(fp));
        xp[j] = saved;
        if (!detail::all_finite(fp))
            throw NumericalError("fd_jacobian: non-finite residual at probe of coordinate " +
                                 std::to_string(j));
        const double inv_h = 1.0 / h;
        for (int i = 0; i < l; ++i) jac(i, j) = (fp[i] - f_base[i]) * inv_h;
    }
    return jac;
}

template <class F>
RealMatrix fd_jacobian(F&& residual_fn, std::span<const double> x, int n_residuals,
                       double fd_step = LmOptions{}.fd_step) {
    std::vector<double> f_base(n_residuals);
    residual_fn(x, std::span<double>(f_base));
    if (!detail::all_finite(f_base))
        throw NumericalError("fd_jacobian: non-finite residual at the base point");
    return fd_jacobian_from_base(residual_fn, x, f_base, fd_step);
}

template <class F>
LmResult lm_minimize(F&& residual_fn, std::vector<double> x0, int n_residuals,
                     const LmOptions& opts = {}) {
    const int k = static_cast<int>(x0.size());
    const int l = n_residuals;
    if (k < 1 || l < 1) throw std::invalid_argument("lm_minimize: empty problem");
    if (!(opts.func_change_tol > 0.0) || !(opts.fd_step > 0.0) || opts.max_iterations < 1 ||
        !(opts.damping_init > 0.0) || !(opts.damping_max > 0.0) || !(opts.damping_up > 1.0) ||
        !(opts.damping_down > 0.0) || !(opts.damping_down < 1.0))
        throw std::invalid_argument("lm_minimize: invalid options");

    std::vector<double> x = std::move(x0);
    std::vector<double> f(l);
    residual_fn(std::span<const double>(x), std::span<double>(f));
    if (!detail::all_finite(f))
        throw NumericalError("lm_minimize: residual not finite at the starting point");
    double objective = detail::sum_of_squares(f);

    LmResult result;
    result.objective_trace.push_back(objective);
    result.termination = LmTermination::MaxIterations;

    double lambda = 0.0;  // set from the curvature scale at the first iteration
    std::vector<double> grad(k);
    std::vector<double> step(k);
    std::vector<double> x_trial(k);
    std::vector<double> f_trial(l);

    bool done = false;
    for (int iter = 0; iter < opts.max_iterations && !done; ++iter) {
        const RealMatrix jac = fd_jacobian_from_base(residual_fn, x, f, opts.fd_step);

        // J^T J (upper triangle then mirrored) and J^T f
        RealMatrix jtj(k, k);
        std::fill(grad.begin(), grad.end(), 0.0);
        for (int r = 0; r < l; ++r) {
            const double* row = &jac(r, 0);
            const double fr = f[r];
            for (int i = 0; i < k; ++i) {
                const double ji = row[i];
                grad[i] += ji * fr;
                if (ji == 0.0) continue;
                double* out = &jtj(i, 0);
                for (int j = i; j < k; ++j) out[j] += ji * row[j];
            }
        }
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < i; ++j) jtj(i, j) = jtj(j, i);

        double grad_inf = 0.0;
        for (double g : grad) grad_inf = std::max(grad_inf, std::abs(g));
        if (grad_inf < 1e-12) {
            result.termination = LmTermination::GradientVanished;
            break;
        }

        if (iter == 0) {
            double max_diag = 0.0;
            for (int i = 0; i < k; ++i) max_diag = std::max(max_diag, jtj(i, i));
            lambda = opts.damping_init * max_diag;
        }

        std::vector<double> neg_grad(grad);
        for (double& g : neg_grad) g = -g;

        // inner loop: raise lambda until a step is accepted or damping overflows
        while (true) {
            RealMatrix damped = jtj;
            for (int i = 0; i < k; ++i) damped(i, i) += lambda;

            bool solved = detail::cholesky_solve(damped, neg_grad, step);
            if (!solved) {
                for (int i = 0; i < k; ++i) damped(i, i) = jtj(i, i) + lambda + 1e-12;
                solved = detail::cholesky_solve(damped, neg_grad, step);
            }
            if (!solved) {
                result.termination = LmTermination::DampingOverflow;
                done = true;
                break;
            }

            for (int i = 0; i < k; ++i) x_trial[i] = x[i] + step[i];
            residual_fn(std::span<const double>(x_trial), std::span<double>(f_trial));
            const double objective_trial = detail::sum_of_squares(f_trial);

            if (std::isfinite(objective_trial) && objective_trial < objective) {
                const double decrease = objective - objective_trial;
                x.swap(x_trial);
                f.swap(f_trial);
                objective = objective_trial;
                result.objective_trace.push_back(objective);
                ++result.iterations;
                lambda *= opts.damping_down;
                if (decrease < opts.func_change_tol) {
                    result.termination = LmTermination::FunctionChangeTol;
                    done = true;
                }
                break;  // refresh Jacobian
            }

            lambda *= opts.damping_up;
            if (lambda > opts.damping_max) {
                result.termination = LmTermination::DampingOverflow;
                done = true;
                break;
            }
        }
    }

    result.x_final = std::move(x);
    result.objective_final = objective;
    return result;
}

}  // namespace mub
