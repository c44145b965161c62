#pragma once

// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
// Matrices are tiny here, and Jacobi is simple to keep deterministic:
// fixed sweep order, fixed rotation convention, no pivot search.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mub/complex_matrix.hpp"
#include "mub/errors.hpp"

namespace mub {

struct HermitianEig {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns, orthonormal
};

namespace detail {

// off-diagonal Frobenius norm
inline double off_diag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace detail

inline HermitianEig hermitian_eig(const ComplexMatrix& h, double hermitian_tol = 1e-10) {
    if (!h.square()) throw std::invalid_argument("hermitian_eig: matrix not square");
    if (hermiticity_defect(h) > hermitian_tol)
        throw std::invalid_argument("hermitian_eig: input not Hermitian within tolerance");

    const int d = h.rows();
    const double norm_h = frobenius_norm(h);
    const double target = 1e-14 * norm_h;
    constexpr int kMaxSweeps = 100;

    // Work on an exactly Hermitian copy so rounding in the caller cannot drift.
    ComplexMatrix a(d, d);
    for (int i = 0; i < d; ++i) {
        a(i, i) = Complex(h(i, i).real(), 0.0);
        for (int j = i + 1; j < d; ++j) {
            const Complex z = 0.5 * (h(i, j) + std::conj(h(j, i)));
            a(i, j) = z;
            a(j, i) = std::conj(z);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(d);

    if (norm_h > 0.0) {
        bool converged = false;
        for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
            if (detail::off_diag_norm(a) <= target) {
                converged = true;
                break;
            }
            for (int p = 0; p < d - 1; ++p) {
                for (int q = p + 1; q < d; ++q) {
                    const Complex b = a(p, q);
                    const double abs_b = std::abs(b);
                    if (abs_b == 0.0) continue;

                    // Rotation zeroing a_pq: phase-align the pivot, then the
                    // classic real Jacobi angle on [[a_pp,|b|],[|b|,a_qq]].
                    const Complex phase = b / abs_b;
                    const double tau = (a(p, p).real() - a(q, q).real()) / (2.0 * abs_b);
                    double t;
                    if (tau == 0.0) {
                        t = 1.0;
                    } else {
                        t = (tau > 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                    }
                    const double c = 1.0 / std::hypot(1.0, t);
                    const double s = t * c;
                    const Complex sp = s * phase;

                    // columns: A <- A J with J = [[c, -s e^{i phi}], [s e^{-i phi}, c]]
                    for (int i = 0; i < d; ++i) {
                        const Complex aip = a(i, p);
                        const Complex aiq = a(i, q);
                        a(i, p) = c * aip + std::conj(sp) * aiq;
                        a(i, q) = -sp * aip + c * aiq;
                    }
                    // rows: A <- J^dagger A
                    for (int j = 0; j < d; ++j) {
                        const Complex apj = a(p, j);
                        const Complex aqj = a(q, j);
                        a(p, j) = c * apj + sp * aqj;
                        a(q, j) = -std::conj(sp) * apj + c * aqj;
                    }
                    // re-impose exact structure on the rotated pair
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    a(p, p) = Complex(a(p, p).real(), 0.0);
                    a(q, q) = Complex(a(q, q).real(), 0.0);

                    for (int i = 0; i < d; ++i) {
                        const Complex vip = v(i, p);
                        const Complex viq = v(i, q);
                        v(i, p) = c * vip + std::conj(sp) * viq;
                        v(i, q) = -sp * vip + c * viq;
                    }
                }
            }
        }
        if (!converged && detail::off_diag_norm(a) > target) {
            throw NumericalError("hermitian_eig: Jacobi sweeps did not converge (off-diagonal norm " +
                                 std::to_string(detail::off_diag_norm(a)) + " > " + std::to_string(target) +
                                 " after 100 sweeps, d=" + std::to_string(d) + ")");
        }
    }

    // sort ascending, permuting the eigenvector columns to match
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEig out;
    out.eigenvalues.resize(d);
    out.eigenvectors = ComplexMatrix(d, d);
    for (int k = 0; k < d; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (int i = 0; i < d; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

}  // namespace mub
