#pragma once

// Householder QR for square complex matrices. The reflector sign follows
// the pivot's phase, which fixes the factorization deterministically and
// avoids cancellation when forming the reflector.

#include <cmath>
#include <vector>

#include "mub/complex_matrix.hpp"
#include "mub/errors.hpp"

namespace mub {

struct QrFactors {
    ComplexMatrix q;  // unitary
    ComplexMatrix r;  // upper triangular
};

inline QrFactors qr_decompose(const ComplexMatrix& a) {
    if (!a.square()) throw std::invalid_argument("qr_decompose: matrix not square");
    const int n = a.rows();
    const double norm_a = frobenius_norm(a);

    ComplexMatrix r = a;
    std::vector<std::vector<Complex>> reflectors(n);
    std::vector<double> betas(n, 0.0);

    for (int k = 0; k < n; ++k) {
        double col_norm_sq = 0.0;
        for (int i = k; i < n; ++i) col_norm_sq += std::norm(r(i, k));
        const double col_norm = std::sqrt(col_norm_sq);
        if (col_norm <= 1e-12 * norm_a) {
            throw NumericalError("qr_decompose: rank deficiency at column " + std::to_string(k) +
                                 " (pivot " + std::to_string(col_norm) + ")");
        }

        const Complex x0 = r(k, k);
        const double abs_x0 = std::abs(x0);
        const Complex unit = abs_x0 > 0.0 ? x0 / abs_x0 : Complex(1.0, 0.0);
        const Complex alpha = -unit * col_norm;

        std::vector<Complex>& v = reflectors[k];
        v.resize(n - k);
        v[0] = x0 - alpha;  // = unit * (abs_x0 + col_norm), no cancellation
        for (int i = k + 1; i < n; ++i) v[i - k] = r(i, k);
        const double v_norm_sq = 2.0 * col_norm * (col_norm + abs_x0);
        const double beta = 2.0 / v_norm_sq;
        betas[k] = beta;

        // apply H = 1 - beta v v^dagger to the trailing block
        for (int j = k; j < n; ++j) {
            Complex w = 0.0;
            for (int i = k; i < n; ++i) w += std::conj(v[i - k]) * r(i, j);
            w *= beta;
            for (int i = k; i < n; ++i) r(i, j) -= w * v[i - k];
        }
        r(k, k) = alpha;
        for (int i = k + 1; i < n; ++i) r(i, k) = 0.0;
    }

    // Q = H_0 H_1 ... H_{n-1}: apply reflectors to the identity in reverse
    ComplexMatrix q = ComplexMatrix::identity(n);
    for (int k = n - 1; k >= 0; --k) {
        const std::vector<Complex>& v = reflectors[k];
        const double beta = betas[k];
        for (int j = 0; j < n; ++j) {
            Complex w = 0.0;
            for (int i = k; i < n; ++i) w += std::conj(v[i - k]) * q(i, j);
            w *= beta;
            for (int i = k; i < n; ++i) q(i, j) -= w * v[i - k];
        }
    }

    return {std::move(q), std::move(r)};
}

}  // namespace mub
