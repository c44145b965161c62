#pragma once

// Known complete MUB families in prime dimension, used as oracles for the
// objective: d unitaries that together with the identity form d+1 mutually
// unbiased bases.

#include <cmath>
#include <numbers>

#include "mub/complex_matrix.hpp"
#include "mub/objective.hpp"

namespace mub {

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int p = 2; static_cast<long long>(p) * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

// For odd prime d, basis r has column m with components
// <n|psi^r_m> = omega^{r n^2 + m n} / sqrt(d), omega = e^{2 pi i / d}.
// For d = 2 that family degenerates; use the sigma_x and sigma_y eigenbases.
inline BasisSet prime_mub_construction(int d) {
    if (!is_prime(d)) throw std::invalid_argument("prime_mub_construction: dimension must be prime");

    BasisSet set;
    set.d = d;
    set.bases.reserve(d);

    if (d == 2) {
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        ComplexMatrix ux(2, 2);  // columns (1,1)/sqrt2, (1,-1)/sqrt2
        ux(0, 0) = inv_sqrt2;
        ux(0, 1) = inv_sqrt2;
        ux(1, 0) = inv_sqrt2;
        ux(1, 1) = -inv_sqrt2;
        ComplexMatrix uy(2, 2);  // columns (1,i)/sqrt2, (1,-i)/sqrt2
        uy(0, 0) = inv_sqrt2;
        uy(0, 1) = inv_sqrt2;
        uy(1, 0) = Complex(0.0, inv_sqrt2);
        uy(1, 1) = Complex(0.0, -inv_sqrt2);
        set.bases.push_back(std::move(ux));
        set.bases.push_back(std::move(uy));
        return set;
    }

    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
    for (int r = 0; r < d; ++r) {
        ComplexMatrix u(d, d);
        for (int m = 0; m < d; ++m) {
            for (int n = 0; n < d; ++n) {
                // reduce the exponent mod d before taking the angle
                const long long e = (static_cast<long long>(r) * n * n + static_cast<long long>(m) * n) % d;
                const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / d;
                u(n, m) = Complex(std::cos(angle) * inv_sqrt_d, std::sin(angle) * inv_sqrt_d);
            }
        }
        set.bases.push_back(std::move(u));
    }
    return set;
}

// The discrete Fourier basis, unbiased to the standard basis in every d.
inline ComplexMatrix fourier_matrix(int d) {
    if (d < 1) throw std::invalid_argument("fourier_matrix: d must be positive");
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
    ComplexMatrix f(d, d);
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            const long long e = (static_cast<long long>(m) * n) % d;
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / d;
            f(m, n) = Complex(std::cos(angle) * inv_sqrt_d, std::sin(angle) * inv_sqrt_d);
        }
    }
    return f;
}

}  // namespace mub
