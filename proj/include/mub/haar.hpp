#pragma once

// Haar-measure random unitaries: QR-factor a Ginibre matrix and fix the
// phase ambiguity with diag(R_jj / |R_jj|). The phase correction makes the
// distribution exactly Haar rather than merely unitary.

#include "mub/complex_matrix.hpp"
#include "mub/errors.hpp"
#include "mub/qr.hpp"
#include "mub/rng.hpp"

namespace mub {

// d x d matrix with independent N(0,1) real and imaginary parts per entry
inline ComplexMatrix ginibre(int d, Rng& rng) {
    if (d < 1) throw std::invalid_argument("ginibre: d must be >= 1");
    ComplexMatrix g(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const auto [re, im] = rng.standard_normal_pair();
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

inline ComplexMatrix haar_unitary(int d, Rng& rng) {
    for (int attempt = 0; attempt < 2; ++attempt) {
        const ComplexMatrix g = ginibre(d, rng);
        try {
            QrFactors qr = qr_decompose(g);
            ComplexMatrix& u = qr.q;
            for (int j = 0; j < d; ++j) {
                const Complex rjj = qr.r(j, j);
                const Complex phase = rjj / std::abs(rjj);
                for (int i = 0; i < d; ++i) u(i, j) *= phase;
            }
            return u;
        } catch (const NumericalError&) {
            // rank-deficient Ginibre sample has probability zero; retry once
            if (attempt == 1) throw;
        }
    }
    throw NumericalError("haar_unitary: unreachable");
}

}  // namespace mub
