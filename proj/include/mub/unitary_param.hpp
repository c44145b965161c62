#pragma once

// Real-vector parameterization of Hermitian generators and the maps
// U = exp(iH) and H = log(U) between them.
//
// Packing convention for one d x d Hermitian in d^2 reals: entries
// 0..d-1 hold the real diagonal; then for each index pair m < n in
// lexicographic order two consecutive entries (a, b) set
// H_{mn} = a + i b and H_{nm} = a - i b.

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "mub/complex_matrix.hpp"
#include "mub/hermitian_eig.hpp"

namespace mub {

inline std::size_t param_count(int d, int n_bases) {
    return static_cast<std::size_t>(d) * d * n_bases;
}

inline ComplexMatrix params_to_hermitian(std::span<const double> segment, int d) {
    if (segment.size() != static_cast<std::size_t>(d) * d)
        throw std::invalid_argument("params_to_hermitian: segment length must be d^2");
    ComplexMatrix h(d, d);
    std::size_t idx = 0;
    for (int i = 0; i < d; ++i) h(i, i) = segment[idx++];
    for (int m = 0; m < d; ++m) {
        for (int n = m + 1; n < d; ++n) {
            const double a = segment[idx++];
            const double b = segment[idx++];
            h(m, n) = Complex(a, b);
            h(n, m) = Complex(a, -b);
        }
    }
    return h;
}

inline std::vector<double> hermitian_to_params(const ComplexMatrix& h, double hermitian_tol = 1e-10) {
    if (!h.square()) throw std::invalid_argument("hermitian_to_params: matrix not square");
    if (hermiticity_defect(h) > hermitian_tol)
        throw std::invalid_argument("hermitian_to_params: input not Hermitian within tolerance");
    const int d = h.rows();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i) out.push_back(h(i, i).real());
    for (int m = 0; m < d; ++m) {
        for (int n = m + 1; n < d; ++n) {
            out.push_back(h(m, n).real());
            out.push_back(h(m, n).imag());
        }
    }
    return out;
}

// U = V diag(e^{i lambda_k}) V^dagger from the eigendecomposition of H.
inline ComplexMatrix exp_i(const ComplexMatrix& h, double hermitian_tol = 1e-10) {
    const HermitianEig eig = hermitian_eig(h, hermitian_tol);
    const int d = h.rows();
    ComplexMatrix w(d, d);  // V diag(e^{i lambda})
    for (int k = 0; k < d; ++k) {
        const Complex phase(std::cos(eig.eigenvalues[k]), std::sin(eig.eigenvalues[k]));
        for (int i = 0; i < d; ++i) w(i, k) = eig.eigenvectors(i, k) * phase;
    }
    return multiply(w, adjoint(eig.eigenvectors));
}

// Principal Hermitian logarithm: eigenphases in (-pi, pi], exp_i(result) = U.
//
// Rather than a complex Schur pass, diagonalize the commuting Hermitian pair
// H_c = (U + U^dagger)/2 and H_s = (U - U^dagger)/(2i). Eigenvectors come from
// H_c; inside (near-)degenerate eigenspaces of H_c the basis is refined by
// diagonalizing the projection of H_s, which separates phase pairs +theta /
// -theta that share a cosine. Phases are then atan2(s_k, c_k) per eigenvector.
inline ComplexMatrix log_unitary(const ComplexMatrix& u, double unitary_tol = 1e-10) {
    if (!u.square()) throw std::invalid_argument("log_unitary: matrix not square");
    if (unitarity_defect(u) > unitary_tol)
        throw std::invalid_argument("log_unitary: input not unitary within tolerance");
    const int d = u.rows();

    ComplexMatrix hc(d, d);
    ComplexMatrix hs(d, d);
    const Complex half_over_i(0.0, -0.5);  // 1/(2i)
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const Complex uij = u(i, j);
            const Complex uji_c = std::conj(u(j, i));
            hc(i, j) = 0.5 * (uij + uji_c);
            hs(i, j) = half_over_i * (uij - uji_c);
        }
    }

    HermitianEig eig = hermitian_eig(hc);
    ComplexMatrix& v = eig.eigenvectors;

    // Refine clusters of H_c eigenvalues (absolute gap tolerance; the
    // spectrum of H_c lives in [-1, 1]).
    constexpr double kClusterGap = 1e-8;
    int start = 0;
    while (start < d) {
        int stop = start + 1;
        while (stop < d && eig.eigenvalues[stop] - eig.eigenvalues[stop - 1] <= kClusterGap) ++stop;
        const int g = stop - start;
        if (g > 1) {
            // B = V_g^dagger H_s V_g, symmetrized, then rotate the cluster columns
            ComplexMatrix b(g, g);
            for (int r = 0; r < g; ++r) {
                for (int c = 0; c < g; ++c) {
                    Complex sum = 0.0;
                    for (int i = 0; i < d; ++i) {
                        Complex hs_vc = 0.0;
                        for (int j = 0; j < d; ++j) hs_vc += hs(i, j) * v(j, start + c);
                        sum += std::conj(v(i, start + r)) * hs_vc;
                    }
                    b(r, c) = sum;
                }
            }
            for (int r = 0; r < g; ++r)
                for (int c = r; c < g; ++c) {
                    const Complex z = 0.5 * (b(r, c) + std::conj(b(c, r)));
                    b(r, c) = z;
                    b(c, r) = std::conj(z);
                }
            const HermitianEig sub = hermitian_eig(b);
            ComplexMatrix rotated(d, g);
            for (int i = 0; i < d; ++i) {
                for (int c = 0; c < g; ++c) {
                    Complex sum = 0.0;
                    for (int r = 0; r < g; ++r) sum += v(i, start + r) * sub.eigenvectors(r, c);
                    rotated(i, c) = sum;
                }
            }
            for (int i = 0; i < d; ++i)
                for (int c = 0; c < g; ++c) v(i, start + c) = rotated(i, c);
        }
        start = stop;
    }

    // phases from the diagonal of the transformed pair
    std::vector<double> theta(d);
    for (int k = 0; k < d; ++k) {
        Complex ck = 0.0;
        Complex sk = 0.0;
        for (int i = 0; i < d; ++i) {
            Complex hc_vk = 0.0;
            Complex hs_vk = 0.0;
            for (int j = 0; j < d; ++j) {
                hc_vk += hc(i, j) * v(j, k);
                hs_vk += hs(i, j) * v(j, k);
            }
            ck += std::conj(v(i, k)) * hc_vk;
            sk += std::conj(v(i, k)) * hs_vk;
        }
        double t = std::atan2(sk.real(), ck.real());
        if (t <= -std::numbers::pi) t = std::numbers::pi;  // (-pi, pi] branch
        theta[k] = t;
    }

    ComplexMatrix w(d, d);  // V diag(theta)
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i) w(i, k) = v(i, k) * theta[k];
    ComplexMatrix h = multiply(w, adjoint(v));

    // symmetrize away the last rounding drift
    for (int i = 0; i < d; ++i) {
        h(i, i) = Complex(h(i, i).real(), 0.0);
        for (int j = i + 1; j < d; ++j) {
            const Complex z = 0.5 * (h(i, j) + std::conj(h(j, i)));
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    return h;
}

}  // namespace mub
