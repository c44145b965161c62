#pragma once

// The non-unbiasedness objective: for N stored unitaries plus the implicit
// identity basis, sum over all basis pairs k < l and all entries (m, n) of
// (|(U_k^dagger U_l)_{mn}|^2 - 1/d)^2. The objective is zero exactly when
// the N+1 bases are mutually unbiased.
//
// Residual ordering is lexicographic in (k, l, m, n) so Jacobian columns and
// serialized results are reproducible across runs and platforms.

#include <cmath>
#include <span>
#include <vector>

#include "mub/complex_matrix.hpp"
#include "mub/real_matrix.hpp"
#include "mub/unitary_param.hpp"

namespace mub {

// N explicit unitaries; the last basis U_{N+1} = identity stays implicit.
struct BasisSet {
    int d = 0;
    std::vector<ComplexMatrix> bases;

    int n_bases() const { return static_cast<int>(bases.size()); }
};

inline void check_basis_set(const BasisSet& set) {
    if (set.d < 2) throw std::invalid_argument("BasisSet: d must be >= 2");
    if (set.bases.empty()) throw std::invalid_argument("BasisSet: need at least one basis");
    for (const ComplexMatrix& u : set.bases)
        if (u.rows() != set.d || u.cols() != set.d)
            throw std::invalid_argument("BasisSet: basis dimension mismatch");
}

// worst max |(U^dagger U - 1)| over the stored bases
inline double worst_unitarity_defect(const BasisSet& set) {
    double w = 0.0;
    for (const ComplexMatrix& u : set.bases) w = std::max(w, unitarity_defect(u));
    return w;
}

// entry (m, n) = |(A^dagger B)_{mn}|^2; rows and columns each sum to 1
inline RealMatrix gram_moduli_sq(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || !a.square())
        throw std::invalid_argument("gram_moduli_sq: need square matrices of equal dimension");
    const int d = a.rows();
    RealMatrix out(d, d);
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            Complex s = 0.0;
            for (int p = 0; p < d; ++p) s += std::conj(a(p, m)) * b(p, n);
            out(m, n) = std::norm(s);
        }
    }
    return out;
}

inline std::size_t residual_count(int d, int n_bases) {
    return static_cast<std::size_t>(d) * d * n_bases * (n_bases + 1) / 2;
}

// Flat residual vector over pairs k < l (the identity counted as basis N+1),
// entries row-major within each pair.
inline void residuals_into(const BasisSet& set, std::span<double> out) {
    check_basis_set(set);
    const int d = set.d;
    const int n = set.n_bases();
    if (out.size() != residual_count(d, n))
        throw std::invalid_argument("residuals_into: output length mismatch");
    const double inv_d = 1.0 / d;

    std::size_t idx = 0;
    for (int k = 0; k < n; ++k) {
        const ComplexMatrix& uk = set.bases[k];
        // pairs (k, l) with a stored partner
        for (int l = k + 1; l < n; ++l) {
            const ComplexMatrix& ul = set.bases[l];
            for (int m = 0; m < d; ++m) {
                for (int nn = 0; nn < d; ++nn) {
                    Complex s = 0.0;
                    for (int p = 0; p < d; ++p) s += std::conj(uk(p, m)) * ul(p, nn);
                    out[idx++] = std::norm(s) - inv_d;
                }
            }
        }
        // pair (k, N+1): U_k^dagger * identity
        for (int m = 0; m < d; ++m)
            for (int nn = 0; nn < d; ++nn) out[idx++] = std::norm(uk(nn, m)) - inv_d;
    }
}

inline std::vector<double> residuals(const BasisSet& set) {
    std::vector<double> out(residual_count(set.d, static_cast<int>(set.bases.size())));
    residuals_into(set, out);
    return out;
}

inline double objective_value(const BasisSet& set) {
    const std::vector<double> r = residuals(set);
    double s = 0.0;
    for (double v : r) s += v * v;
    return s;
}

struct MubCheck {
    bool is_mub = false;
    double objective = 0.0;
    // worst | |<psi_{k,m}|psi_{l,n}>| - 1/sqrt(d) | over all pairs and entries
    double worst_modulus_deviation = 0.0;
};

inline MubCheck is_mub_set(const BasisSet& set, double threshold) {
    if (threshold <= 0.0) throw std::invalid_argument("is_mub_set: threshold must be positive");
    check_basis_set(set);
    const int d = set.d;
    const int n = set.n_bases();
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));

    MubCheck result;
    std::vector<ComplexMatrix> all = set.bases;
    all.push_back(ComplexMatrix::identity(d));
    for (int k = 0; k < n + 1; ++k) {
        for (int l = k + 1; l < n + 1; ++l) {
            const RealMatrix g = gram_moduli_sq(all[k], all[l]);
            for (int m = 0; m < d; ++m) {
                for (int nn = 0; nn < d; ++nn) {
                    const double dev = std::abs(std::sqrt(g(m, nn)) - inv_sqrt_d);
                    result.worst_modulus_deviation = std::max(result.worst_modulus_deviation, dev);
                }
            }
        }
    }
    result.objective = objective_value(set);
    result.is_mub = result.objective <= threshold;
    return result;
}

// Residual functor for the optimizer: unpacks d^2 reals per basis, maps each
// through exp(iH), and evaluates the flat residual vector. Pure in the sense
// required by the solver: output depends on x alone.
class MubResidualFn {
public:
    MubResidualFn(int d, int n_bases) : d_(d), n_(n_bases) {
        if (d < 2 || n_bases < 1) throw std::invalid_argument("MubResidualFn: need d >= 2, N >= 1");
        set_.d = d;
        set_.bases.resize(n_bases);
    }

    std::size_t input_size() const { return param_count(d_, n_); }
    std::size_t output_size() const { return residual_count(d_, n_); }

    void operator()(std::span<const double> x, std::span<double> out) const {
        if (x.size() != input_size()) throw std::invalid_argument("MubResidualFn: bad input length");
        const std::size_t seg = static_cast<std::size_t>(d_) * d_;
        for (int b = 0; b < n_; ++b)
            set_.bases[b] = exp_i(params_to_hermitian(x.subspan(b * seg, seg), d_));
        residuals_into(set_, out);
    }

private:
    int d_;
    int n_;
    mutable BasisSet set_;  // scratch; never shared across threads
};

}  // namespace mub
