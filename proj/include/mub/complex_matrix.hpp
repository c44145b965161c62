#pragma once

// Dense row-major complex matrices sized for small problems (d <= 16).
// Values are immutable in spirit: every operation returns a fresh matrix,
// so instances can be shared freely across threads.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mub {

using Complex = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), entries_(check_size(rows, cols)) {}

    static ComplexMatrix identity(int d) {
        ComplexMatrix m(d, d);
        for (int i = 0; i < d; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_ && rows_ > 0; }

    Complex& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Complex& operator()(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }

    const std::vector<Complex>& entries() const { return entries_; }
    std::vector<Complex>& entries() { return entries_; }

private:
    static std::size_t check_size(int rows, int cols) {
        if (rows <= 0 || cols <= 0) throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
        return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<Complex> entries_;
};

inline ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimensions differ");
    ComplexMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int p = 0; p < a.cols(); ++p) {
            const Complex aip = a(i, p);
            if (aip == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) out(i, j) += aip * b(p, j);
        }
    }
    return out;
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

inline ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("add: shapes differ");
    ComplexMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

inline ComplexMatrix scale(const ComplexMatrix& a, Complex factor) {
    ComplexMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = factor * a(i, j);
    return out;
}

inline double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const Complex& z : a.entries()) m = std::max(m, std::abs(z));
    return m;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shapes differ");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const Complex& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

// max |(A - A^dagger)_{ij}| over all entries; zero for exactly Hermitian input
inline double hermiticity_defect(const ComplexMatrix& a) {
    if (!a.square()) throw std::invalid_argument("hermiticity_defect: matrix not square");
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

// max |(A^dagger A - 1)_{ij}|
inline double unitarity_defect(const ComplexMatrix& a) {
    if (!a.square()) throw std::invalid_argument("unitarity_defect: matrix not square");
    const int d = a.rows();
    double m = 0.0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            Complex s = 0.0;
            for (int p = 0; p < d; ++p) s += std::conj(a(p, i)) * a(p, j);
            if (i == j) s -= 1.0;
            m = std::max(m, std::abs(s));
        }
    }
    return m;
}

inline Complex trace(const ComplexMatrix& a) {
    if (!a.square()) throw std::invalid_argument("trace: matrix not square");
    Complex t = 0.0;
    for (int i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

inline bool all_finite(const ComplexMatrix& a) {
    for (const Complex& z : a.entries())
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

}  // namespace mub
