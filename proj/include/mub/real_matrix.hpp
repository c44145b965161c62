#pragma once

// Row-major real matrix, used for squared-modulus Gram tables and Jacobians.

#include <stdexcept>
#include <vector>

namespace mub {

class RealMatrix {
public:
    RealMatrix() = default;

    RealMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), entries_(check_size(rows, cols)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
    const double& operator()(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }

    const std::vector<double>& entries() const { return entries_; }
    std::vector<double>& entries() { return entries_; }

private:
    static std::size_t check_size(int rows, int cols) {
        if (rows <= 0 || cols <= 0) throw std::invalid_argument("RealMatrix: dimensions must be positive");
        return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> entries_;
};

}  // namespace mub
