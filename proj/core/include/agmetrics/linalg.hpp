#pragma once

#include <cstddef>
#include <vector>

namespace agm {

/// Row-major dense matrix. Chains here are tens of states, so everything is
/// plain O(n^3) with no sparsity tricks.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<double> row(std::size_t i) const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);

/// Row vector times matrix (distributions multiply on the left).
std::vector<double> vecmat(const std::vector<double>& v, const Matrix& m);

/// Largest absolute entry.
double max_abs(const Matrix& m);

/// max_ij |a_ij - b_ij|; matrices must agree in shape.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Solves A X = B by Gaussian elimination with partial pivoting.
/// Throws NumericError when A is singular to working precision.
Matrix solve_linear(Matrix a, Matrix b);

} // namespace agm
