#include "agmetrics/linalg.hpp"

#include "agmetrics/errors.hpp"

#include <cmath>
#include <utility>

namespace agm {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

std::vector<double> Matrix::row(std::size_t i) const {
    return {data_.begin() + static_cast<long>(i * cols_),
            data_.begin() + static_cast<long>((i + 1) * cols_)};
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw NumericError("matmul: shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

std::vector<double> vecmat(const std::vector<double>& v, const Matrix& m) {
    if (v.size() != m.rows()) throw NumericError("vecmat: shape mismatch");
    std::vector<double> out(m.cols(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double vi = v[i];
        if (vi == 0.0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out[j] += vi * m(i, j);
        }
    }
    return out;
}

double max_abs(const Matrix& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            best = std::max(best, std::fabs(m(i, j)));
        }
    }
    return best;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw NumericError("max_abs_diff: shape mismatch");
    }
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            best = std::max(best, std::fabs(a(i, j) - b(i, j)));
        }
    }
    return best;
}

Matrix solve_linear(Matrix a, Matrix b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.rows() != n) throw NumericError("solve_linear: shape mismatch");

    // In-place LU with partial pivoting, applying row swaps to b as we go.
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::fabs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(a(r, col)) > best) {
                best = std::fabs(a(r, col));
                pivot = r;
            }
        }
        if (best < 1e-14) {
            throw NumericError("singular linear system (pivot ~0 at column " + std::to_string(col) + ")");
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
            for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(col, j), b(pivot, j));
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            a(r, col) = 0.0;
            for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= f * a(col, j);
            for (std::size_t j = 0; j < b.cols(); ++j) b(r, j) -= f * b(col, j);
        }
    }

    // Back substitution.
    Matrix x(n, b.cols());
    for (std::size_t jb = 0; jb < b.cols(); ++jb) {
        for (std::size_t ii = n; ii-- > 0;) {
            double acc = b(ii, jb);
            for (std::size_t j = ii + 1; j < n; ++j) acc -= a(ii, j) * x(j, jb);
            x(ii, jb) = acc / a(ii, ii);
        }
    }
    return x;
}

} // namespace agm
