#pragma once

#include <cstddef>
#include <vector>

#include "bnalg/rational.hpp"

namespace bnalg {

// Minimal dense row-major matrix, just enough for Jacobians and flattenings.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

Matrix<double> to_double(const Matrix<Rational>& m);

// Exact rank over Q: clears denominators row-wise, then runs fraction-free
// (Bareiss) elimination over the integers with full pivoting.
int rank_exact(const Matrix<Rational>& m);

// Numeric rank via SVD; singular values above sigma_max * rel_tol count.
int rank_numeric(const Matrix<double>& m, double rel_tol = 1e-9);

}  // namespace bnalg
