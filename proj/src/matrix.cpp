#include "bnalg/matrix.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace bnalg {

Matrix<double> to_double(const Matrix<Rational>& m) {
    Matrix<double> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = to_double(m(r, c));
    }
    return out;
}

int rank_exact(const Matrix<Rational>& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    if (rows == 0 || cols == 0) return 0;

    // Scale each row by the lcm of its denominators; rank is unchanged.
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        mpz_class scale(1);
        for (std::size_t c = 0; c < cols; ++c) scale = lcm(scale, m(r, c).get_den());
        for (std::size_t c = 0; c < cols; ++c) {
            a[r][c] = m(r, c).get_num() * mpz_class(scale / m(r, c).get_den());
        }
    }

    // Bareiss: each elimination step divides exactly by the previous pivot,
    // keeping every entry an integer minor of the scaled matrix.
    mpz_class prev(1);
    std::size_t rank = 0;
    const std::size_t steps = std::min(rows, cols);
    while (rank < steps) {
        std::size_t pr = rows, pc = cols;
        for (std::size_t r = rank; r < rows && pr == rows; ++r) {
            for (std::size_t c = rank; c < cols; ++c) {
                if (a[r][c] != 0) {
                    pr = r;
                    pc = c;
                    break;
                }
            }
        }
        if (pr == rows) break;
        std::swap(a[rank], a[pr]);
        if (pc != rank) {
            for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][rank], a[r][pc]);
        }
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t c = rank + 1; c < cols; ++c) {
                mpz_class t = a[rank][rank] * a[r][c] - a[r][rank] * a[rank][c];
                mpz_divexact(a[r][c].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[r][rank] = 0;
        }
        prev = a[rank][rank];
        ++rank;
    }
    return static_cast<int>(rank);
}

int rank_numeric(const Matrix<double>& m, double rel_tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::MatrixXd em(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            em(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(em);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0) return 0;
    const double threshold = sv(0) * rel_tol;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > threshold) ++rank;
    }
    return rank;
}

}  // namespace bnalg
