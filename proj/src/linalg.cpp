#include "inc4/linalg.hpp"

#include <stdexcept>

namespace inc4 {

std::vector<int> RatMatrix::rref() {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < c_ && row < r_; ++col) {
        int p = -1;
        for (int i = row; i < r_; ++i)
            if (!at(i, col).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < c_; ++j) std::swap(at(p, j), at(row, j));
        Rational inv = at(row, col).inv();
        for (int j = col; j < c_; ++j) at(row, j) *= inv;
        for (int i = 0; i < r_; ++i) {
            if (i == row || at(i, col).is_zero()) continue;
            Rational f = at(i, col);
            for (int j = col; j < c_; ++j) at(i, j) -= f * at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int RatMatrix::rank() const {
    RatMatrix copy(*this);
    return static_cast<int>(copy.rref().size());
}

std::vector<std::vector<Rational>> RatMatrix::kernel_basis() const {
    RatMatrix m(*this);
    std::vector<int> pivots = m.rref();
    std::vector<bool> is_pivot(c_, false);
    for (int p : pivots) is_pivot[p] = true;

    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < c_; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(c_);
        v[free] = Rational(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(static_cast<int>(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

mpz_class bareiss_det(std::vector<std::vector<mpz_class>> m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : mpz_class(-m[n - 1][n - 1]);
}

Rational fraction_free_det(const RatMatrix& mat) {
    if (mat.rows() != mat.cols())
        throw std::invalid_argument("fraction_free_det: matrix is not square");
    const int n = mat.rows();
    if (n == 0) return Rational(1);

    // Scale each row to integers; det picks up the product of the scales.
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
    mpz_class scale = 1;
    for (int i = 0; i < n; ++i) {
        mpz_class l = 1;
        for (int j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), mat.at(i, j).den().get_mpz_t());
        for (int j = 0; j < n; ++j) {
            mpz_class q = l / mat.at(i, j).den();
            m[i][j] = mat.at(i, j).num() * q;
        }
        scale *= l;
    }
    return Rational(bareiss_det(std::move(m)), scale);
}

}  // namespace inc4
