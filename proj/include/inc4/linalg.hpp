#pragma once

// Exact rational linear algebra: fraction-free (Bareiss) determinants,
// reduced row echelon form, kernels.

#include <vector>

#include "inc4/rational.hpp"

namespace inc4 {

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    int rows() const { return r_; }
    int cols() const { return c_; }
    Rational& at(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const Rational& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

    // In-place Gauss-Jordan to reduced row echelon form; returns pivot columns.
    std::vector<int> rref();
    int rank() const;

    // Basis of { x : A x = 0 }, one vector per free column, from the RREF.
    std::vector<std::vector<Rational>> kernel_basis() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<Rational> a_;
};

// Exact determinant by fraction-free Bareiss elimination on a row-scaled
// integer copy; throws std::invalid_argument on non-square input.
Rational fraction_free_det(const RatMatrix& m);

// Integer Bareiss determinant (used internally and by the Macaulay code).
mpz_class bareiss_det(std::vector<std::vector<mpz_class>> m);

}  // namespace inc4
