#pragma once

// Dense univariate polynomials over Rational, lowest-degree coefficient
// first. Euclidean gcd, Sturm-chain real root counting, and a floating
// companion-matrix complex solver.

#include <complex>
#include <optional>
#include <vector>

#include "inc4/rational.hpp"

namespace inc4 {

class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UniPoly zero() { return UniPoly(); }
    static UniPoly constant(const Rational& c) { return UniPoly({c}); }

    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is -1 by convention.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& operator[](std::size_t i) const { return c_[i]; }
    const Rational& leading() const { return c_.back(); }

    Rational eval(const Rational& t) const;
    UniPoly derivative() const;
    UniPoly monic() const;

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator-() const;
    bool operator==(const UniPoly& o) const { return c_ == o.c_; }

    // Remainder of *this by divisor (divisor nonzero).
    UniPoly rem(const UniPoly& divisor) const;

    std::string str(const std::string& var = "t") const;

private:
    void trim();
    std::vector<Rational> c_;
};

// Monic gcd via the Euclidean algorithm; throws if both inputs are zero.
UniPoly uni_gcd(const UniPoly& a, const UniPoly& b);

// p with repeated roots removed: p / gcd(p, p').
UniPoly square_free_part(const UniPoly& p);

struct Interval {
    Rational lo, hi;  // open interval (lo, hi)
};

// Exact count of distinct real roots (in the open interval if given),
// computed on the square-free part. Throws std::invalid_argument on the
// zero polynomial: "identically zero" is never a count.
int sturm_distinct_real_roots(const UniPoly& p, const std::optional<Interval>& itv = std::nullopt);

struct ComplexRoots {
    std::vector<std::complex<double>> roots;
    double max_residual = 0.0;  // max |p(root)| / scale over returned roots
    bool converged = true;
};

// All complex roots via companion-matrix eigenvalues plus Newton polish.
// Residuals are measured against the coefficient magnitude scale.
ComplexRoots complex_roots(const UniPoly& p, double tol = 1e-10);

std::complex<double> eval_complex(const UniPoly& p, std::complex<double> z);

}  // namespace inc4
