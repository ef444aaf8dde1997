#pragma once

// Sparse multivariate polynomials over Rational in the four variables
// x, y, z, w (exponent-map representation, graded-lex term order).
// Includes line restriction and the osculation forms F_1..F_4.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "inc4/rational.hpp"
#include "inc4/unipoly.hpp"

namespace inc4 {

using Expo = std::array<std::uint16_t, 4>;

inline int expo_degree(const Expo& e) { return e[0] + e[1] + e[2] + e[3]; }

// Graded lexicographic: first by total degree, then lex with x > y > z > w.
struct GradedLexLess {
    bool operator()(const Expo& a, const Expo& b) const {
        int da = expo_degree(a), db = expo_degree(b);
        if (da != db) return da < db;
        for (int i = 0; i < 4; ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

class MultiPoly {
public:
    using TermMap = std::map<Expo, Rational, GradedLexLess>;

    MultiPoly() = default;
    static MultiPoly zero() { return MultiPoly(); }
    static MultiPoly constant(const Rational& c);
    // Monomial c * x^e0 y^e1 z^e2 w^e3.
    static MultiPoly monomial(const Rational& c, const Expo& e);
    static MultiPoly variable(int axis);  // 0..3 -> x,y,z,w

    bool is_zero() const { return terms_.empty(); }
    int total_degree() const;  // -1 for the zero polynomial
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    // True when every term has total degree exactly d (or the poly is zero).
    bool is_homogeneous(int d) const;

    void add_term(const Expo& e, const Rational& c);

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly scaled(const Rational& c) const;
    bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

    Rational eval(const Vec4& p) const;

    // Exact formal derivative; axis in 0..3 (throws otherwise).
    MultiPoly derivative(int axis) const;

    // Coefficients of t -> f(base + t*dir); throws on zero dir.
    UniPoly restrict_to_line(const Vec4& base, const Vec4& dir) const;

    // f(subs[0], subs[1], subs[2], subs[3]).
    MultiPoly substitute(const std::array<MultiPoly, 4>& subs) const;

    std::size_t hash() const;

    // Text form "c * x^a y^b z^c w^d + ...", rationals as "p/q".
    std::string str(const std::array<std::string, 4>& vars = {"x", "y", "z", "w"}) const;
    static MultiPoly parse(const std::string& text);

private:
    TermMap terms_;
};

// Directional-derivative forms F_i(p; v) = grad_v^i f(p) for i = 1..4,
// homogeneous of degree i in v (identically zero allowed when deg f < i).
// Returned polynomials live in v_0..v_3 mapped onto the four slots.
std::array<MultiPoly, 4> osculation_forms(const MultiPoly& f, const Vec4& p);

// grad f as four polynomials.
std::array<MultiPoly, 4> gradient(const MultiPoly& f);

// All exponent vectors in 4 variables with total degree exactly d.
std::vector<Expo> exponents_of_degree(int d);

}  // namespace inc4
