#pragma once

// Pointwise algebraic criteria on hypersurfaces Z(f) in Q^4: singularity,
// osculating directions, flecnode and u-resultant evaluation, flatness
// certificates, flat lines, and tangent constancy along lines.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "inc4/geom.hpp"
#include "inc4/macaulay.hpp"
#include "inc4/multipoly.hpp"

namespace inc4 {

struct elimination_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// True iff grad f(p) = 0; p must lie on Z(f).
bool is_singular(const MultiPoly& f, const Point4& p);

struct SingularLineCount {
    bool singular_line = false;  // every point of the line is singular
    int count = 0;               // distinct real singular parameters otherwise
};

// Line must be fully contained in Z(f) (checked).
SingularLineCount singular_count_on_line(const MultiPoly& f, const Line4& l);

using C4 = std::array<std::complex<double>, 4>;

struct OsculationDirection {
    C4 v;                    // projective direction, max-modulus coordinate 1
    double system_residual;  // max scaled |F_i(v)|, i = 1..3
    double line_residual;    // scaled restriction residual of f along p + t v
    bool contained;          // line_residual <= tol
};

struct OsculationReport {
    bool infinite = false;
    std::vector<OsculationDirection> directions;  // <= 6 when finite; samples when infinite
    double sz_failure_bound = 0.0;  // failure bound of the randomized infinite test
};

struct OsculationOptions {
    double tol = 1e-10;          // contained-direction residual threshold
    double root_match = 1e-6;    // back-substitution residual acceptance
    std::uint64_t seed = 0x05cu;
    int trials = 40;             // u-resultant samples for the infinite test
    int max_retries = 8;         // coordinate-change retries in elimination
};

// Solves F_1 = F_2 = F_3 = 0 at p in Z(f) by resultant elimination, or
// samples the solution set with a random hyperplane slice when infinite.
OsculationReport osculating_directions(const MultiPoly& f, const Point4& p,
                                       const OsculationOptions& opts = {});

struct FlecnodeValue {
    bool zero_forms = false;  // some F_i identically zero (deg f < 4 or singular p)
    Rational value;
};

// Macaulay resultant of F_1..F_4 at p; zero iff some direction osculates to
// order four.
FlecnodeValue flecnode_eval(const MultiPoly& f, const Point4& p, const MacaulayOptions& mo = {});

// Resultant of (F_1, F_2, F_3, u.v) at p; throws zero_form_error when one of
// F_1..F_3 vanishes identically. u = 0 gives 0.
Rational u_resultant_eval(const MultiPoly& f, const Point4& p, const Vec4& u,
                          const MacaulayOptions& mo = {});

struct UResZeroReport {
    bool identically_zero = false;
    int trials_used = 0;
    double failure_bound = 0.0;  // Schwartz-Zippel bound when identically_zero
};

// Randomized test; a single nonzero evaluation certifies non-vanishing since
// the u-resultant is homogeneous of degree six in u.
UResZeroReport u_resultant_identically_zero(const MultiPoly& f, const Point4& p,
                                            std::uint64_t seed = 0x05cu, int trials = 40);

// Exact route: interpolates all 84 degree-6 coefficients of the u-resultant.
bool u_resultant_identically_zero_exact(const MultiPoly& f, const Point4& p,
                                        std::uint64_t seed = 0x05cu);

// The nine flatness polynomials: for each slice axis x, y, z (the slice
// coordinate kept as a parameter), the three quadratic-form contractions of
// the slice Hessian against the slice-gradient cross products. Total degree
// of each is at most 3 deg(f) - 4.
std::array<MultiPoly, 9> flat_polynomials(const MultiPoly& f);

struct FlatnessCertificate {
    Point4 point;
    bool singular = false;
    bool axis_degenerate = false;       // grad f parallel to the x-, y- or z-axis
    std::array<Rational, 9> pi_values;  // the nine polynomials at p
    std::array<std::array<Rational, 3>, 3> sff{};  // Hessian on a tangent basis
    bool sff_zero = false;
    bool is_flat = false;
};

FlatnessCertificate flatness_certificate(const MultiPoly& f, const Point4& p);

struct FlatLineResult {
    bool singular_line = false;
    bool flat = false;
};

// Line must be contained in Z(f). Flat iff not singular and the second
// fundamental form vanishes identically along the line (decided exactly).
FlatLineResult is_flat_line(const MultiPoly& f, const Line4& l);

// True iff the projective direction of grad f is constant over the
// non-singular points of l. Throws on a singular line.
bool tangent_constant_on_line(const MultiPoly& f, const Line4& l);

// Seeded unimodular change of coordinates: returns (f', p') with
// f'(x) = f(U x) and p' = U^{-1} p, for re-running in a generic frame.
std::pair<MultiPoly, Point4> random_rotation(const MultiPoly& f, const Point4& p,
                                             std::uint64_t seed);

// Complex-arithmetic helpers shared with the tests.
std::complex<double> eval_complex(const MultiPoly& f, const C4& v);
std::vector<std::complex<double>> restrict_complex(const MultiPoly& f, const Point4& base,
                                                   const C4& dir);
double restriction_residual(const MultiPoly& f, const Point4& base, const C4& dir);

}  // namespace inc4
