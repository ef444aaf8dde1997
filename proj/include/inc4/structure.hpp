#pragma once

// Structural parameters of a line set (max lines per 2-flat, hyperplane,
// quadric, with witnesses) and the incidence bound formulas they feed.

#include <optional>
#include <string>
#include <vector>

#include "inc4/errors.hpp"
#include "inc4/geom.hpp"

namespace inc4 {

struct StructureBudgets {
    long long max_pairs = 3'000'000;
    long long max_triples = 2'000'000;
    long long max_quadric_subsets = 4'000;
    // Hyperplane candidates rescanned against all lines; candidates beyond
    // this many line-tests keep only their pair/triple-derived counts.
    long long max_scan_tests = 30'000'000;
};

struct SResult {
    long long s = 0;
    AffineFlat witness;            // a 2-flat attaining s
    std::vector<int> line_index;   // lines counted in the witness
};

// Exact max over 2-flats, from the flats spanned by coplanar line pairs.
SResult compute_s(const std::vector<Line4>& lines, const StructureBudgets& b = {});

struct QHResult {
    long long q = 0;
    AffineFlat witness;  // a hyperplane attaining q
    bool exhaustive = true;
};

// Max over candidate hyperplanes: spans of skew line pairs (dim 3), spans of
// pairwise-coplanar line triples (dim 3), and hyperplanes through the
// compute_s witness. Degrades to a flagged result past the budgets.
QHResult compute_q_hyperplane(const std::vector<Line4>& lines, const StructureBudgets& b = {});

// As above but with every candidate rescanned against all lines, and the
// triple filter replaced by plain enumeration. Test oracle for small inputs.
QHResult compute_q_hyperplane_oracle(const std::vector<Line4>& lines);

struct QQResult {
    long long q = 0;
    std::optional<Quadric4> witness;
    bool exhaustive = true;
};

// Quadric candidates from kernels of the stacked per-line conditions over
// 5-line subsets (or the whole set when n <= 5). Budgeted, never silent.
QQResult compute_q_quadric(const std::vector<Line4>& lines, const StructureBudgets& b = {});

struct StructuralParams {
    SResult s;
    QHResult q_hyperplane;
    QQResult q_quadric;
    std::string notes;

    long long q() const { return std::max(q_hyperplane.q, q_quadric.q); }
};

StructuralParams compute_structural_params(const std::vector<Line4>& lines,
                                           const StructureBudgets& b = {});

struct BoundConstants {
    double c = 0.0;      // subpolynomial factor exponent
    double A = 1.0;      // linear-term constant
    double a = 1.0;      // regime threshold constant (m <= a n^{4/3})
    double c0 = 1.0;     // partition degree constant
    double cstar = 1.0;  // second-stage degree exponent constant
};

struct BoundBreakdown {
    double lead = 0;      // 2^{c sqrt(log2 m)} m^{2/5} n^{4/5}
    double linear_m = 0;  // 2^{c sqrt(log2 m)} m
    double hyper = 0;     // A m^{1/2} n^{1/2} q^{1/4}
    double planar = 0;    // A m^{2/3} n^{1/3} s^{1/3}
    double linear_n = 0;  // A n
    double total = 0;
};

BoundBreakdown bound_rhs(long long m, long long n, long long q, long long s,
                         const BoundConstants& consts = {});

struct RichBoundBreakdown {
    double joints = 0;  // 2^{(4/3) c sqrt(log2 n)} n^{4/3} / k^{5/3}
    double hyper = 0;   // A n q^{1/2} / k^2
    double planar = 0;  // A n s / k^3
    double linear = 0;  // A n / k
    double total = 0;
};

RichBoundBreakdown richpoints_bound_rhs(long long n, long long q, long long s, long long k,
                                        const BoundConstants& consts = {});

struct BoundReport {
    long long m = 0, n = 0, I = 0;
    StructuralParams params;
    BoundBreakdown rhs;
    double ratio = 0;       // I / rhs.total
    double lead_ratio = 0;  // I / (m^{2/5} n^{4/5})
    double st_ratio = 0;    // I / (m^{2/3} n^{2/3})
    double gk_ratio = 0;    // I / (m^{1/2} n^{3/4})
    bool violation = false;
};

BoundReport verify_bound(const Config& cfg, const BoundConstants& consts = {},
                         const StructureBudgets& b = {});

}  // namespace inc4
