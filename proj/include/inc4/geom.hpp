#pragma once

// Exact affine geometry in Q^4: canonical lines, affine flats, quadrics,
// incidence counting and rich points.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "inc4/multipoly.hpp"
#include "inc4/rational.hpp"

namespace inc4 {

using Point4 = Vec4;

// Canonicalized affine line: dir is a primitive integer vector whose first
// nonzero entry is positive, and base is the point on the line whose pivot
// coordinate is zero. Two Line4 values are equal iff they are the same set.
struct Line4 {
    Point4 base;
    Vec4 dir;   // integer entries
    int pivot;  // first nonzero dir index

    bool operator==(const Line4& o) const { return base == o.base && dir == o.dir; }
    std::size_t hash() const;
    Point4 at(const Rational& t) const { return base + t * dir; }
};

Line4 canonicalize_line(const Point4& base, const Vec4& dir);

bool point_on_line(const Point4& p, const Line4& l);

struct AffineFlat {
    int dim = 0;             // 1, 2, or 3
    Point4 base;             // canonical: pivot coordinates zeroed
    std::vector<Vec4> dirs;  // reduced row echelon rows
    std::vector<int> pivots;

    bool operator==(const AffineFlat& o) const {
        return dim == o.dim && base == o.base && dirs == o.dirs;
    }
    std::size_t hash() const;
};

// Smallest flat through the points; nullopt when the span is all of Q^4.
std::optional<AffineFlat> affine_span_points(const std::vector<Point4>& pts);
std::optional<AffineFlat> affine_span(const std::vector<Line4>& lines);

bool flat_contains_point(const AffineFlat& f, const Point4& p);
bool flat_contains_line(const AffineFlat& f, const Line4& l);

// 15 coefficients in graded-lex order over
// [1, x, y, z, w, x2, xy, xz, xw, y2, yz, yw, z2, zw, w2],
// scaled so the first nonzero coefficient is 1. The degree-2 part must not
// vanish identically.
struct Quadric4 {
    std::array<Rational, 15> coeffs;

    explicit Quadric4(const std::array<Rational, 15>& raw);
    MultiPoly to_multipoly() const;
    bool operator==(const Quadric4& o) const { return coeffs == o.coeffs; }
};

extern const std::array<Expo, 15> kQuadricMonomials;

bool quadric_contains_line(const Quadric4& q, const Line4& l);

// The three linear conditions a line imposes on the 15 quadric coefficients
// (coefficients of t^0, t^1, t^2 of the restriction).
std::array<std::array<Rational, 15>, 3> quadric_line_conditions(const Line4& l);

struct Config {
    std::string name;
    std::vector<Point4> points;
    std::vector<Line4> lines;
    std::map<std::string, std::string> meta;

    // Validates pairwise distinctness; throws std::invalid_argument.
    static Config make(std::string name, std::vector<Point4> points, std::vector<Line4> lines,
                       std::map<std::string, std::string> meta = {});
};

struct IncidenceCounts {
    long long total = 0;
    std::vector<long long> per_line;
    std::vector<long long> per_point;

    long long max_per_line() const;
    long long max_per_point() const;
};

// Grouped-by-direction exact count (the fast path).
IncidenceCounts incidence_count(const Config& cfg);
// Double-loop membership oracle; same contract, O(m n).
IncidenceCounts incidence_count_bruteforce(const Config& cfg);

enum class LineRelation { Identical, Parallel, Skew, Meet };

struct LineIntersection {
    LineRelation kind;
    Point4 point;  // valid only when kind == Meet
};

LineIntersection intersect_lines(const Line4& a, const Line4& b);

struct RichPoint {
    Point4 point;
    int multiplicity;  // number of lines through it
};

struct RichPointsResult {
    long long count = 0;  // m_{>=k}
    std::vector<RichPoint> witnesses;
};

// Points incident to at least k lines (k >= 2), from pairwise intersections.
RichPointsResult rich_points(const std::vector<Line4>& lines, int k);

}  // namespace inc4

template <>
struct std::hash<inc4::Line4> {
    std::size_t operator()(const inc4::Line4& l) const { return l.hash(); }
};
