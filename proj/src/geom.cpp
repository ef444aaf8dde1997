#include "inc4/geom.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace inc4 {

namespace {

struct Vec4Hash {
    std::size_t operator()(const Vec4& v) const { return hash_vec4(v); }
};

}  // namespace

std::size_t Line4::hash() const {
    return hash_combine(hash_vec4(base), hash_vec4(dir));
}

Line4 canonicalize_line(const Point4& base, const Vec4& dir) {
    if (is_zero(dir)) throw std::invalid_argument("canonicalize_line: zero direction");

    // Scale dir to a primitive integer vector with positive leading sign.
    mpz_class lcm = 1;
    for (const auto& c : dir) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.den().get_mpz_t());
    std::array<mpz_class, 4> num;
    mpz_class g = 0;
    for (int i = 0; i < 4; ++i) {
        num[i] = dir[i].num() * (lcm / dir[i].den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num[i].get_mpz_t());
    }
    int pivot = 0;
    while (num[pivot] == 0) ++pivot;
    if (num[pivot] < 0) g = -g;

    Line4 l;
    l.pivot = pivot;
    for (int i = 0; i < 4; ++i) l.dir[i] = Rational(mpz_class(num[i] / g));

    // Slide base along the line so its pivot coordinate is zero.
    Rational t = base[pivot] / l.dir[pivot];
    l.base = base - t * l.dir;
    return l;
}

bool point_on_line(const Point4& p, const Line4& l) {
    Rational t = p[l.pivot] / l.dir[l.pivot];
    for (int i = 0; i < 4; ++i)
        if (p[i] != l.base[i] + t * l.dir[i]) return false;
    return true;
}

std::size_t AffineFlat::hash() const {
    std::size_t h = hash_combine(0xf1a7, static_cast<std::size_t>(dim));
    h = hash_combine(h, hash_vec4(base));
    for (const auto& d : dirs) h = hash_combine(h, hash_vec4(d));
    return h;
}

std::optional<AffineFlat> affine_span_points(const std::vector<Point4>& pts) {
    if (pts.empty()) throw std::invalid_argument("affine_span_points: empty input");
    // Row-reduce the difference vectors.
    std::vector<Vec4> rows;
    std::vector<int> pivots;
    auto reduce = [&](Vec4 v) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Rational& c = v[pivots[r]];
            if (!c.is_zero()) v = v - c * rows[r];
        }
        return v;
    };
    auto insert_row = [&](const Vec4& vin) {
        Vec4 v = reduce(vin);
        int p = -1;
        for (int i = 0; i < 4; ++i)
            if (!v[i].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) return;
        v = v[p].inv() * v;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Rational& c = rows[r][p];
            if (!c.is_zero()) rows[r] = rows[r] - c * v;
        }
        rows.push_back(v);
        pivots.push_back(p);
    };

    for (std::size_t i = 1; i < pts.size(); ++i) insert_row(pts[i] - pts[0]);
    if (rows.size() >= 4) return std::nullopt;

    // Canonical order by pivot, then canonical base point.
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots[a] < pivots[b]; });

    AffineFlat f;
    f.dim = static_cast<int>(rows.size());
    for (std::size_t i : order) {
        f.dirs.push_back(rows[i]);
        f.pivots.push_back(pivots[i]);
    }
    f.base = pts[0];
    for (std::size_t r = 0; r < f.dirs.size(); ++r) {
        const Rational& c = f.base[f.pivots[r]];
        if (!c.is_zero()) f.base = f.base - c * f.dirs[r];
    }
    return f;
}

std::optional<AffineFlat> affine_span(const std::vector<Line4>& lines) {
    if (lines.empty()) throw std::invalid_argument("affine_span: empty input");
    std::vector<Point4> pts;
    pts.reserve(lines.size() * 2);
    for (const auto& l : lines) {
        pts.push_back(l.base);
        pts.push_back(l.base + l.dir);
    }
    return affine_span_points(pts);
}

bool flat_contains_point(const AffineFlat& f, const Point4& p) {
    Vec4 v = p - f.base;
    for (std::size_t r = 0; r < f.dirs.size(); ++r) {
        const Rational& c = v[f.pivots[r]];
        if (!c.is_zero()) v = v - c * f.dirs[r];
    }
    return is_zero(v);
}

bool flat_contains_line(const AffineFlat& f, const Line4& l) {
    return flat_contains_point(f, l.base) && flat_contains_point(f, l.base + l.dir);
}

const std::array<Expo, 15> kQuadricMonomials = {{{0, 0, 0, 0},
                                                 {1, 0, 0, 0},
                                                 {0, 1, 0, 0},
                                                 {0, 0, 1, 0},
                                                 {0, 0, 0, 1},
                                                 {2, 0, 0, 0},
                                                 {1, 1, 0, 0},
                                                 {1, 0, 1, 0},
                                                 {1, 0, 0, 1},
                                                 {0, 2, 0, 0},
                                                 {0, 1, 1, 0},
                                                 {0, 1, 0, 1},
                                                 {0, 0, 2, 0},
                                                 {0, 0, 1, 1},
                                                 {0, 0, 0, 2}}};

Quadric4::Quadric4(const std::array<Rational, 15>& raw) : coeffs(raw) {
    bool deg2 = false;
    for (int i = 5; i < 15; ++i)
        if (!coeffs[i].is_zero()) deg2 = true;
    if (!deg2) throw std::invalid_argument("Quadric4: degree-2 part vanishes");
    for (int i = 0; i < 15; ++i) {
        if (coeffs[i].is_zero()) continue;
        Rational inv = coeffs[i].inv();
        for (int j = 0; j < 15; ++j) coeffs[j] *= inv;
        break;
    }
}

MultiPoly Quadric4::to_multipoly() const {
    MultiPoly p;
    for (int i = 0; i < 15; ++i) p.add_term(kQuadricMonomials[i], coeffs[i]);
    return p;
}

std::array<std::array<Rational, 15>, 3> quadric_line_conditions(const Line4& l) {
    std::array<std::array<Rational, 15>, 3> rows{};
    for (int j = 0; j < 15; ++j) {
        MultiPoly mono = MultiPoly::monomial(Rational(1), kQuadricMonomials[j]);
        UniPoly r = mono.restrict_to_line(l.base, l.dir);
        for (int k = 0; k <= 2; ++k)
            rows[k][j] = (k <= r.degree()) ? r[k] : Rational(0);
    }
    return rows;
}

bool quadric_contains_line(const Quadric4& q, const Line4& l) {
    // Degree <= 2 restriction; contained iff all three coefficients vanish.
    auto rows = quadric_line_conditions(l);
    for (int k = 0; k < 3; ++k) {
        Rational acc;
        for (int j = 0; j < 15; ++j) acc += rows[k][j] * q.coeffs[j];
        if (!acc.is_zero()) return false;
    }
    return true;
}

Config Config::make(std::string name, std::vector<Point4> points, std::vector<Line4> lines,
                    std::map<std::string, std::string> meta) {
    std::unordered_set<Vec4, Vec4Hash> pointset(points.begin(), points.end());
    if (pointset.size() != points.size())
        throw std::invalid_argument("Config: duplicate point in '" + name + "'");
    std::unordered_set<Line4> lineset(lines.begin(), lines.end());
    if (lineset.size() != lines.size())
        throw std::invalid_argument("Config: duplicate line in '" + name + "'");
    Config c;
    c.name = std::move(name);
    c.points = std::move(points);
    c.lines = std::move(lines);
    c.meta = std::move(meta);
    return c;
}

long long IncidenceCounts::max_per_line() const {
    long long m = 0;
    for (auto v : per_line) m = std::max(m, v);
    return m;
}

long long IncidenceCounts::max_per_point() const {
    long long m = 0;
    for (auto v : per_point) m = std::max(m, v);
    return m;
}

IncidenceCounts incidence_count_bruteforce(const Config& cfg) {
    IncidenceCounts out;
    out.per_line.assign(cfg.lines.size(), 0);
    out.per_point.assign(cfg.points.size(), 0);
    for (std::size_t i = 0; i < cfg.points.size(); ++i)
        for (std::size_t j = 0; j < cfg.lines.size(); ++j)
            if (point_on_line(cfg.points[i], cfg.lines[j])) {
                ++out.total;
                ++out.per_line[j];
                ++out.per_point[i];
            }
    return out;
}

IncidenceCounts incidence_count(const Config& cfg) {
    IncidenceCounts out;
    out.per_line.assign(cfg.lines.size(), 0);
    out.per_point.assign(cfg.points.size(), 0);

    // Group lines by direction. Within one class, a point lies on a line iff
    // the canonical base of the line through the point (same direction)
    // equals the line's base.
    std::unordered_map<Vec4, std::vector<std::size_t>, Vec4Hash> by_dir;
    for (std::size_t j = 0; j < cfg.lines.size(); ++j) by_dir[cfg.lines[j].dir].push_back(j);

    for (const auto& [dir, line_idx] : by_dir) {
        int pivot = 0;
        while (dir[pivot].is_zero()) ++pivot;
        std::unordered_map<Vec4, std::vector<std::size_t>, Vec4Hash> key_to_points;
        key_to_points.reserve(cfg.points.size() * 2);
        for (std::size_t i = 0; i < cfg.points.size(); ++i) {
            const Point4& p = cfg.points[i];
            Rational t = p[pivot] / dir[pivot];
            key_to_points[p - t * dir].push_back(i);
        }
        for (std::size_t j : line_idx) {
            auto it = key_to_points.find(cfg.lines[j].base);
            if (it == key_to_points.end()) continue;
            out.per_line[j] += static_cast<long long>(it->second.size());
            out.total += static_cast<long long>(it->second.size());
            for (std::size_t i : it->second) ++out.per_point[i];
        }
    }
    return out;
}

LineIntersection intersect_lines(const Line4& a, const Line4& b) {
    if (a == b) return {LineRelation::Identical, {}};
    if (a.dir == b.dir) return {LineRelation::Parallel, {}};

    // Solve a.base + t a.dir = b.base + u b.dir from two independent rows,
    // then verify the remaining ones.
    Vec4 rhs = b.base - a.base;
    int r0 = -1, r1 = -1;
    Rational det;
    for (int i = 0; i < 4 && r1 < 0; ++i) {
        if (r0 < 0) {
            if (!a.dir[i].is_zero() || !b.dir[i].is_zero()) r0 = i;
            continue;
        }
        det = a.dir[r0] * (-b.dir[i]) - (-b.dir[r0]) * a.dir[i];
        if (!det.is_zero()) r1 = i;
    }
    if (r1 < 0) return {LineRelation::Skew, {}};  // rank < 2 with distinct dirs cannot happen
    Rational t = (rhs[r0] * (-b.dir[r1]) - (-b.dir[r0]) * rhs[r1]) / det;
    Rational u = (a.dir[r0] * rhs[r1] - rhs[r0] * a.dir[r1]) / det;
    for (int i = 0; i < 4; ++i)
        if (a.dir[i] * t - b.dir[i] * u != rhs[i]) return {LineRelation::Skew, {}};
    return {LineRelation::Meet, a.base + t * a.dir};
}

RichPointsResult rich_points(const std::vector<Line4>& lines, int k) {
    if (k < 2) throw std::invalid_argument("rich_points: k must be >= 2");
    std::unordered_map<Vec4, std::unordered_set<std::size_t>, Vec4Hash> through;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            LineIntersection x = intersect_lines(lines[i], lines[j]);
            if (x.kind != LineRelation::Meet) continue;
            auto& s = through[x.point];
            s.insert(i);
            s.insert(j);
        }

    RichPointsResult out;
    for (const auto& [p, s] : through) {
        if (static_cast<int>(s.size()) >= k)
            out.witnesses.push_back({p, static_cast<int>(s.size())});
    }
    out.count = static_cast<long long>(out.witnesses.size());
    std::sort(out.witnesses.begin(), out.witnesses.end(), [](const RichPoint& a, const RichPoint& b) {
        for (int i = 0; i < 4; ++i) {
            if (a.point[i] < b.point[i]) return true;
            if (b.point[i] < a.point[i]) return false;
        }
        return false;
    });
    return out;
}

}  // namespace inc4
