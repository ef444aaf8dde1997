#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "inc4/constructions.hpp"
#include "inc4/geom.hpp"
#include "test_util.hpp"

using namespace inc4;
using testutil::rand_int;
using testutil::rand_rational;
using testutil::rand_vec4;

namespace {

Vec4 pt(long a, long b, long c, long d) {
    return {Rational(a), Rational(b), Rational(c), Rational(d)};
}

Line4 axis_line(int axis) {
    Vec4 dir{Rational(0), Rational(0), Rational(0), Rational(0)};
    dir[axis] = Rational(1);
    return canonicalize_line(pt(0, 0, 0, 0), dir);
}

}  // namespace

TEST_CASE("canonicalize_line examples") {
    Line4 a = canonicalize_line(pt(1, 1, 1, 1), pt(2, 2, 2, 2));
    CHECK(a.dir == pt(1, 1, 1, 1));
    CHECK(a.base == pt(0, 0, 0, 0));

    Line4 b = canonicalize_line(pt(0, 5, 0, 0), pt(0, -3, 0, 0));
    CHECK(b.dir == pt(0, 1, 0, 0));
    CHECK(b.base == pt(0, 0, 0, 0));

    Line4 c = canonicalize_line(pt(1, 2, 3, 4), pt(1, 1, 0, 0));
    CHECK(c.dir == pt(1, 1, 0, 0));
    CHECK(c.base == pt(0, 1, 3, 4));

    CHECK_THROWS_AS(canonicalize_line(pt(0, 0, 0, 0), pt(0, 0, 0, 0)), std::invalid_argument);

    // fractional directions scale to primitive integers
    Line4 d = canonicalize_line(pt(0, 0, 0, 0),
                                Vec4{Rational(1, 2), Rational(-1, 3), Rational(0), Rational(0)});
    CHECK(d.dir == Vec4{Rational(3), Rational(-2), Rational(0), Rational(0)});
}

TEST_CASE("canonical form is constant on line representatives") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        Vec4 base = rand_vec4(rng);
        Vec4 dir = rand_vec4(rng);
        if (is_zero(dir)) dir[2] = Rational(1);
        Line4 l = canonicalize_line(base, dir);
        // reparametrize: base' = base + q dir, dir' = r dir
        Rational q = rand_rational(rng, 9, 7);
        Rational r = rand_rational(rng, 9, 7);
        if (r.is_zero()) r = Rational(-5, 3);
        Line4 l2 = canonicalize_line(base + q * dir, r * dir);
        CHECK(l == l2);
        CHECK(l.hash() == l2.hash());
        // idempotence
        Line4 l3 = canonicalize_line(l.base, l.dir);
        CHECK(l == l3);
        CHECK(point_on_line(base, l));
    }
}

TEST_CASE("intersect_lines examples") {
    Line4 xaxis = axis_line(0), yaxis = axis_line(1);
    auto r = intersect_lines(xaxis, yaxis);
    CHECK(r.kind == LineRelation::Meet);
    CHECK(r.point == pt(0, 0, 0, 0));

    Line4 shifted = canonicalize_line(pt(0, 1, 0, 0), pt(1, 0, 0, 0));
    CHECK(intersect_lines(xaxis, shifted).kind == LineRelation::Parallel);
    CHECK(intersect_lines(xaxis, xaxis).kind == LineRelation::Identical);

    Line4 skew = canonicalize_line(pt(0, 0, 1, 0), pt(0, 1, 0, 1));
    CHECK(intersect_lines(xaxis, skew).kind == LineRelation::Skew);
}

TEST_CASE("intersection point lies on both lines") {
    std::mt19937_64 rng(77);
    int met = 0;
    for (int trial = 0; trial < 300; ++trial) {
        Vec4 d1 = rand_vec4(rng, 3, 2), d2 = rand_vec4(rng, 3, 2);
        if (is_zero(d1)) d1[0] = Rational(1);
        if (is_zero(d2)) d2[1] = Rational(1);
        Line4 a = canonicalize_line(rand_vec4(rng, 3, 2), d1);
        // generic 4-space lines are skew, so route half through a shared point
        Vec4 b_base = (trial % 2 == 0) ? a.at(rand_rational(rng, 3, 2)) : rand_vec4(rng, 3, 2);
        Line4 b = canonicalize_line(b_base, d2);
        auto r = intersect_lines(a, b);
        if (r.kind == LineRelation::Meet) {
            ++met;
            CHECK(point_on_line(r.point, a));
            CHECK(point_on_line(r.point, b));
        }
        CHECK(intersect_lines(b, a).kind == r.kind);
    }
    CHECK(met > 0);
}

TEST_CASE("affine spans and containment") {
    Line4 xaxis = axis_line(0), yaxis = axis_line(1), zaxis = axis_line(2), waxis = axis_line(3);

    auto single = affine_span({xaxis});
    REQUIRE(single.has_value());
    CHECK(single->dim == 1);

    auto xy = affine_span({xaxis, yaxis});
    REQUIRE(xy.has_value());
    CHECK(xy->dim == 2);
    CHECK(flat_contains_line(*xy, xaxis));
    CHECK(!flat_contains_line(*xy, zaxis));

    CHECK(!affine_span({xaxis, yaxis, zaxis, waxis}).has_value());  // spans everything

    // hyperplane x = 1 contains base (1,0,0,0) dir (0,1,1,1)
    auto hp = affine_span_points({pt(1, 0, 0, 0), pt(1, 1, 0, 0), pt(1, 0, 1, 0), pt(1, 0, 0, 1)});
    REQUIRE(hp.has_value());
    CHECK(hp->dim == 3);
    CHECK(flat_contains_line(*hp, canonicalize_line(pt(1, 0, 0, 0), pt(0, 1, 1, 1))));
}

TEST_CASE("affine span canonical form is representation independent") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Point4> pts;
        for (int i = 0; i < 4; ++i) pts.push_back(rand_vec4(rng, 4, 3));
        auto f = affine_span_points(pts);
        std::shuffle(pts.begin(), pts.end(), rng);
        auto g = affine_span_points(pts);
        CHECK(f.has_value() == g.has_value());
        if (f && g) {
            CHECK(*f == *g);
            for (const auto& p : pts) CHECK(flat_contains_point(*f, p));
        }
    }
}

TEST_CASE("quadric contains line") {
    // x w - y z: coeffs over [1,x,y,z,w,x2,xy,xz,xw,y2,yz,yw,z2,zw,w2]
    std::array<Rational, 15> c{};
    c[8] = Rational(1);    // xw
    c[10] = Rational(-1);  // yz
    Quadric4 q(c);

    CHECK(quadric_contains_line(q, canonicalize_line(pt(0, 0, 0, 0), pt(1, 1, 1, 1))));
    CHECK(quadric_contains_line(q, axis_line(0)));

    std::array<Rational, 15> sp{};
    sp[0] = Rational(-1);
    sp[5] = sp[9] = sp[12] = sp[14] = Rational(1);  // sphere
    Quadric4 sphere(sp);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        Vec4 d = rand_vec4(rng, 3, 2);
        if (is_zero(d)) d[0] = Rational(1);
        CHECK(!quadric_contains_line(sphere, canonicalize_line(rand_vec4(rng, 3, 2), d)));
    }
}

TEST_CASE("quadric containment agrees with restriction of its polynomial") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 60; ++trial) {
        std::array<Rational, 15> c{};
        for (int i = 0; i < 15; ++i) c[i] = Rational(rand_int(rng, -3, 3));
        bool deg2 = false;
        for (int i = 5; i < 15; ++i) deg2 |= !c[i].is_zero();
        if (!deg2) c[5 + rand_int(rng, 0, 9)] = Rational(1);
        Quadric4 q(c);
        Vec4 d = rand_vec4(rng, 3, 2);
        if (is_zero(d)) d[3] = Rational(1);
        Line4 l = canonicalize_line(rand_vec4(rng, 3, 2), d);
        bool direct = quadric_contains_line(q, l);
        bool via_restriction = q.to_multipoly().restrict_to_line(l.base, l.dir).is_zero();
        CHECK(direct == via_restriction);
    }
}

TEST_CASE("quadric invariants") {
    std::array<Rational, 15> c{};
    CHECK_THROWS_AS(static_cast<void>(Quadric4(c)), std::invalid_argument);  // all zero
    c[1] = Rational(1);
    // hyperplane: no degree-2 part
    CHECK_THROWS_AS(static_cast<void>(Quadric4(c)), std::invalid_argument);
    c[5] = Rational(-7);
    Quadric4 q(c);
    CHECK(q.coeffs[1] == Rational(1) / Rational(-7) * Rational(-7));  // first nonzero scaled to 1
    CHECK(q.coeffs[1] == Rational(1));
}

TEST_CASE("config rejects duplicates") {
    CHECK_THROWS_AS(Config::make("dup", {pt(0, 0, 0, 0), pt(0, 0, 0, 0)}, {}),
                    std::invalid_argument);
    Line4 l = axis_line(0);
    CHECK_THROWS_AS(Config::make("dup", {}, {l, canonicalize_line(pt(5, 0, 0, 0), pt(2, 0, 0, 0))}),
                    std::invalid_argument);
}

TEST_CASE("incidence_count examples") {
    // single point on two axes
    Config c = Config::make("axes", {pt(0, 0, 0, 0)}, {axis_line(0), axis_line(1)});
    auto r = incidence_count(c);
    CHECK(r.total == 2);
    CHECK(r.max_per_point() == 2);
    CHECK(r.max_per_line() == 1);

    auto [cfg, pred] = elekes4d(2, 1);
    auto counts = incidence_count(cfg);
    CHECK(counts.total == 16);
    CHECK(pred.I == 16);
    for (auto v : counts.per_line) CHECK(v == 2);

    auto [cfg32, pred32] = elekes4d(3, 2);
    CHECK(pred32.m == 5184);
    CHECK(pred32.n == 1728);
    CHECK(incidence_count(cfg32).total == 5184);
}

TEST_CASE("grouped incidence path equals the double loop oracle") {
    std::mt19937_64 rng(17);
    // random configs
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Point4> pts;
        std::vector<Line4> lines;
        std::unordered_set<Line4> used;
        for (int i = 0; i < 40; ++i) {
            Vec4 p = {Rational(rand_int(rng, 0, 4)), Rational(rand_int(rng, 0, 4)),
                      Rational(rand_int(rng, 0, 4)), Rational(rand_int(rng, 0, 4))};
            pts.push_back(p);
        }
        std::sort(pts.begin(), pts.end(), [](const Vec4& a, const Vec4& b) {
            for (int i = 0; i < 4; ++i) {
                if (a[i] < b[i]) return true;
                if (b[i] < a[i]) return false;
            }
            return false;
        });
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        while (lines.size() < 25) {
            Vec4 d = {Rational(rand_int(rng, 0, 2)), Rational(rand_int(rng, 0, 2)),
                      Rational(rand_int(rng, 0, 2)), Rational(rand_int(rng, 0, 2))};
            if (is_zero(d)) continue;
            Line4 l = canonicalize_line(pts[rand_int(rng, 0, static_cast<long>(pts.size()) - 1)], d);
            if (used.insert(l).second) lines.push_back(l);
        }
        Config cfg = Config::make("rand", pts, lines);
        auto fast = incidence_count(cfg);
        auto slow = incidence_count_bruteforce(cfg);
        CHECK(fast.total == slow.total);
        CHECK(fast.per_line == slow.per_line);
        CHECK(fast.per_point == slow.per_point);
    }
    // structured configs
    for (auto [k, l] : {std::pair<long, long>{2, 1}, {1, 2}, {2, 2}}) {
        auto [cfg, pred] = elekes4d(k, l);
        auto fast = incidence_count(cfg);
        auto slow = incidence_count_bruteforce(cfg);
        CHECK(fast.total == slow.total);
        CHECK(fast.per_line == slow.per_line);
    }
}

TEST_CASE("rich_points examples") {
    auto [cfg21, pred21] = elekes4d(2, 1);
    CHECK(rich_points(cfg21.lines, 2).count == 0);  // all lines parallel

    // 2x2 grid in a 2-flat
    std::vector<Line4> grid;
    grid.push_back(canonicalize_line(pt(0, 0, 0, 0), pt(1, 0, 0, 0)));
    grid.push_back(canonicalize_line(pt(0, 1, 0, 0), pt(1, 0, 0, 0)));
    grid.push_back(canonicalize_line(pt(0, 0, 0, 0), pt(0, 1, 0, 0)));
    grid.push_back(canonicalize_line(pt(1, 0, 0, 0), pt(0, 1, 0, 0)));
    auto g = rich_points(grid, 2);
    CHECK(g.count == 4);

    std::vector<Line4> concurrent = {axis_line(0), axis_line(1), axis_line(2)};
    auto c = rich_points(concurrent, 3);
    CHECK(c.count == 1);
    REQUIRE(c.witnesses.size() == 1);
    CHECK(c.witnesses[0].point == pt(0, 0, 0, 0));
    CHECK(c.witnesses[0].multiplicity == 3);

    CHECK_THROWS_AS(rich_points(grid, 1), std::invalid_argument);
}

TEST_CASE("rich points verified by membership and by brute force count") {
    std::mt19937_64 rng(19);
    std::vector<Line4> lines;
    std::unordered_set<Line4> used;
    while (lines.size() < 30) {
        Vec4 d = {Rational(rand_int(rng, -1, 1)), Rational(rand_int(rng, -1, 1)),
                  Rational(rand_int(rng, -1, 1)), Rational(rand_int(rng, -1, 1))};
        if (is_zero(d)) continue;
        Vec4 b = {Rational(rand_int(rng, 0, 2)), Rational(rand_int(rng, 0, 2)),
                  Rational(rand_int(rng, 0, 2)), Rational(rand_int(rng, 0, 2))};
        Line4 l = canonicalize_line(b, d);
        if (used.insert(l).second) lines.push_back(l);
    }
    auto r = rich_points(lines, 2);
    for (const auto& w : r.witnesses) {
        int on = 0;
        for (const auto& l : lines)
            if (point_on_line(w.point, l)) ++on;
        CHECK(on == w.multiplicity);
        CHECK(on >= 2);
    }
    // every pairwise intersection point with >= k lines is reported
    long long expected = 0;
    std::unordered_set<std::size_t> seen;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            auto x = intersect_lines(lines[i], lines[j]);
            if (x.kind != LineRelation::Meet) continue;
            if (!seen.insert(hash_vec4(x.point)).second) continue;
            int on = 0;
            for (const auto& l : lines)
                if (point_on_line(x.point, l)) ++on;
            if (on >= 2) ++expected;
        }
    CHECK(r.count == expected);
}
