#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "inc4/algcrit.hpp"
#include "inc4/linalg.hpp"
#include "inc4/geom.hpp"
#include "test_util.hpp"

using namespace inc4;
using testutil::rand_int;
using testutil::rand_poly;

namespace {

MultiPoly P(const std::string& s) { return MultiPoly::parse(s); }

Vec4 pt(long a, long b, long c, long d) {
    return {Rational(a), Rational(b), Rational(c), Rational(d)};
}

Line4 mkline(Vec4 base, Vec4 dir) { return canonicalize_line(base, dir); }

// Random polynomial of exact degree deg passing through p.
MultiPoly poly_through(std::mt19937_64& rng, int deg, const Vec4& p, bool want_nonsingular = true) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        MultiPoly f = rand_poly(rng, deg, 10);
        Expo top{};
        top[static_cast<int>(rng() % 4)] = static_cast<std::uint16_t>(deg);
        f.add_term(top, Rational(1 + static_cast<long>(rng() % 3)));
        f = f - MultiPoly::constant(f.eval(p));
        if (f.total_degree() != deg) continue;
        if (want_nonsingular && is_singular(f, p)) continue;
        return f;
    }
    throw std::logic_error("poly_through: no sample found");
}

// Quartic containing a known line: f = g1 l1 + g2 l2 + g3 l3 with the l_i a
// basis of linear forms vanishing on the line and g_i random cubics.
MultiPoly quartic_with_line(std::mt19937_64& rng, const Line4& line) {
    RatMatrix m(2, 5);
    m.at(0, 0) = Rational(1);
    m.at(1, 0) = Rational(0);
    for (int i = 0; i < 4; ++i) {
        m.at(0, i + 1) = line.base[i];
        m.at(1, i + 1) = line.dir[i];
    }
    auto kernel = m.kernel_basis();
    REQUIRE(kernel.size() == 3);
    MultiPoly f;
    for (const auto& v : kernel) {
        MultiPoly lin = MultiPoly::constant(v[0]);
        for (int i = 0; i < 4; ++i) lin = lin + MultiPoly::variable(i).scaled(v[i + 1]);
        f = f + rand_poly(rng, 3, 6) * lin;
    }
    return f;
}

}  // namespace

TEST_CASE("is_singular examples") {
    CHECK(is_singular(P("x^2 + y^2 + z^2 + w^2"), pt(0, 0, 0, 0)));
    CHECK(!is_singular(P("x"), pt(0, 0, 0, 0)));
    CHECK(is_singular(P("x w - y z"), pt(0, 0, 0, 0)));
    CHECK_THROWS_AS(is_singular(P("x"), pt(1, 0, 0, 0)), std::invalid_argument);
}

TEST_CASE("singular_count_on_line examples") {
    auto one = singular_count_on_line(P("x w - y z"), mkline(pt(0, 0, 0, 0), pt(1, 0, 0, 0)));
    CHECK(!one.singular_line);
    CHECK(one.count == 1);  // only the cone apex

    auto sing = singular_count_on_line(P("x y"), mkline(pt(0, 0, 0, 0), pt(0, 0, 1, 0)));
    CHECK(sing.singular_line);

    auto none = singular_count_on_line(P("x"), mkline(pt(0, 0, 0, 0), pt(0, 1, 0, 0)));
    CHECK(!none.singular_line);
    CHECK(none.count == 0);

    CHECK_THROWS_AS(
        singular_count_on_line(P("x - 1"), mkline(pt(0, 0, 0, 0), pt(0, 1, 0, 0))),
        std::invalid_argument);
}

TEST_CASE("osculating_directions: hyperplane and quadric are infinitely ruled") {
    auto hyper = osculating_directions(P("x + y + z + w"), pt(1, -1, 1, -1));
    CHECK(hyper.infinite);

    auto quad = osculating_directions(P("x w - y z"), pt(1, 1, 1, 1));
    CHECK(quad.infinite);  // F_3 vanishes identically for a quadric
    CHECK(!quad.directions.empty());
    for (const auto& d : quad.directions) {
        CHECK(d.system_residual < 1e-8);
        CHECK(d.contained);  // order-2 osculation on a quadric means containment
    }
}

TEST_CASE("osculating_directions: cubics are ruled through every surface point") {
    std::mt19937_64 rng(614);
    int checked = 0;
    for (int trial = 0; trial < 8; ++trial) {
        Vec4 p = {Rational(rand_int(rng, -2, 2)), Rational(rand_int(rng, -2, 2)),
                  Rational(rand_int(rng, -2, 2)), Rational(rand_int(rng, -2, 2))};
        MultiPoly f = poly_through(rng, 3, p);
        auto rep = osculating_directions(f, p);
        if (rep.infinite) continue;  // degenerate sample; the generic case is finite
        CHECK(rep.directions.size() <= 6);
        CHECK(!rep.directions.empty());
        int contained = 0;
        for (const auto& d : rep.directions) {
            // order-3 osculation to a cubic is containment
            CHECK(d.line_residual <= 1e-8);
            if (d.contained) ++contained;
        }
        CHECK(contained >= 1);
        ++checked;
    }
    CHECK(checked >= 5);
}

TEST_CASE("flecnode examples: Fermat-type quartic") {
    // 30^4 + 120^4 + 272^4 + 315^4 = 353^4 gives a rational surface point
    // with fully generic coordinates.
    MultiPoly fermat = P("x^4 + y^4 + z^4 + w^4 - 15527402881");
    Vec4 generic = pt(30, 120, 272, 315);
    auto val = flecnode_eval(fermat, generic);
    CHECK(!val.zero_forms);
    CHECK(!val.value.is_zero());
    // cross-check: the order-3 system at this point is finite
    CHECK(!u_resultant_identically_zero(fermat, generic).identically_zero);

    // At the axis point the forms collapse to powers of v_0 and the system
    // picks up a curve of complex solutions, so the resultant vanishes.
    Vec4 axis = pt(353, 0, 0, 0);
    auto val2 = flecnode_eval(fermat, axis);
    CHECK(!val2.zero_forms);
    CHECK(val2.value.is_zero());
    CHECK(u_resultant_identically_zero(fermat, axis).identically_zero);

    // degree < 4 has identically-zero forms
    CHECK(flecnode_eval(P("x w - y z"), pt(0, 0, 0, 0)).zero_forms);
}

TEST_CASE("flecnode vanishes along a contained line") {
    std::mt19937_64 rng(99);
    Line4 line = mkline(pt(0, 1, 2, 3), pt(1, 1, 0, 2));
    MultiPoly f = quartic_with_line(rng, line);
    REQUIRE(f.total_degree() == 4);
    REQUIRE(f.restrict_to_line(line.base, line.dir).is_zero());
    for (long t : {0L, 1L, -1L}) {
        Vec4 p = line.at(Rational(t));
        auto val = flecnode_eval(f, p);
        CHECK(!val.zero_forms);
        CHECK(val.value.is_zero());
    }
}

TEST_CASE("u_resultant_eval examples") {
    std::mt19937_64 rng(31);
    Vec4 p = pt(1, 1, 1, 1);
    MultiPoly cubic = poly_through(rng, 3, p);

    // u = 0 collapses the linear form
    CHECK(u_resultant_eval(cubic, p, pt(0, 0, 0, 0)).is_zero());

    // generic u is nonzero when the direction count is finite
    auto rep = osculating_directions(cubic, p);
    if (!rep.infinite) {
        CHECK(!u_resultant_eval(cubic, p, pt(3, 1, 4, 1)).is_zero());
    }

    // degree < 3 leaves F_3 identically zero
    CHECK_THROWS_AS(u_resultant_eval(P("x w - y z"), pt(0, 0, 0, 0), pt(1, 1, 1, 1)),
                    zero_form_error);
}

TEST_CASE("u_resultant vanishes identically on a surface with a contained 2-flat") {
    std::mt19937_64 rng(56);
    // f = x A + y B vanishes on the 2-flat {x = 0, y = 0}
    MultiPoly f = MultiPoly::variable(0) * rand_poly(rng, 2, 5) +
                  MultiPoly::variable(1) * rand_poly(rng, 2, 5);
    Vec4 p = pt(0, 0, 2, 5);
    REQUIRE(f.eval(p).is_zero());
    if (f.total_degree() >= 3 && !is_singular(f, p)) {
        auto rep = u_resultant_identically_zero(f, p);
        CHECK(rep.identically_zero);
        CHECK(rep.failure_bound < 1e-15);
        for (int t = 0; t < 5; ++t) {
            Vec4 u = {Rational(rand_int(rng, -9, 9)), Rational(rand_int(rng, -9, 9)),
                      Rational(rand_int(rng, -9, 9)), Rational(rand_int(rng, -9, 9))};
            if (is_zero(u)) continue;
            CHECK(u_resultant_eval(f, p, u).is_zero());
        }
        CHECK(u_resultant_identically_zero_exact(f, p));
    }
}

TEST_CASE("u-resultant dichotomy agrees with the solver across degrees") {
    std::mt19937_64 rng(271828);
    int agree = 0;
    for (int trial = 0; trial < 16; ++trial) {
        int deg = 1 + trial % 4;
        Vec4 p = {Rational(rand_int(rng, -2, 2)), Rational(rand_int(rng, -2, 2)),
                  Rational(rand_int(rng, -2, 2)), Rational(rand_int(rng, -2, 2))};
        MultiPoly f = poly_through(rng, deg, p);
        auto F = osculation_forms(f, p);
        bool zero_forms = F[0].is_zero() || F[1].is_zero() || F[2].is_zero();
        bool ur = zero_forms ? true : u_resultant_identically_zero(f, p).identically_zero;
        auto rep = osculating_directions(f, p);
        CHECK(rep.infinite == ur);
        ++agree;
    }
    CHECK(agree == 16);
}

TEST_CASE("exact u-resultant interpolation agrees with sampling") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 3; ++trial) {
        Vec4 p = pt(1, rand_int(rng, -2, 2), rand_int(rng, -2, 2), 1);
        MultiPoly f = poly_through(rng, 3, p);
        bool sampled = u_resultant_identically_zero(f, p).identically_zero;
        bool exact = u_resultant_identically_zero_exact(f, p);
        CHECK(sampled == exact);
    }
}

TEST_CASE("flat_polynomials examples") {
    auto zero = flat_polynomials(P("x + y + z + w"));
    for (const auto& pi : zero) CHECK(pi.is_zero());

    auto cubic = flat_polynomials(P("w - x^3"));
    for (const auto& pi : cubic) {
        // the only surviving entries are multiples of x
        CHECK(pi.eval(pt(0, 5, 7, 0)).is_zero());
    }
    bool some_nonzero_at_1 = false;
    for (const auto& pi : cubic)
        if (!pi.eval(pt(1, 0, 0, 1)).is_zero()) some_nonzero_at_1 = true;
    CHECK(some_nonzero_at_1);

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        MultiPoly f = rand_poly(rng, 4, 8);
        if (f.total_degree() != 4) continue;
        for (const auto& pi : flat_polynomials(f)) CHECK(pi.total_degree() <= 8);  // 3 deg - 4
    }
}

TEST_CASE("flatness_certificate examples") {
    auto flat = flatness_certificate(P("w - x^3"), pt(0, 5, 7, 0));
    CHECK(!flat.singular);
    CHECK(!flat.axis_degenerate);
    CHECK(flat.is_flat);
    CHECK(flat.sff_zero);

    auto bent = flatness_certificate(P("w - x^3"), pt(1, 0, 0, 1));
    CHECK(!bent.is_flat);
    CHECK(!bent.sff_zero);

    auto sphere = flatness_certificate(P("x^2 + y^2 + z^2 + w^2 - 1"), pt(1, 0, 0, 0));
    CHECK(sphere.axis_degenerate);
    CHECK(!sphere.is_flat);
    CHECK(!sphere.sff_zero);

    CHECK_THROWS_AS(flatness_certificate(P("x"), pt(1, 0, 0, 0)), std::invalid_argument);
}

TEST_CASE("flatness equivalence: nine vanishing values iff vanishing restricted Hessian") {
    std::mt19937_64 rng(424242);
    int flat_seen = 0, bent_seen = 0, checked = 0;
    while (checked < 50) {
        Vec4 p = {Rational(rand_int(rng, -2, 2)), Rational(rand_int(rng, -2, 2)),
                  Rational(rand_int(rng, -2, 2)), Rational(rand_int(rng, -2, 2))};
        MultiPoly f;
        if (checked % 2 == 0) {
            f = poly_through(rng, 2 + static_cast<int>(rng() % 4), p);
        } else {
            // hyperplane in disguise: L * g is flat everywhere on Z(L) \ Z(g)
            MultiPoly lin = rand_poly(rng, 1, 4);
            lin = lin - MultiPoly::constant(lin.eval(p));
            if (lin.total_degree() != 1) continue;
            MultiPoly g = rand_poly(rng, 1 + static_cast<int>(rng() % 2), 4);
            if (g.eval(p).is_zero()) continue;
            f = lin * g;
        }
        if (f.eval(p) != Rational(0)) continue;
        FlatnessCertificate cert = flatness_certificate(f, p);
        if (cert.singular || cert.axis_degenerate) continue;
        bool all_pi_zero = true;
        for (const auto& v : cert.pi_values)
            if (!v.is_zero()) all_pi_zero = false;
        CHECK(all_pi_zero == cert.sff_zero);
        CHECK(cert.is_flat == cert.sff_zero);
        cert.sff_zero ? ++flat_seen : ++bent_seen;
        ++checked;
    }
    CHECK(flat_seen >= 10);
    CHECK(bent_seen >= 10);
}

TEST_CASE("is_flat_line examples") {
    // the y-axis on w = x^3 is flat
    auto flat = is_flat_line(P("w - x^3"), mkline(pt(0, 0, 0, 0), pt(0, 1, 0, 0)));
    CHECK(!flat.singular_line);
    CHECK(flat.flat);

    // a ruling of the quadric cone is not flat even though the nine
    // restricted polynomials all vanish along it (degenerate frame)
    auto ruling = is_flat_line(P("x w - y z"), mkline(pt(0, 0, 0, 0), pt(1, 0, 0, 0)));
    CHECK(!ruling.singular_line);
    CHECK(!ruling.flat);

    auto sing = is_flat_line(P("x y"), mkline(pt(0, 0, 0, 0), pt(0, 0, 1, 0)));
    CHECK(sing.singular_line);

    CHECK_THROWS_AS(is_flat_line(P("x - 1"), mkline(pt(0, 0, 0, 0), pt(0, 1, 0, 0))),
                    std::invalid_argument);
}

TEST_CASE("flat lines have few singular points and constant tangents") {
    // every point of the flat line is flat by the certificate
    MultiPoly f = P("w - x^3");
    Line4 l = mkline(pt(0, 0, 0, 0), pt(0, 1, 0, 0));
    for (long t : {-2L, -1L, 0L, 1L, 2L}) {
        auto cert = flatness_certificate(f, l.at(Rational(t)));
        CHECK(cert.is_flat);
    }
    auto sc = singular_count_on_line(f, l);
    CHECK(!sc.singular_line);
    CHECK(sc.count <= f.total_degree() - 1);
    CHECK(tangent_constant_on_line(f, l));
}

TEST_CASE("tangent_constant_on_line examples") {
    // a shifted (non-apex) ruling of the quadric cone rotates its tangent
    Line4 shifted = mkline(pt(1, 0, 2, 0), pt(0, 1, 0, 2));
    REQUIRE(P("x w - y z").restrict_to_line(shifted.base, shifted.dir).is_zero());
    CHECK(!tangent_constant_on_line(P("x w - y z"), shifted));

    // a ruling through the cone apex has a fixed tangent hyperplane: the
    // gradient along (t,0,0,0) is (0,0,0,t), projectively constant
    Line4 apex_ruling = mkline(pt(0, 0, 0, 0), pt(1, 0, 0, 0));
    CHECK(tangent_constant_on_line(P("x w - y z"), apex_ruling));

    // any line inside a hyperplane
    CHECK(tangent_constant_on_line(P("x"), mkline(pt(0, 1, 2, 3), pt(0, 1, 1, 1))));

    // flat implies tangent-constant
    CHECK(tangent_constant_on_line(P("w - x^3"), mkline(pt(0, 0, 0, 0), pt(0, 1, 0, 0))));

    CHECK_THROWS_AS(tangent_constant_on_line(P("x y"), mkline(pt(0, 0, 0, 0), pt(0, 0, 1, 0))),
                    std::invalid_argument);
}

TEST_CASE("random rotation preserves incidence with the surface") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 10; ++trial) {
        Vec4 p = {Rational(rand_int(rng, -2, 2)), Rational(rand_int(rng, -2, 2)),
                  Rational(rand_int(rng, -2, 2)), Rational(rand_int(rng, -2, 2))};
        MultiPoly f = poly_through(rng, 3, p);
        auto [fr, pr] = random_rotation(f, p, 1000 + trial);
        CHECK(fr.eval(pr).is_zero());
        CHECK(is_singular(fr, pr) == is_singular(f, p));
        CHECK(fr.total_degree() == f.total_degree());
    }
}
