#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "inc4/constructions.hpp"
#include "inc4/geom.hpp"

using namespace inc4;

TEST_CASE("elekes4d closed forms and measured counts") {
    auto [c21, p21] = elekes4d(2, 1);
    CHECK(p21.m == 128);
    CHECK(p21.n == 8);
    CHECK(p21.I == 16);
    CHECK(c21.points.size() == 128);
    CHECK(c21.lines.size() == 8);
    auto counts21 = incidence_count(c21);
    CHECK(counts21.total == 16);
    for (auto v : counts21.per_line) CHECK(v == 2);

    auto [c32, p32] = elekes4d(3, 2);
    CHECK(p32.m == 5184);
    CHECK(p32.n == 1728);
    CHECK(p32.I == 5184);
    auto counts32 = incidence_count(c32);
    CHECK(counts32.total == 5184);
    for (auto v : counts32.per_line) CHECK(v == 3);

    auto [c11, p11] = elekes4d(1, 1);
    CHECK(p11.m == 8);
    CHECK(p11.n == 1);
    CHECK(p11.I == 1);
    CHECK(incidence_count(c11).total == 1);
}

TEST_CASE("elekes3d closed forms and measured counts") {
    auto [c21, p21] = elekes3d(2, 1);
    CHECK(p21.m == 32);
    CHECK(p21.n == 4);
    CHECK(p21.I == 8);
    CHECK(incidence_count(c21).total == 8);

    auto [c11, p11] = elekes3d(1, 1);
    CHECK(p11.m == 4);
    CHECK(p11.n == 1);
    CHECK(p11.I == 1);
    CHECK(incidence_count(c11).total == 1);

    // closed forms 4*8*4, 4*16, 8*16, confirmed by the counting oracle
    auto [c22, p22] = elekes3d(2, 2);
    CHECK(p22.m == 128);
    CHECK(p22.n == 64);
    CHECK(p22.I == 128);
    CHECK(incidence_count(c22).total == 128);
    CHECK(incidence_count_bruteforce(c22).total == 128);
}

TEST_CASE("elekes2d closed forms and measured counts") {
    auto [c22, p22] = elekes2d(2, 2);
    CHECK(p22.m == 16);
    CHECK(p22.n == 8);
    CHECK(p22.I == 16);
    CHECK(incidence_count(c22).total == 16);

    auto [c11, p11] = elekes2d(1, 1);
    CHECK(p11.m == 2);
    CHECK(p11.n == 1);
    CHECK(p11.I == 1);

    auto [c31, p31] = elekes2d(3, 1);
    CHECK(p31.m == 18);
    CHECK(p31.n == 3);
    CHECK(p31.I == 9);
    CHECK(incidence_count(c31).total == 9);
}

TEST_CASE("hyperplane_packing closed forms and measured counts") {
    auto [c221, p221] = hyperplane_packing(2, 2, 1);
    CHECK(p221.m == 64);
    CHECK(p221.n == 8);
    CHECK(p221.I == 16);
    CHECK(p221.q_claim == 4);
    CHECK(incidence_count(c221).total == 16);

    auto [c321, p321] = hyperplane_packing(3, 2, 1);
    CHECK(p321.m == 96);
    CHECK(p321.n == 12);
    CHECK(p321.I == 24);
    CHECK(incidence_count(c321).total == 24);

    // H = 1 reproduces elekes3d counts
    auto [c1, p1] = hyperplane_packing(1, 2, 2);
    auto [c3, p3] = elekes3d(2, 2);
    CHECK(p1.m == p3.m);
    CHECK(p1.n == p3.n);
    CHECK(p1.I == p3.I);
}

TEST_CASE("measured incidences equal predictions and per-line tallies equal k") {
    for (long k = 1; k <= 3; ++k)
        for (long l = 1; l <= 2; ++l) {
            auto check_family = [&](auto gen, const char* name) {
                auto [cfg, pred] = gen();
                auto counts = incidence_count(cfg);
                INFO(name << " k=" << k << " l=" << l);
                CHECK(counts.total == pred.I);
                CHECK(static_cast<long long>(cfg.points.size()) == pred.m);
                CHECK(static_cast<long long>(cfg.lines.size()) == pred.n);
                for (auto v : counts.per_line) CHECK(v == k);
            };
            check_family([&] { return elekes4d(k, l); }, "elekes4d");
            check_family([&] { return elekes3d(k, l); }, "elekes3d");
            check_family([&] { return elekes2d(k, l); }, "elekes2d");
            check_family([&] { return hyperplane_packing(2, k, l); }, "packing");
        }
}

TEST_CASE("leading ratio of elekes4d is 8^(-2/5) across the grid") {
    const double target = std::pow(8.0, -0.4);
    for (long k = 1; k <= 4; ++k)
        for (long l = 1; l <= 3; ++l) {
            Prediction p;
            {
                // predictions only; no need to materialize the big configs here
                p.m = 8LL * k * k * k * k * l * l * l;
                p.n = static_cast<long long>(k) * k * k * l * l * l * l * l * l;
                p.I = k * p.n;
            }
            double ratio = static_cast<double>(p.I) /
                           (std::pow(static_cast<double>(p.m), 0.4) *
                            std::pow(static_cast<double>(p.n), 0.8));
            CHECK(std::abs(ratio - target) < 1e-12);
        }
}

TEST_CASE("resource guard rejects oversized grids") {
    GenLimits tiny;
    tiny.max_points_times_lines = 1000;
    CHECK_THROWS_AS(elekes4d(3, 2, tiny), resource_limit_error);
    CHECK_THROWS_AS(elekes4d(0, 1), std::invalid_argument);
}

TEST_CASE("generated configs have distinct points and lines") {
    // Config::make would throw on duplicates; reaching here is the check.
    for (long k = 1; k <= 3; ++k)
        for (long l = 1; l <= 2; ++l) {
            CHECK_NOTHROW(elekes4d(k, l));
            CHECK_NOTHROW(elekes3d(k, l));
            CHECK_NOTHROW(elekes2d(k, l));
            CHECK_NOTHROW(hyperplane_packing(3, k, l));
        }
}

TEST_CASE("parameter fit inverts the closed forms") {
    // exact targets are recovered exactly
    auto fit = fit_elekes4d(8.0 * 16 * 8, 8.0 * 64, 8, 8);  // k=2, l=2
    CHECK(fit.k == 2);
    CHECK(fit.l == 2);
    CHECK(fit.error < 1e-12);
    auto near = fit_elekes4d(1e5, 1e4, 16, 16);
    CHECK(near.k >= 1);
    CHECK(near.l >= 1);
    CHECK(near.error < 2.0);
}
