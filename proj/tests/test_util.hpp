#pragma once

// Shared helpers for the test suites: seeded generators and small oracles.

#include <random>
#include <vector>

#include "inc4/multipoly.hpp"
#include "inc4/rational.hpp"
#include "inc4/unipoly.hpp"

namespace testutil {

using inc4::Expo;
using inc4::MultiPoly;
using inc4::Rational;
using inc4::UniPoly;
using inc4::Vec4;

inline long rand_int(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

inline Rational rand_rational(std::mt19937_64& rng, long range = 6, long dmax = 4) {
    return Rational(rand_int(rng, -range, range), rand_int(rng, 1, dmax));
}

inline Vec4 rand_vec4(std::mt19937_64& rng, long range = 6, long dmax = 4) {
    return {rand_rational(rng, range, dmax), rand_rational(rng, range, dmax),
            rand_rational(rng, range, dmax), rand_rational(rng, range, dmax)};
}

inline MultiPoly rand_poly(std::mt19937_64& rng, int maxdeg, int nterms, long crange = 5) {
    MultiPoly p;
    for (int t = 0; t < nterms; ++t) {
        Expo e{};
        int budget = maxdeg;
        for (int i = 0; i < 4; ++i) {
            int d = static_cast<int>(rand_int(rng, 0, budget));
            e[i] = static_cast<std::uint16_t>(d);
            budget -= d;
        }
        long c = rand_int(rng, -crange, crange);
        if (c == 0) c = 1;
        p.add_term(e, Rational(c));
    }
    return p;
}

inline UniPoly rand_unipoly(std::mt19937_64& rng, int deg, long crange = 9) {
    std::vector<Rational> c(deg + 1);
    for (int i = 0; i <= deg; ++i) c[i] = Rational(rand_int(rng, -crange, crange));
    if (c[deg].is_zero()) c[deg] = Rational(1);
    return UniPoly(c);
}

// Independent real-root counter: sign-change scan of the square-free part on
// a rational grid over the Cauchy bound, refined until stable twice.
inline int grid_scan_distinct_roots(const UniPoly& p) {
    UniPoly f = inc4::square_free_part(p);
    if (f.degree() <= 0) return 0;
    Rational bound(1);
    for (int i = 0; i < f.degree(); ++i) {
        Rational q = (f[i] / f.leading()).abs();
        if (q > bound) bound = q;
    }
    bound += Rational(1);

    auto count_at = [&](long n) {
        Rational step = Rational(2) * bound / Rational(n);
        int count = 0, prev = 0;
        for (long i = 0; i <= n; ++i) {
            Rational x = -bound + Rational(i) * step;
            int s = f.eval(x).sign();
            if (s == 0) {
                ++count;  // exact root on the grid
                prev = 0;
                continue;
            }
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
        return count;
    };

    long n = 256;
    int last = count_at(n);
    int stable = 0;
    while (stable < 2 && n <= 16384) {
        n *= 2;
        int next = count_at(n);
        if (next == last) ++stable;
        else stable = 0;
        last = next;
    }
    return last;
}

}  // namespace testutil
