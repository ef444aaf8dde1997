#pragma once

// Generators for the grid-based lower-bound families, with closed-form
// predictions of every count they realize.

#include <cstdint>
#include <string>
#include <utility>

#include "inc4/errors.hpp"
#include "inc4/geom.hpp"

namespace inc4 {

enum class Family { Elekes2d, Elekes3d, Elekes4d, HyperplanePacking };

std::string family_name(Family f);

struct GenLimits {
    long long max_points_times_lines = 10'000'000'000LL;
};

struct Prediction {
    Family family;
    long long k = 0, l = 0, H = 1;
    long long m = 0, n = 0, I = 0;
    long long q_claim = 0;  // claimed bound on lines per hyperplane/quadric
    long long s_claim = 0;  // claimed (safe) bound on lines per 2-flat
    // Headline ratio this family realizes and its exact target value.
    std::string ratio_kind;
    double ratio_target = 0.0;
};

// Points {1..k} x {1..2kl}^3, lines y=ax+b, z=cx+d, w=ex+f with
// 1<=a,c,e<=l and 1<=b,d,f<=kl. m = 8k^4 l^3, n = k^3 l^6, I = k^4 l^6.
std::pair<Config, Prediction> elekes4d(long k, long l, const GenLimits& lim = {});

// Embedded in w = 0: m = 4k^3 l^2, n = k^2 l^4, I = k^3 l^4.
std::pair<Config, Prediction> elekes3d(long k, long l, const GenLimits& lim = {});

// In the 2-flat z = w = 0: m = 2k^2 l, n = k l^2, I = k^2 l^2.
std::pair<Config, Prediction> elekes2d(long k, long l, const GenLimits& lim = {});

// H translated copies of elekes3d(k, l) in the hyperplanes w = 1..H.
std::pair<Config, Prediction> hyperplane_packing(long H, long k, long l,
                                                 const GenLimits& lim = {});

struct ElekesFit {
    long k = 1, l = 1;
    double error = 0.0;  // |log(m_pred/m)| + |log(n_pred/n)|
};

// Integer (k, l) whose elekes4d sizes best match the targets, over
// 1 <= k <= kmax, 1 <= l <= lmax.
ElekesFit fit_elekes4d(double target_m, double target_n, long kmax = 64, long lmax = 64);

}  // namespace inc4
