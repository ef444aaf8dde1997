#include "inc4/constructions.hpp"

#include <cmath>

namespace inc4 {

namespace {

void check_cap(long long m, long long n, const GenLimits& lim, const char* who) {
    if (m <= 0 || n <= 0 || m > lim.max_points_times_lines / std::max(1LL, n))
        throw resource_limit_error(std::string(who) + ": m*n exceeds the resource cap");
}

Line4 grid_line(long a, long b, long c, long d, long e, long f) {
    // (t, a t + b, c t + d, e t + f): already canonical (pivot 0, base[0] = 0).
    Line4 l;
    l.base = {Rational(0), Rational(b), Rational(d), Rational(f)};
    l.dir = {Rational(1), Rational(a), Rational(c), Rational(e)};
    l.pivot = 0;
    return l;
}

std::map<std::string, std::string> gen_meta(Family fam, long k, long l, long H) {
    std::map<std::string, std::string> meta;
    meta["family"] = family_name(fam);
    meta["k"] = std::to_string(k);
    meta["l"] = std::to_string(l);
    if (fam == Family::HyperplanePacking) meta["H"] = std::to_string(H);
    return meta;
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::Elekes2d: return "elekes2d";
        case Family::Elekes3d: return "elekes3d";
        case Family::Elekes4d: return "elekes4d";
        case Family::HyperplanePacking: return "hyperplane_packing";
    }
    return "?";
}

std::pair<Config, Prediction> elekes4d(long k, long l, const GenLimits& lim) {
    if (k < 1 || l < 1) throw std::invalid_argument("elekes4d: k, l must be >= 1");
    Prediction p;
    p.family = Family::Elekes4d;
    p.k = k;
    p.l = l;
    p.m = 8LL * k * k * k * k * l * l * l;
    p.n = static_cast<long long>(k) * k * k * l * l * l * l * l * l;
    p.I = static_cast<long long>(k) * p.n;
    p.q_claim = 4LL * k * l * l * l * l;
    p.s_claim = static_cast<long long>(k) * l * l;
    p.ratio_kind = "I/(m^0.4 n^0.8)";
    p.ratio_target = std::pow(8.0, -0.4);
    check_cap(p.m, p.n, lim, "elekes4d");

    std::vector<Point4> pts;
    pts.reserve(static_cast<std::size_t>(p.m));
    for (long x = 1; x <= k; ++x)
        for (long y = 1; y <= 2 * k * l; ++y)
            for (long z = 1; z <= 2 * k * l; ++z)
                for (long w = 1; w <= 2 * k * l; ++w)
                    pts.push_back({Rational(x), Rational(y), Rational(z), Rational(w)});

    std::vector<Line4> lines;
    lines.reserve(static_cast<std::size_t>(p.n));
    for (long a = 1; a <= l; ++a)
        for (long c = 1; c <= l; ++c)
            for (long e = 1; e <= l; ++e)
                for (long b = 1; b <= k * l; ++b)
                    for (long d = 1; d <= k * l; ++d)
                        for (long f = 1; f <= k * l; ++f) lines.push_back(grid_line(a, b, c, d, e, f));

    std::string name = "elekes4d_k" + std::to_string(k) + "_l" + std::to_string(l);
    return {Config::make(name, std::move(pts), std::move(lines), gen_meta(p.family, k, l, 1)), p};
}

std::pair<Config, Prediction> elekes3d(long k, long l, const GenLimits& lim) {
    if (k < 1 || l < 1) throw std::invalid_argument("elekes3d: k, l must be >= 1");
    Prediction p;
    p.family = Family::Elekes3d;
    p.k = k;
    p.l = l;
    p.m = 4LL * k * k * k * l * l;
    p.n = static_cast<long long>(k) * k * l * l * l * l;
    p.I = static_cast<long long>(k) * p.n;
    p.q_claim = p.n;  // the hyperplane w = 0 holds every line
    p.s_claim = p.n;
    p.ratio_kind = "I/(m^0.5 n^0.75)";
    p.ratio_target = 0.5;
    check_cap(p.m, p.n, lim, "elekes3d");

    std::vector<Point4> pts;
    for (long x = 1; x <= k; ++x)
        for (long y = 1; y <= 2 * k * l; ++y)
            for (long z = 1; z <= 2 * k * l; ++z)
                pts.push_back({Rational(x), Rational(y), Rational(z), Rational(0)});

    std::vector<Line4> lines;
    for (long a = 1; a <= l; ++a)
        for (long c = 1; c <= l; ++c)
            for (long b = 1; b <= k * l; ++b)
                for (long d = 1; d <= k * l; ++d) lines.push_back(grid_line(a, b, c, d, 0, 0));

    std::string name = "elekes3d_k" + std::to_string(k) + "_l" + std::to_string(l);
    return {Config::make(name, std::move(pts), std::move(lines), gen_meta(p.family, k, l, 1)), p};
}

std::pair<Config, Prediction> elekes2d(long k, long l, const GenLimits& lim) {
    if (k < 1 || l < 1) throw std::invalid_argument("elekes2d: k, l must be >= 1");
    Prediction p;
    p.family = Family::Elekes2d;
    p.k = k;
    p.l = l;
    p.m = 2LL * k * k * l;
    p.n = static_cast<long long>(k) * l * l;
    p.I = static_cast<long long>(k) * p.n;
    p.q_claim = p.n;
    p.s_claim = p.n;  // everything lives in the 2-flat z = w = 0
    p.ratio_kind = "I/(m^(2/3) n^(2/3))";
    p.ratio_target = std::pow(2.0, -2.0 / 3.0);
    check_cap(p.m, p.n, lim, "elekes2d");

    std::vector<Point4> pts;
    for (long x = 1; x <= k; ++x)
        for (long y = 1; y <= 2 * k * l; ++y)
            pts.push_back({Rational(x), Rational(y), Rational(0), Rational(0)});

    std::vector<Line4> lines;
    for (long a = 1; a <= l; ++a)
        for (long b = 1; b <= k * l; ++b) lines.push_back(grid_line(a, b, 0, 0, 0, 0));

    std::string name = "elekes2d_k" + std::to_string(k) + "_l" + std::to_string(l);
    return {Config::make(name, std::move(pts), std::move(lines), gen_meta(p.family, k, l, 1)), p};
}

std::pair<Config, Prediction> hyperplane_packing(long H, long k, long l, const GenLimits& lim) {
    if (H < 1 || k < 1 || l < 1)
        throw std::invalid_argument("hyperplane_packing: H, k, l must be >= 1");
    Prediction p;
    p.family = Family::HyperplanePacking;
    p.k = k;
    p.l = l;
    p.H = H;
    long long copy_n = static_cast<long long>(k) * k * l * l * l * l;
    p.m = 4LL * H * k * k * k * l * l;
    p.n = H * copy_n;
    p.I = static_cast<long long>(k) * p.n;
    p.q_claim = copy_n;  // q per packing hyperplane
    p.s_claim = copy_n;
    p.ratio_kind = "I/(m^0.5 n^0.5 q^0.25)";
    p.ratio_target = 0.5;
    check_cap(p.m, p.n, lim, "hyperplane_packing");

    std::vector<Point4> pts;
    std::vector<Line4> lines;
    for (long h = 1; h <= H; ++h) {
        for (long x = 1; x <= k; ++x)
            for (long y = 1; y <= 2 * k * l; ++y)
                for (long z = 1; z <= 2 * k * l; ++z)
                    pts.push_back({Rational(x), Rational(y), Rational(z), Rational(h)});
        for (long a = 1; a <= l; ++a)
            for (long c = 1; c <= l; ++c)
                for (long b = 1; b <= k * l; ++b)
                    for (long d = 1; d <= k * l; ++d) {
                        Line4 line = grid_line(a, b, c, d, 0, 0);
                        line.base[3] = Rational(h);
                        lines.push_back(line);
                    }
    }

    std::string name = "packing_H" + std::to_string(H) + "_k" + std::to_string(k) + "_l" +
                       std::to_string(l);
    return {Config::make(name, std::move(pts), std::move(lines), gen_meta(p.family, k, l, H)), p};
}

ElekesFit fit_elekes4d(double target_m, double target_n, long kmax, long lmax) {
    if (target_m < 1 || target_n < 1)
        throw std::invalid_argument("fit_elekes4d: targets must be >= 1");
    ElekesFit best;
    best.error = 1e300;
    for (long k = 1; k <= kmax; ++k)
        for (long l = 1; l <= lmax; ++l) {
            double m = 8.0 * std::pow(static_cast<double>(k), 4) * std::pow(static_cast<double>(l), 3);
            double n = std::pow(static_cast<double>(k), 3) * std::pow(static_cast<double>(l), 6);
            double err = std::abs(std::log(m / target_m)) + std::abs(std::log(n / target_n));
            if (err < best.error) best = {k, l, err};
        }
    return best;
}

}  // namespace inc4
