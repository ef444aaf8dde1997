#include "inc4/partition.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

namespace inc4 {

PartitionPlan choose_degree(long long m, long long n, const BoundConstants& consts) {
    if (m < 1 || n < 1) throw std::invalid_argument("choose_degree: m, n must be >= 1");
    PartitionPlan plan;
    plan.m = m;
    plan.n = n;
    double md = static_cast<double>(m), nd = static_cast<double>(n);
    plan.small_regime = md <= consts.a * std::pow(nd, 4.0 / 3.0);
    double d = plan.small_regime ? consts.c0 * std::pow(md, 0.4) / std::pow(nd, 0.2)
                                 : consts.c0 * nd / std::sqrt(md);
    plan.D = std::max(1, static_cast<int>(std::floor(d)));
    plan.r = 1;
    for (int i = 0; i < 4; ++i) plan.r *= plan.D;
    plan.E = std::max(1, static_cast<int>(std::ceil(
                             std::exp2(consts.cstar * std::sqrt(std::log2(std::max(md, 1.0)))))));
    return plan;
}

namespace {

// Exponent vectors of degree 1..d (the lift coordinates; no constant).
std::vector<Expo> lift_monomials(int d) {
    std::vector<Expo> mons;
    for (int k = 1; k <= d; ++k) {
        auto ek = exponents_of_degree(k);
        mons.insert(mons.end(), ek.begin(), ek.end());
    }
    return mons;
}

int stage_degree(int groups) {
    for (int d = 1;; ++d) {
        long long monos = 1;  // C(d+4, 4)
        for (int i = 1; i <= 4; ++i) monos = monos * (d + i) / i;
        if (monos - 1 >= groups) return d;
    }
}

Rational eval_monomial(const Expo& e, const Point4& p) {
    Rational t(1);
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < e[i]; ++k) t *= p[i];
    return t;
}

struct StageSearch {
    const std::vector<Point4>& pts;
    std::vector<Expo> mons;
    std::vector<Rational> scale;        // per-monomial exact normalizer
    Eigen::MatrixXd lift;               // normalized lift, pts x mons
    int M;

    StageSearch(const std::vector<Point4>& p, int degree) : pts(p), mons(lift_monomials(degree)) {
        M = static_cast<int>(mons.size());
        std::vector<std::vector<Rational>> exact(pts.size(), std::vector<Rational>(M));
        scale.assign(M, Rational(1));
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (int j = 0; j < M; ++j) {
                exact[i][j] = eval_monomial(mons[j], pts[i]);
                Rational a = exact[i][j].abs();
                if (a > scale[j]) scale[j] = a;
            }
        lift.resize(static_cast<long>(pts.size()), M);
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (int j = 0; j < M; ++j)
                lift(static_cast<long>(i), j) = (exact[i][j] / scale[j]).to_double();
    }

    // Stage polynomial from a float hyperplane, coefficients rounded dyadically.
    MultiPoly to_poly(const Eigen::VectorXd& c, double c0) const {
        const double q = 2147483648.0;  // 2^31
        const long denom = 2147483648L;
        MultiPoly g;
        for (int j = 0; j < M; ++j) {
            long num = std::lround(c[j] * q);
            if (num == 0) continue;
            Rational coef = Rational(num, denom) / scale[j];
            g.add_term(mons[j], coef);
        }
        long num0 = std::lround(c0 * q);
        g.add_term({0, 0, 0, 0}, Rational(-num0, denom));
        return g;
    }
};

struct StageOutcome {
    MultiPoly poly;
    std::vector<int> sign;  // per point: -1, 0, +1
    double max_imbalance = 1.0;
    bool ok = false;
};

// One simultaneous approximate bisection of all groups.
StageOutcome search_stage(const StageSearch& S, const std::vector<std::vector<int>>& groups,
                          std::mt19937_64& rng, const PartitionOptions& opts) {
    const int M = S.M;
    const long npts = static_cast<long>(S.pts.size());
    StageOutcome best;

    auto evaluate_exact = [&](const MultiPoly& g) {
        StageOutcome out;
        out.poly = g;
        out.sign.resize(npts);
        for (long i = 0; i < npts; ++i) out.sign[i] = g.eval(S.pts[i]).sign();
        out.ok = true;
        out.max_imbalance = 0.0;
        for (const auto& grp : groups) {
            long pos = 0, neg = 0;
            for (int i : grp) {
                if (out.sign[i] > 0) ++pos;
                else if (out.sign[i] < 0) ++neg;
            }
            double frac = static_cast<double>(std::max(pos, neg)) / static_cast<double>(grp.size());
            out.max_imbalance = std::max(out.max_imbalance, frac);
            if (frac > 0.5 + opts.delta) out.ok = false;
        }
        return out;
    };

    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int restart = 0; restart < opts.restarts; ++restart) {
        Eigen::VectorXd lambda(M);
        for (int j = 0; j < M; ++j) lambda[j] = unit(rng);
        lambda.normalize();

        // anchor each group at its median point along lambda
        Eigen::VectorXd proj = S.lift * lambda;
        Eigen::MatrixXd B(static_cast<long>(groups.size()), M + 1);
        for (std::size_t g = 0; g < groups.size(); ++g) {
            std::vector<int> idx = groups[g];
            std::sort(idx.begin(), idx.end(), [&](int a, int b) { return proj[a] < proj[b]; });
            int anchor = idx[(idx.size() - 1) / 2];
            B.row(static_cast<long>(g)).head(M) = S.lift.row(anchor);
            B(static_cast<long>(g), M) = -1.0;
        }

        // minimum-norm correction of (lambda, median) satisfying the anchors
        Eigen::VectorXd v0(M + 1);
        v0.head(M) = lambda;
        {
            std::vector<double> all(proj.data(), proj.data() + npts);
            std::nth_element(all.begin(), all.begin() + npts / 2, all.end());
            v0[M] = all[npts / 2];
        }
        Eigen::MatrixXd gram = B * B.transpose();
        Eigen::VectorXd v =
            v0 - B.transpose() * gram.ldlt().solve(B * v0);

        Eigen::VectorXd c = v.head(M);
        double c0 = v[M];
        Eigen::VectorXd vals = S.lift * c;
        vals.array() -= c0;

        // repair loop: nudge the worst group's closest majority point across
        for (int it = 0; it < opts.iters; ++it) {
            int worst_group = -1, worst_excess = 0;
            for (std::size_t g = 0; g < groups.size(); ++g) {
                const auto& grp = groups[g];
                int allowed = static_cast<int>(std::floor(static_cast<double>(grp.size()) *
                                                          (0.5 + opts.delta)));
                int pos = 0, neg = 0;
                for (int i : grp) {
                    if (vals[i] > 0) ++pos;
                    else if (vals[i] < 0) ++neg;
                }
                int excess = std::max(pos, neg) - allowed;
                if (excess > worst_excess) {
                    worst_excess = excess;
                    worst_group = static_cast<int>(g);
                }
            }
            if (worst_group < 0) break;
            const auto& grp = groups[worst_group];
            int pos = 0, neg = 0;
            for (int i : grp) {
                if (vals[i] > 0) ++pos;
                else if (vals[i] < 0) ++neg;
            }
            int majority = pos >= neg ? +1 : -1;
            int target = -1;
            double closest = 1e300;
            for (int i : grp) {
                double s = vals[i] * majority;
                if (s > 0 && s < closest) {
                    closest = s;
                    target = i;
                }
            }
            if (target < 0) break;
            double denom = S.lift.row(target).squaredNorm() + 1.0;
            double eta = 1.05 * vals[target] / denom;
            c -= eta * S.lift.row(target).transpose();
            c0 += eta;  // the constant column of the constraint row carries -1
            vals = S.lift * c;
            vals.array() -= c0;
        }

        StageOutcome cand = evaluate_exact(S.to_poly(c, c0));
        if (cand.ok) return cand;
        if (cand.max_imbalance < best.max_imbalance) best = cand;
    }
    return best;  // flagged; caller records the imbalance
}

}  // namespace

PartitionResult build_partition(const std::vector<Point4>& pts, long long r, std::uint64_t seed,
                                const PartitionOptions& opts) {
    if (pts.size() < 2) throw std::invalid_argument("build_partition: need at least 2 points");
    if (r < 2) throw std::invalid_argument("build_partition: need r >= 2");

    std::mt19937_64 rng(seed);
    PartitionResult out;
    out.f = MultiPoly::constant(Rational(1));

    std::vector<std::vector<int>> groups(1);
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) groups[0].push_back(i);
    std::vector<std::vector<int>> signature(pts.size());  // per-point sign history

    while (static_cast<long long>(groups.size()) < r) {
        bool all_singleton = true;
        for (const auto& g : groups)
            if (g.size() > 1) all_singleton = false;
        if (all_singleton) break;

        int d = stage_degree(static_cast<int>(groups.size()));
        StageSearch search(pts, d);
        StageOutcome stage = search_stage(search, groups, rng, opts);
        if (stage.poly.is_zero()) break;  // search collapsed; keep what we have

        StageInfo info;
        info.degree = d;
        info.groups_in = static_cast<int>(groups.size());
        info.max_imbalance = stage.max_imbalance;
        info.ok = stage.ok;
        out.stages.push_back(info);
        out.factors.push_back(stage.poly);
        out.f = out.f * stage.poly;
        if (!stage.ok) out.balanced = false;

        std::vector<std::vector<int>> next;
        for (const auto& grp : groups) {
            std::vector<int> pos, neg;
            for (int i : grp) {
                if (stage.sign[i] > 0) pos.push_back(i);
                else if (stage.sign[i] < 0) neg.push_back(i);
                signature[i].push_back(stage.sign[i]);
            }
            if (!pos.empty()) next.push_back(std::move(pos));
            if (!neg.empty()) next.push_back(std::move(neg));
        }
        groups = std::move(next);
        if (groups.empty()) break;
    }

    out.degree = std::max(out.f.total_degree(), 0);
    long long maxclass = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& sig = signature[i];
        bool zero = std::find(sig.begin(), sig.end(), 0) != sig.end();
        if (zero || sig.empty()) {
            if (zero) ++out.zero_points;
            continue;
        }
        long long c = ++out.sign_classes[sig];
        maxclass = std::max(maxclass, c);
    }
    out.max_class_fraction = static_cast<double>(maxclass) / static_cast<double>(pts.size());
    return out;
}

Classification classify(const Config& cfg, const std::vector<MultiPoly>& factors) {
    Classification out;
    for (int i = 0; i < static_cast<int>(cfg.points.size()); ++i) {
        int stage = -1;
        for (std::size_t s = 0; s < factors.size(); ++s)
            if (factors[s].eval(cfg.points[i]).is_zero()) {
                stage = static_cast<int>(s);
                break;
            }
        if (stage >= 0) {
            out.p0.push_back(i);
            out.p0_stage.push_back(stage);
        } else {
            out.p_prime.push_back(i);
        }
    }
    for (int j = 0; j < static_cast<int>(cfg.lines.size()); ++j) {
        int stage = -1;
        for (std::size_t s = 0; s < factors.size(); ++s)
            if (factors[s].restrict_to_line(cfg.lines[j].base, cfg.lines[j].dir).is_zero()) {
                stage = static_cast<int>(s);
                break;
            }
        if (stage >= 0) {
            out.l0.push_back(j);
            out.l0_stage.push_back(stage);
        } else {
            out.l_prime.push_back(j);
        }
    }
    return out;
}

CrossingReport crossing_budget_report(const std::vector<Line4>& l_prime, const MultiPoly& f) {
    CrossingReport rep;
    const int degf = std::max(f.total_degree(), 0);
    for (std::size_t j = 0; j < l_prime.size(); ++j) {
        UniPoly r = f.restrict_to_line(l_prime[j].base, l_prime[j].dir);
        if (r.is_zero())
            throw std::invalid_argument("crossing_budget_report: contained line in L'");
        int roots = sturm_distinct_real_roots(r);
        rep.per_line.push_back(roots);
        rep.total += roots;
        if (roots > degf) rep.violations.push_back(static_cast<int>(j));
    }
    rep.budget = static_cast<long long>(l_prime.size()) * (1 + degf);
    return rep;
}

long long incidence_between(const std::vector<Point4>& pts, const std::vector<Line4>& lines) {
    if (pts.empty() || lines.empty()) return 0;
    struct VH {
        std::size_t operator()(const Vec4& v) const { return hash_vec4(v); }
    };
    std::unordered_map<Vec4, std::vector<std::size_t>, VH> by_dir;
    for (std::size_t j = 0; j < lines.size(); ++j) by_dir[lines[j].dir].push_back(j);
    long long total = 0;
    for (const auto& [dir, idx] : by_dir) {
        int pivot = 0;
        while (dir[pivot].is_zero()) ++pivot;
        std::unordered_map<Vec4, long long, VH> keys;
        for (const auto& p : pts) {
            Rational t = p[pivot] / dir[pivot];
            ++keys[p - t * dir];
        }
        for (std::size_t j : idx) {
            auto it = keys.find(lines[j].base);
            if (it != keys.end()) total += it->second;
        }
    }
    return total;
}

TwoStageReport two_stage_report(const Config& cfg, const BoundConstants& consts,
                                std::uint64_t seed, bool with_second_stage,
                                const PartitionOptions& opts) {
    const long long m = static_cast<long long>(cfg.points.size());
    const long long n = static_cast<long long>(cfg.lines.size());
    TwoStageReport rep;
    rep.plan = choose_degree(std::max(m, 1LL), std::max(n, 1LL), consts);
    rep.partition = build_partition(cfg.points, std::max(rep.plan.r, 2LL), seed, opts);

    Classification cls = classify(cfg, rep.partition.factors);
    rep.p0 = static_cast<long long>(cls.p0.size());
    rep.l0 = static_cast<long long>(cls.l0.size());

    std::vector<Point4> P0, Pp;
    std::vector<Line4> L0, Lp;
    for (int i : cls.p0) P0.push_back(cfg.points[i]);
    for (int i : cls.p_prime) Pp.push_back(cfg.points[i]);
    for (int j : cls.l0) L0.push_back(cfg.lines[j]);
    for (int j : cls.l_prime) Lp.push_back(cfg.lines[j]);

    rep.I_total = incidence_between(cfg.points, cfg.lines);
    rep.I00 = incidence_between(P0, L0);
    rep.I0p = incidence_between(P0, Lp);
    rep.Ipp = incidence_between(Pp, Lp);
    rep.identity_ok = rep.I_total == rep.I00 + rep.I0p + rep.Ipp;
    if (!rep.identity_ok) rep.violations.push_back("summand identity failed");

    rep.i0p_budget = n * rep.partition.degree;
    rep.i0p_ok = rep.I0p <= rep.i0p_budget;
    if (!rep.i0p_ok) rep.violations.push_back("I(P0,L') exceeded n*deg(f)");

    rep.crossings = crossing_budget_report(Lp, rep.partition.f);
    if (!rep.crossings.violations.empty())
        rep.violations.push_back("per-line crossing count exceeded deg(f)");

    rep.sign_class_count = static_cast<long long>(rep.partition.sign_classes.size());
    rep.warren_ratio = static_cast<double>(rep.sign_class_count) /
                       static_cast<double>(std::max(rep.plan.r, 1LL));
    if (!rep.partition.balanced) rep.violations.push_back("a stage missed the imbalance bound");

    if (with_second_stage && P0.size() >= 2) {
        long long e4 = 1;
        for (int i = 0; i < 4; ++i) e4 *= rep.plan.E;
        long long r2 = std::max(2LL, std::min(e4, static_cast<long long>(P0.size())));
        rep.second_stage = build_partition(P0, r2, seed ^ 0x2a9d, opts);
    }
    return rep;
}

}  // namespace inc4
