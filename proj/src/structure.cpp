#include "inc4/structure.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "inc4/linalg.hpp"

namespace inc4 {

namespace {

struct FlatHash {
    std::size_t operator()(const AffineFlat& f) const { return f.hash(); }
};

// A 2-flat through the line, extending it by the first usable axis direction.
AffineFlat extend_line_to_2flat(const Line4& l) {
    for (int axis = 0; axis < 4; ++axis) {
        Vec4 e{Rational(0), Rational(0), Rational(0), Rational(0)};
        e[axis] = Rational(1);
        auto f = affine_span_points({l.base, l.base + l.dir, l.base + e});
        if (f && f->dim == 2) return *f;
    }
    throw std::logic_error("extend_line_to_2flat: unreachable");
}

std::optional<AffineFlat> extend_flat_to_hyperplane(const AffineFlat& w) {
    for (int axis = 0; axis < 4; ++axis) {
        Vec4 e{Rational(0), Rational(0), Rational(0), Rational(0)};
        e[axis] = Rational(1);
        std::vector<Point4> pts{w.base, w.base + e};
        for (const auto& d : w.dirs) pts.push_back(w.base + d);
        auto f = affine_span_points(pts);
        if (f && f->dim == 3) return f;
    }
    return std::nullopt;
}

std::vector<int> sorted_vec(const std::vector<int>& v) {
    std::vector<int> out(v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

SResult compute_s(const std::vector<Line4>& lines, const StructureBudgets& b) {
    const long long n = static_cast<long long>(lines.size());
    if (n < 1) throw std::invalid_argument("compute_s: empty line set");
    if (n * (n - 1) / 2 > b.max_pairs)
        throw resource_limit_error("compute_s: pair count exceeds budget");

    // Two distinct lines inside a common 2-flat always span exactly that
    // flat, so accumulating pairs by span collects every line of each flat.
    std::unordered_map<AffineFlat, std::vector<int>, FlatHash> flats;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            LineRelation rel = intersect_lines(lines[i], lines[j]).kind;
            if (rel != LineRelation::Meet && rel != LineRelation::Parallel) continue;
            auto f = affine_span({lines[i], lines[j]});
            auto& v = flats[*f];
            v.push_back(i);
            v.push_back(j);
        }

    SResult best;
    if (flats.empty()) {
        best.s = 1;
        best.witness = extend_line_to_2flat(lines[0]);
        best.line_index = {0};
        return best;
    }
    for (auto& [flat, members] : flats) {
        std::vector<int> idx = sorted_vec(members);
        if (static_cast<long long>(idx.size()) > best.s ||
            (static_cast<long long>(idx.size()) == best.s && idx < best.line_index)) {
            best.s = static_cast<long long>(idx.size());
            best.witness = flat;
            best.line_index = std::move(idx);
        }
    }
    return best;
}

namespace {

struct HyperCandidates {
    std::unordered_map<AffineFlat, std::vector<int>, FlatHash> derived;
    bool pairs_complete = true;
    bool triples_complete = true;

    void add(const AffineFlat& h, std::initializer_list<int> idx) {
        auto& v = derived[h];
        v.insert(v.end(), idx);
    }
};

QHResult pick_best_hyperplane(const std::vector<Line4>& lines, HyperCandidates&& cands,
                              long long max_scan_tests) {
    const long long n = static_cast<long long>(lines.size());
    // Deterministic order: larger derived sets first, ties by index list.
    std::vector<std::pair<AffineFlat, std::vector<int>>> order;
    order.reserve(cands.derived.size());
    for (auto& [h, v] : cands.derived) order.emplace_back(h, sorted_vec(v));
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.second.size() != b.second.size()) return a.second.size() > b.second.size();
        return a.second < b.second;
    });

    QHResult out;
    out.exhaustive = cands.pairs_complete && cands.triples_complete;
    long long tests = 0;
    for (auto& [h, derived_idx] : order) {
        long long count;
        std::vector<int> members;
        if (tests + n <= max_scan_tests) {
            tests += n;
            for (int i = 0; i < n; ++i)
                if (flat_contains_line(h, lines[i])) members.push_back(i);
            count = static_cast<long long>(members.size());
        } else {
            // Past the scan budget the derived set is only a lower bound.
            out.exhaustive = false;
            members = derived_idx;
            count = static_cast<long long>(members.size());
        }
        if (count > out.q) {
            out.q = count;
            out.witness = h;
        }
    }
    return out;
}

}  // namespace

QHResult compute_q_hyperplane(const std::vector<Line4>& lines, const StructureBudgets& b) {
    const long long n = static_cast<long long>(lines.size());
    if (n < 1) throw std::invalid_argument("compute_q_hyperplane: empty line set");
    if (n * (n - 1) / 2 > b.max_pairs)
        throw resource_limit_error("compute_q_hyperplane: pair count exceeds budget");

    HyperCandidates cands;
    std::vector<std::vector<int>> coplanar(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            LineRelation rel = intersect_lines(lines[i], lines[j]).kind;
            if (rel == LineRelation::Meet || rel == LineRelation::Parallel) {
                coplanar[i].push_back(j);
                coplanar[j].push_back(i);
                continue;
            }
            auto span = affine_span({lines[i], lines[j]});
            if (span && span->dim == 3) cands.add(*span, {i, j});
        }

    // Triples of pairwise-coplanar lines spanning a hyperplane (concurrent
    // or parallel bundles that no skew pair detects).
    long long triples_seen = 0;
    for (int i = 0; i < n && cands.triples_complete; ++i) {
        const auto& adj = coplanar[i];
        for (std::size_t aj = 0; aj < adj.size() && cands.triples_complete; ++aj) {
            int j = adj[aj];
            if (j <= i) continue;
            for (std::size_t ak = aj + 1; ak < adj.size(); ++ak) {
                int k = adj[ak];
                if (k <= j) continue;
                if (!std::binary_search(coplanar[j].begin(), coplanar[j].end(), k)) continue;
                if (++triples_seen > b.max_triples) {
                    cands.triples_complete = false;
                    break;
                }
                auto span = affine_span({lines[i], lines[j], lines[k]});
                if (span && span->dim == 3) cands.add(*span, {i, j, k});
            }
        }
    }

    // Hyperplanes through the densest 2-flat; keeps q >= s.
    SResult s = compute_s(lines, b);
    bool extended = false;
    for (int i = 0; i < n; ++i) {
        if (flat_contains_line(s.witness, lines[i])) continue;
        std::vector<Point4> pts{s.witness.base, lines[i].base, lines[i].base + lines[i].dir};
        for (const auto& d : s.witness.dirs) pts.push_back(s.witness.base + d);
        auto span = affine_span_points(pts);
        if (span && span->dim == 3) {
            auto& v = cands.derived[*span];
            v.insert(v.end(), s.line_index.begin(), s.line_index.end());
            v.push_back(i);
            extended = true;
        }
    }
    if (!extended) {
        auto h = extend_flat_to_hyperplane(s.witness);
        if (h) {
            auto& v = cands.derived[*h];
            v.insert(v.end(), s.line_index.begin(), s.line_index.end());
        }
    }

    if (cands.derived.empty()) {
        // Single line, or nothing spans dim 3: extend a line's 2-flat.
        auto h = extend_flat_to_hyperplane(extend_line_to_2flat(lines[0]));
        cands.add(*h, {0});
    }
    return pick_best_hyperplane(lines, std::move(cands), b.max_scan_tests);
}

QHResult compute_q_hyperplane_oracle(const std::vector<Line4>& lines) {
    const long long n = static_cast<long long>(lines.size());
    if (n < 1) throw std::invalid_argument("compute_q_hyperplane_oracle: empty line set");

    HyperCandidates cands;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto span = affine_span({lines[i], lines[j]});
            if (span && span->dim == 3) cands.add(*span, {i, j});
            for (int k = j + 1; k < n; ++k) {
                auto span3 = affine_span({lines[i], lines[j], lines[k]});
                if (span3 && span3->dim == 3) cands.add(*span3, {i, j, k});
            }
        }

    StructureBudgets nolimit;
    nolimit.max_pairs = n * n + 1;
    SResult s = compute_s(lines, nolimit);
    auto h = extend_flat_to_hyperplane(s.witness);
    if (h) {
        auto& v = cands.derived[*h];
        v.insert(v.end(), s.line_index.begin(), s.line_index.end());
    }
    if (cands.derived.empty()) {
        auto h1 = extend_flat_to_hyperplane(extend_line_to_2flat(lines[0]));
        cands.add(*h1, {0});
    }
    return pick_best_hyperplane(lines, std::move(cands), (n * n + 2) * n);
}

namespace {

// Quadric through a single line: product of two hyperplanes containing it.
Quadric4 quadric_through_line(const Line4& l) {
    RatMatrix m(2, 5);
    const Point4 p0 = l.base, p1 = l.base + l.dir;
    m.at(0, 0) = Rational(1);
    m.at(1, 0) = Rational(1);
    for (int i = 0; i < 4; ++i) {
        m.at(0, i + 1) = p0[i];
        m.at(1, i + 1) = p1[i];
    }
    auto basis = m.kernel_basis();
    MultiPoly l1, l2;
    auto to_poly = [](const std::vector<Rational>& v) {
        MultiPoly f = MultiPoly::constant(v[0]);
        for (int i = 0; i < 4; ++i) f = f + MultiPoly::variable(i).scaled(v[i + 1]);
        return f;
    };
    l1 = to_poly(basis.at(0));
    l2 = to_poly(basis.at(1));
    MultiPoly q = l1 * l2;
    std::array<Rational, 15> coeffs{};
    for (int i = 0; i < 15; ++i) {
        auto it = q.terms().find(kQuadricMonomials[i]);
        if (it != q.terms().end()) coeffs[i] = it->second;
    }
    return Quadric4(coeffs);
}

std::vector<Quadric4> quadric_candidates(const std::vector<Line4>& lines,
                                         const std::vector<int>& subset) {
    RatMatrix m(static_cast<int>(subset.size()) * 3, 15);
    int r = 0;
    for (int idx : subset) {
        auto rows = quadric_line_conditions(lines[idx]);
        for (int k = 0; k < 3; ++k, ++r)
            for (int j = 0; j < 15; ++j) m.at(r, j) = rows[k][j];
    }
    std::vector<Quadric4> out;
    for (const auto& v : m.kernel_basis()) {
        bool deg2 = false;
        for (int i = 5; i < 15; ++i)
            if (!v[i].is_zero()) deg2 = true;
        if (!deg2) continue;
        std::array<Rational, 15> coeffs;
        for (int i = 0; i < 15; ++i) coeffs[i] = v[i];
        out.emplace_back(coeffs);
    }
    return out;
}

}  // namespace

QQResult compute_q_quadric(const std::vector<Line4>& lines, const StructureBudgets& b) {
    const long long n = static_cast<long long>(lines.size());
    if (n < 1) throw std::invalid_argument("compute_q_quadric: empty line set");

    QQResult out;
    auto consider = [&](const Quadric4& q) {
        long long count = 0;
        for (const auto& l : lines)
            if (quadric_contains_line(q, l)) ++count;
        if (count > out.q) {
            out.q = count;
            out.witness = q;
        }
    };

    if (n <= 5) {
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i;
        for (const auto& q : quadric_candidates(lines, all)) consider(q);
    } else {
        // 5-subsets in lexicographic order, up to the budget.
        std::vector<int> sub = {0, 1, 2, 3, 4};
        long long tried = 0;
        while (true) {
            if (++tried > b.max_quadric_subsets) {
                out.exhaustive = false;
                break;
            }
            for (const auto& q : quadric_candidates(lines, sub)) consider(q);
            int i = 4;
            while (i >= 0 && sub[i] == n - 5 + i) --i;
            if (i < 0) break;
            ++sub[i];
            for (int j = i + 1; j < 5; ++j) sub[j] = sub[j - 1] + 1;
        }
    }

    if (out.q == 0) {
        // Any quadric through the first line is a witness for q = 1.
        consider(quadric_through_line(lines[0]));
    }
    return out;
}

StructuralParams compute_structural_params(const std::vector<Line4>& lines,
                                           const StructureBudgets& b) {
    StructuralParams p;
    p.s = compute_s(lines, b);
    p.q_hyperplane = compute_q_hyperplane(lines, b);
    p.q_quadric = compute_q_quadric(lines, b);
    p.notes = "s_lines=" + std::to_string(p.s.line_index.size()) +
              ";qh_exhaustive=" + (p.q_hyperplane.exhaustive ? "1" : "0") +
              ";qq_exhaustive=" + (p.q_quadric.exhaustive ? "1" : "0");
    return p;
}

BoundBreakdown bound_rhs(long long m, long long n, long long q, long long s,
                         const BoundConstants& consts) {
    if (m < 1 || n < 0 || q < 0 || s < 0) throw std::invalid_argument("bound_rhs: bad inputs");
    BoundBreakdown r;
    double factor = std::exp2(consts.c * std::sqrt(std::log2(static_cast<double>(m))));
    double md = static_cast<double>(m), nd = static_cast<double>(n);
    r.lead = factor * std::pow(md, 0.4) * std::pow(nd, 0.8);
    r.linear_m = factor * md;
    r.hyper = consts.A * std::sqrt(md) * std::sqrt(nd) * std::pow(static_cast<double>(q), 0.25);
    r.planar = consts.A * std::pow(md, 2.0 / 3.0) * std::pow(nd, 1.0 / 3.0) *
               std::pow(static_cast<double>(s), 1.0 / 3.0);
    r.linear_n = consts.A * nd;
    r.total = r.lead + r.linear_m + r.hyper + r.planar + r.linear_n;
    return r;
}

RichBoundBreakdown richpoints_bound_rhs(long long n, long long q, long long s, long long k,
                                        const BoundConstants& consts) {
    if (n < 1 || k < 2 || q < 0 || s < 0)
        throw std::invalid_argument("richpoints_bound_rhs: bad inputs");
    RichBoundBreakdown r;
    double nd = static_cast<double>(n), kd = static_cast<double>(k);
    double factor = std::exp2((4.0 / 3.0) * consts.c * std::sqrt(std::log2(nd)));
    r.joints = factor * std::pow(nd, 4.0 / 3.0) / std::pow(kd, 5.0 / 3.0);
    r.hyper = consts.A * nd * std::sqrt(static_cast<double>(q)) / (kd * kd);
    r.planar = consts.A * nd * static_cast<double>(s) / (kd * kd * kd);
    r.linear = consts.A * nd / kd;
    r.total = r.joints + r.hyper + r.planar + r.linear;
    return r;
}

BoundReport verify_bound(const Config& cfg, const BoundConstants& consts,
                         const StructureBudgets& b) {
    BoundReport rep;
    rep.m = static_cast<long long>(cfg.points.size());
    rep.n = static_cast<long long>(cfg.lines.size());
    rep.I = incidence_count(cfg).total;
    long long q = 0, s = 0;
    if (!cfg.lines.empty()) {
        rep.params = compute_structural_params(cfg.lines, b);
        q = rep.params.q();
        s = rep.params.s.s;
    }
    rep.rhs = bound_rhs(rep.m, std::max(rep.n, 0LL), q, s, consts);
    double Id = static_cast<double>(rep.I);
    rep.ratio = rep.rhs.total > 0 ? Id / rep.rhs.total : 0.0;
    double md = static_cast<double>(rep.m), nd = static_cast<double>(rep.n);
    if (rep.n > 0) {
        rep.lead_ratio = Id / (std::pow(md, 0.4) * std::pow(nd, 0.8));
        rep.st_ratio = Id / (std::pow(md, 2.0 / 3.0) * std::pow(nd, 2.0 / 3.0));
        rep.gk_ratio = Id / (std::sqrt(md) * std::pow(nd, 0.75));
    }
    rep.violation = rep.ratio > 1.0;
    return rep;
}

}  // namespace inc4
