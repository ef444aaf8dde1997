#include "inc4/algcrit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "inc4/linalg.hpp"

namespace inc4 {

namespace {

void require_on_surface(const MultiPoly& f, const Point4& p, const char* who) {
    if (!f.eval(p).is_zero())
        throw std::invalid_argument(std::string(who) + ": point is not on Z(f)");
}

void require_contained(const MultiPoly& f, const Line4& l, const char* who) {
    if (!f.restrict_to_line(l.base, l.dir).is_zero())
        throw std::invalid_argument(std::string(who) + ": line is not contained in Z(f)");
}

}  // namespace

bool is_singular(const MultiPoly& f, const Point4& p) {
    require_on_surface(f, p, "is_singular");
    for (int i = 0; i < 4; ++i)
        if (!f.derivative(i).eval(p).is_zero()) return false;
    return true;
}

SingularLineCount singular_count_on_line(const MultiPoly& f, const Line4& l) {
    require_contained(f, l, "singular_count_on_line");
    UniPoly g;  // gcd of the nonzero restricted partials
    bool any = false;
    for (int i = 0; i < 4; ++i) {
        UniPoly r = f.derivative(i).restrict_to_line(l.base, l.dir);
        if (r.is_zero()) continue;
        g = any ? uni_gcd(g, r) : r.monic();
        any = true;
    }
    if (!any) return {true, 0};
    SingularLineCount out;
    out.count = (g.degree() == 0) ? 0 : sturm_distinct_real_roots(g);
    return out;
}

// ---------------------------------------------------------------------------
// complex helpers

std::complex<double> eval_complex(const MultiPoly& f, const C4& v) {
    std::complex<double> acc(0, 0);
    for (const auto& [e, c] : f.terms()) {
        std::complex<double> t(c.to_double(), 0);
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < e[i]; ++k) t *= v[i];
        acc += t;
    }
    return acc;
}

std::vector<std::complex<double>> restrict_complex(const MultiPoly& f, const Point4& base,
                                                   const C4& dir) {
    std::vector<std::complex<double>> acc(std::max(f.total_degree(), 0) + 1);
    for (const auto& [e, c] : f.terms()) {
        std::vector<std::complex<double>> term = {std::complex<double>(c.to_double(), 0)};
        for (int i = 0; i < 4; ++i) {
            std::complex<double> b(base[i].to_double(), 0);
            for (int k = 0; k < e[i]; ++k) {
                std::vector<std::complex<double>> next(term.size() + 1);
                for (std::size_t j = 0; j < term.size(); ++j) {
                    next[j] += term[j] * b;
                    next[j + 1] += term[j] * dir[i];
                }
                term = std::move(next);
            }
        }
        for (std::size_t j = 0; j < term.size(); ++j) acc[j] += term[j];
    }
    return acc;
}

double restriction_residual(const MultiPoly& f, const Point4& base, const C4& dir) {
    auto coeffs = restrict_complex(f, base, dir);
    double worst = 0;
    for (const auto& c : coeffs) worst = std::max(worst, std::abs(c));
    double scale = 0;
    for (const auto& [e, c] : f.terms()) {
        double t = std::abs(c.to_double());
        for (int i = 0; i < 4; ++i) t *= std::pow(std::abs(base[i].to_double()) + 1.0, e[i]);
        scale += t;
    }
    return worst / std::max(scale, 1e-300);
}

namespace {

double scaled_residual(const MultiPoly& form, const C4& v) {
    double scale = 0;
    for (const auto& [e, c] : form.terms()) scale += std::abs(c.to_double());
    return std::abs(eval_complex(form, v)) / std::max(scale, 1e-300);
}

// ---------------------------------------------------------------------------
// homogeneous elimination solver

// A homogeneous system in nvars <= 4 slots together with the rational matrix
// mapping current coordinates back to v-space.
struct ReducedSystem {
    std::vector<MultiPoly> forms;
    int nvars = 4;
    std::array<std::array<Rational, 4>, 4> map;  // v_j = sum_i map[j][i] s_i

    ReducedSystem() {
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) map[j][i] = Rational(j == i ? 1 : 0);
    }

    void apply_basis(const std::vector<std::vector<Rational>>& basis) {
        // new coordinate k corresponds to the old vector basis[k]
        int new_n = static_cast<int>(basis.size());
        std::array<MultiPoly, 4> subs;
        for (int i = 0; i < nvars; ++i) {
            MultiPoly s;
            for (int k = 0; k < new_n; ++k)
                if (!basis[k][i].is_zero()) s = s + MultiPoly::variable(k).scaled(basis[k][i]);
            subs[i] = s;
        }
        for (int i = nvars; i < 4; ++i) subs[i] = MultiPoly::zero();
        for (auto& f : forms) f = f.substitute(subs);
        std::array<std::array<Rational, 4>, 4> nm{};
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < new_n; ++k) {
                Rational acc;
                for (int i = 0; i < nvars; ++i) acc += map[j][i] * basis[k][i];
                nm[j][k] = acc;
            }
        map = nm;
        nvars = new_n;
    }

    // Substitute away the first linear form; drops one variable.
    void eliminate_linear(std::size_t idx) {
        RatMatrix row(1, nvars);
        for (const auto& [e, c] : forms[idx].terms())
            for (int i = 0; i < nvars; ++i)
                if (e[i] == 1) row.at(0, i) = c;
        forms.erase(forms.begin() + static_cast<long>(idx));
        apply_basis(row.kernel_basis());
    }

    std::vector<C4> lift(const std::vector<std::vector<std::complex<double>>>& sols) const {
        std::vector<C4> out;
        for (const auto& s : sols) {
            C4 v{};
            for (int j = 0; j < 4; ++j)
                for (int i = 0; i < nvars; ++i) v[j] += map[j][i].to_double() * s[i];
            out.push_back(v);
        }
        return out;
    }
};

MultiPoly random_linear_form(std::mt19937_64& rng, int nvars) {
    MultiPoly h;
    while (h.is_zero())
        for (int i = 0; i < nvars; ++i) {
            long c = static_cast<long>(rng() % 7) - 3;
            if (c != 0) h = h + MultiPoly::variable(i).scaled(Rational(c));
        }
    return h;
}

// Coefficient of slot^k in a form over (s0, s1, slot), the other two slots
// evaluated at sigma.
std::complex<double> coeff_at(const MultiPoly& g, int k, std::complex<double> s0,
                              std::complex<double> s1) {
    std::complex<double> acc(0, 0);
    for (const auto& [e, c] : g.terms()) {
        if (e[2] != k) continue;
        std::complex<double> t(c.to_double(), 0);
        for (int i = 0; i < e[0]; ++i) t *= s0;
        for (int i = 0; i < e[1]; ++i) t *= s1;
        acc += t;
    }
    return acc;
}

UniPoly specialize_in_s2(const MultiPoly& g, const Rational& tau) {
    // g(tau, 1, s2) as a univariate polynomial in s2
    int d = g.total_degree();
    std::vector<Rational> coeffs(static_cast<std::size_t>(d) + 1);
    for (const auto& [e, c] : g.terms()) {
        Rational t = c;
        for (int i = 0; i < e[0]; ++i) t *= tau;
        coeffs[e[2]] += t;
    }
    return UniPoly(std::move(coeffs));
}

Rational sylvester_resultant(const UniPoly& a, const UniPoly& b, int da, int db) {
    RatMatrix m(da + db, da + db);
    for (int r = 0; r < db; ++r)
        for (int k = 0; k <= da; ++k)
            m.at(r, r + k) = (da - k <= a.degree()) ? a[da - k] : Rational(0);
    for (int r = 0; r < da; ++r)
        for (int k = 0; k <= db; ++k)
            m.at(db + r, r + k) = (db - k <= b.degree()) ? b[db - k] : Rational(0);
    return fraction_free_det(m);
}

UniPoly lagrange_interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    UniPoly acc;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (ys[i].is_zero()) continue;
        UniPoly li = UniPoly::constant(Rational(1));
        Rational denom(1);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            li = li * UniPoly({-xs[j], Rational(1)});
            denom *= xs[i] - xs[j];
        }
        UniPoly scaled;
        {
            std::vector<Rational> c(li.coeffs());
            Rational s = ys[i] / denom;
            for (auto& x : c) x *= s;
            scaled = UniPoly(std::move(c));
        }
        acc = acc + scaled;
    }
    return acc;
}

struct SolveOptions {
    double root_match = 1e-6;
    int max_retries = 8;
    std::uint64_t seed = 1;
};

// Common projective roots of a binary homogeneous form (in slots 0, 1).
std::vector<std::vector<std::complex<double>>> solve_binary(const MultiPoly& g, int deg) {
    std::vector<Rational> coeffs(static_cast<std::size_t>(deg) + 1);
    for (const auto& [e, c] : g.terms()) coeffs[e[0]] = c;
    UniPoly u{std::vector<Rational>(coeffs)};
    std::vector<std::vector<std::complex<double>>> out;
    if (u.degree() < deg) out.push_back({{1, 0}, {0, 0}});  // root at (1:0)
    if (u.degree() >= 1)
        for (const auto& z : complex_roots(u, 1e-8).roots) out.push_back({z, {1, 0}});
    if (u.degree() == 0 && out.empty()) {
        // nonzero constant: no roots
    }
    return out;
}

// Roots of {G2, G3} homogeneous in 3 slots, degrees (2, 3), via a Sylvester
// resultant eliminating slot 2, with seeded unimodular pre-rotations.
std::vector<std::vector<std::complex<double>>> solve_conic_cubic(ReducedSystem& sys,
                                                                 std::size_t i2, std::size_t i3,
                                                                 const SolveOptions& opt) {
    std::mt19937_64 rng(opt.seed ^ 0xc0c0);
    for (int attempt = 0; attempt <= opt.max_retries; ++attempt) {
        ReducedSystem trial = sys;
        if (attempt > 0) {
            // random unimodular rotation of the three coordinates
            std::array<std::array<long, 3>, 3> u{};
            for (int i = 0; i < 3; ++i) u[i][i] = 1;
            for (int s = 0; s < 8; ++s) {
                int i = static_cast<int>(rng() % 3), j = static_cast<int>(rng() % 3);
                if (i == j) continue;
                long c = static_cast<long>(rng() % 3) - 1;
                for (int k = 0; k < 3; ++k) u[i][k] += c * u[j][k];
            }
            std::vector<std::vector<Rational>> basis(3, std::vector<Rational>(3));
            for (int k = 0; k < 3; ++k)
                for (int i = 0; i < 3; ++i) basis[k][i] = Rational(u[i][k]);
            trial.apply_basis(basis);
        }
        const MultiPoly& g2 = trial.forms[i2];
        const MultiPoly& g3 = trial.forms[i3];
        Expo top2{0, 0, 2, 0}, top3{0, 0, 3, 0};
        if (g2.terms().find(top2) == g2.terms().end() || g3.terms().find(top3) == g3.terms().end())
            continue;  // leading coefficient in s2 vanished; rotate again

        // interpolate R(s0) = Res_{s2}(G2, G3)(s0, 1) through 7 nodes
        std::vector<Rational> xs, ys;
        for (long t : {0L, 1L, -1L, 2L, -2L, 3L, 4L}) {
            Rational tau(t);
            xs.push_back(tau);
            ys.push_back(sylvester_resultant(specialize_in_s2(g2, tau), specialize_in_s2(g3, tau),
                                             2, 3));
        }
        UniPoly R = lagrange_interpolate(xs, ys);
        if (R.is_zero()) continue;  // common component; needs a different frame

        std::vector<std::vector<std::complex<double>>> partial;
        if (R.degree() < 6) partial.push_back({{1, 0}, {0, 0}});
        if (R.degree() >= 1)
            for (const auto& z : complex_roots(R, 1e-8).roots) partial.push_back({z, {1, 0}});

        std::vector<std::vector<std::complex<double>>> sols;
        for (auto& cand : partial) {
            std::complex<double> s0 = cand[0], s1 = cand[1];
            std::complex<double> a = coeff_at(g2, 2, s0, s1);
            std::complex<double> b = coeff_at(g2, 1, s0, s1);
            std::complex<double> c = coeff_at(g2, 0, s0, s1);
            std::complex<double> disc = std::sqrt(b * b - 4.0 * a * c);
            for (std::complex<double> s2 : {(-b + disc) / (2.0 * a), (-b - disc) / (2.0 * a)}) {
                double norm = std::max({std::abs(s0), std::abs(s1), std::abs(s2), 1e-300});
                C4 sn{s0 / norm, s1 / norm, s2 / norm, 0};
                double r3 = scaled_residual(g3, sn);
                double r2 = scaled_residual(g2, sn);
                if (r3 <= opt.root_match && r2 <= opt.root_match)
                    sols.push_back({sn[0], sn[1], sn[2]});
            }
        }
        if (!sols.empty() || R.degree() == 6) {
            sys = trial;
            return sols;
        }
    }
    throw elimination_error("osculation solver: elimination degenerate after retries");
}

std::vector<C4> normalize_and_dedupe(std::vector<C4> dirs, double tol) {
    std::vector<C4> out;
    for (auto& v : dirs) {
        double mx = 0;
        for (const auto& c : v) mx = std::max(mx, std::abs(c));
        if (mx < 1e-14) continue;
        for (auto& c : v) c /= mx;
        bool dup = false;
        for (const auto& w : out) {
            double cross = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    cross = std::max(cross, std::abs(v[i] * w[j] - v[j] * w[i]));
            if (cross < tol) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(v);
    }
    std::sort(out.begin(), out.end(), [](const C4& a, const C4& b) {
        for (int i = 0; i < 4; ++i) {
            if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
            if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
        }
        return false;
    });
    return out;
}

// Solve a homogeneous system given as forms plus enough random linear slices
// to cut the solution set to dimension zero. Returns v-space directions.
std::vector<C4> solve_system(std::vector<MultiPoly> forms, std::mt19937_64& rng,
                             const SolveOptions& opt) {
    ReducedSystem sys;
    sys.forms = std::move(forms);

    int guard = 0;
    while (true) {
        if (++guard > 16) throw elimination_error("osculation solver: reduction did not settle");
        // drop forms that became identically zero on the current subspace
        sys.forms.erase(std::remove_if(sys.forms.begin(), sys.forms.end(),
                                       [](const MultiPoly& f) { return f.is_zero(); }),
                        sys.forms.end());
        std::size_t lin = sys.forms.size();
        for (std::size_t i = 0; i < sys.forms.size(); ++i)
            if (sys.forms[i].total_degree() == 1) {
                lin = i;
                break;
            }
        if (lin < sys.forms.size()) {
            sys.eliminate_linear(lin);
            continue;
        }
        int want = sys.nvars - 1;  // forms needed to cut to projective dim 0
        if (static_cast<int>(sys.forms.size()) < want) {
            sys.forms.push_back(random_linear_form(rng, sys.nvars));
            continue;
        }
        break;
    }

    std::vector<std::vector<std::complex<double>>> sols;
    if (sys.nvars == 1) {
        sols.push_back({{1, 0}});
    } else if (sys.nvars == 2 && sys.forms.size() == 1) {
        sols = solve_binary(sys.forms[0], sys.forms[0].total_degree());
    } else if (sys.nvars == 3 && sys.forms.size() == 2) {
        std::size_t i2 = 0, i3 = 1;
        if (sys.forms[i2].total_degree() > sys.forms[i3].total_degree()) std::swap(i2, i3);
        if (sys.forms[i2].total_degree() != 2 || sys.forms[i3].total_degree() != 3)
            throw elimination_error("osculation solver: unexpected degrees after reduction");
        sols = solve_conic_cubic(sys, i2, i3, opt);
    } else {
        throw elimination_error("osculation solver: unexpected system shape after reduction");
    }
    return sys.lift(sols);
}

}  // namespace

OsculationReport osculating_directions(const MultiPoly& f, const Point4& p,
                                       const OsculationOptions& opts) {
    require_on_surface(f, p, "osculating_directions");
    if (f.total_degree() < 1)
        throw std::invalid_argument("osculating_directions: deg f must be >= 1");

    auto F = osculation_forms(f, p);
    const bool some_zero = F[0].is_zero() || F[1].is_zero() || F[2].is_zero();

    OsculationReport rep;
    if (some_zero) {
        rep.infinite = true;  // at most two active forms in P^3
    } else {
        auto ur = u_resultant_identically_zero(f, p, opts.seed, opts.trials);
        rep.infinite = ur.identically_zero;
        rep.sz_failure_bound = ur.failure_bound;
    }

    SolveOptions sopt{opts.root_match, opts.max_retries, opts.seed};
    std::mt19937_64 rng(opts.seed ^ 0x9e37);
    std::vector<C4> dirs;
    if (!rep.infinite) {
        dirs = solve_system({F[0], F[1], F[2]}, rng, sopt);
    } else {
        // sample the solution set with one random hyperplane slice
        for (int attempt = 0; attempt < opts.max_retries && dirs.empty(); ++attempt) {
            std::vector<MultiPoly> nonlinear;
            for (int i = 1; i < 3; ++i)
                if (!F[i].is_zero()) nonlinear.push_back(F[i]);
            std::vector<MultiPoly> base;
            if (!F[0].is_zero()) base.push_back(F[0]);
            base.push_back(random_linear_form(rng, 4));
            std::vector<C4> cand;
            if (nonlinear.empty()) {
                auto got = solve_system(base, rng, sopt);
                cand.insert(cand.end(), got.begin(), got.end());
            }
            for (const auto& nl : nonlinear) {
                std::vector<MultiPoly> sysforms = base;
                sysforms.push_back(nl);
                auto got = solve_system(sysforms, rng, sopt);
                cand.insert(cand.end(), got.begin(), got.end());
            }
            // keep only samples satisfying every active form
            for (auto& v : cand) {
                double mx = 0;
                for (const auto& c : v) mx = std::max(mx, std::abs(c));
                if (mx < 1e-14) continue;
                C4 vn = v;
                for (auto& c : vn) c /= mx;
                bool ok = true;
                for (int i = 0; i < 3; ++i)
                    if (!F[i].is_zero() && scaled_residual(F[i], vn) > opts.root_match) ok = false;
                if (ok) dirs.push_back(vn);
            }
        }
    }

    dirs = normalize_and_dedupe(std::move(dirs), 1e-6);
    for (const auto& v : dirs) {
        OsculationDirection d;
        d.v = v;
        d.system_residual = 0;
        for (int i = 0; i < 3; ++i)
            if (!F[i].is_zero()) d.system_residual = std::max(d.system_residual, scaled_residual(F[i], v));
        d.line_residual = restriction_residual(f, p, v);
        d.contained = d.line_residual <= opts.tol;
        rep.directions.push_back(d);
    }
    return rep;
}

FlecnodeValue flecnode_eval(const MultiPoly& f, const Point4& p, const MacaulayOptions& mo) {
    require_on_surface(f, p, "flecnode_eval");
    auto F = osculation_forms(f, p);
    for (int i = 0; i < 4; ++i)
        if (F[i].is_zero()) return {true, Rational(0)};
    return {false, macaulay_resultant(F, {1, 2, 3, 4}, mo)};
}

Rational u_resultant_eval(const MultiPoly& f, const Point4& p, const Vec4& u,
                          const MacaulayOptions& mo) {
    require_on_surface(f, p, "u_resultant_eval");
    auto F = osculation_forms(f, p);
    for (int i = 0; i < 3; ++i)
        if (F[i].is_zero())
            throw zero_form_error("u_resultant_eval: F_" + std::to_string(i + 1) +
                                  " is identically zero");
    MultiPoly lin;
    for (int i = 0; i < 4; ++i)
        if (!u[i].is_zero()) lin = lin + MultiPoly::variable(i).scaled(u[i]);
    // The zero linear form vanishes everywhere, and three forms in P^3 always
    // share a root, so the resultant is zero.
    if (lin.is_zero()) return Rational(0);
    return macaulay_resultant({F[0], F[1], F[2], lin}, {1, 2, 3, 1}, mo);
}

UResZeroReport u_resultant_identically_zero(const MultiPoly& f, const Point4& p,
                                            std::uint64_t seed, int trials) {
    require_on_surface(f, p, "u_resultant_identically_zero");
    auto F = osculation_forms(f, p);
    for (int i = 0; i < 3; ++i)
        if (F[i].is_zero()) return {true, 0, 0.0};  // the system is underdetermined in P^3

    std::mt19937_64 rng(seed);
    const long R = 10;  // samples from [-R, R]^4
    for (int t = 1; t <= trials; ++t) {
        Vec4 u;
        bool nonzero = false;
        for (int i = 0; i < 4; ++i) {
            long c = static_cast<long>(rng() % (2 * R + 1)) - R;
            u[i] = Rational(c);
            nonzero |= c != 0;
        }
        if (!nonzero) {
            --t;
            continue;
        }
        if (!u_resultant_eval(f, p, u).is_zero()) return {false, t, 0.0};
    }
    double per_trial = 6.0 / (2.0 * R + 1.0);
    return {true, trials, std::pow(per_trial, trials)};
}

bool u_resultant_identically_zero_exact(const MultiPoly& f, const Point4& p, std::uint64_t seed) {
    require_on_surface(f, p, "u_resultant_identically_zero_exact");
    {
        auto F = osculation_forms(f, p);
        for (int i = 0; i < 3; ++i)
            if (F[i].is_zero()) return true;
    }
    // U is homogeneous of degree six in u: interpolate all 84 coefficients.
    std::vector<Expo> mons = exponents_of_degree(6);
    const int n = static_cast<int>(mons.size());
    std::mt19937_64 rng(seed ^ 0xe8ac7u);
    for (int attempt = 0; attempt < 5; ++attempt) {
        std::vector<Vec4> pts;
        RatMatrix m(n, n);
        for (int r = 0; r < n; ++r) {
            Vec4 u;
            bool nonzero = false;
            for (int i = 0; i < 4; ++i) {
                long c = static_cast<long>(rng() % 11) - 5;
                u[i] = Rational(c);
                nonzero |= c != 0;
            }
            if (!nonzero) {
                --r;
                continue;
            }
            pts.push_back(u);
            for (int j = 0; j < n; ++j) {
                Rational t(1);
                for (int i = 0; i < 4; ++i)
                    for (int k = 0; k < mons[j][i]; ++k) t *= u[i];
                m.at(r, j) = t;
            }
        }
        if (m.rank() < n) continue;
        std::vector<Rational> vals(n);
        bool all_zero = true;
        for (int r = 0; r < n; ++r) {
            vals[r] = u_resultant_eval(f, p, pts[r]);
            if (!vals[r].is_zero()) all_zero = false;
        }
        // With an invertible interpolation matrix, all values zero iff all
        // coefficients are zero.
        return all_zero;
    }
    throw elimination_error("u_resultant_identically_zero_exact: interpolation nodes degenerate");
}

// ---------------------------------------------------------------------------
// flatness

std::array<MultiPoly, 9> flat_polynomials(const MultiPoly& f) {
    if (f.total_degree() < 2) return {};  // zero Hessian: all nine vanish
    std::array<MultiPoly, 9> out;
    static const int slice_axes[3][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}};
    for (int s = 0; s < 3; ++s) {
        const int* L = slice_axes[s];
        std::array<MultiPoly, 3> g;
        for (int a = 0; a < 3; ++a) g[a] = f.derivative(L[a]);
        MultiPoly H[3][3];
        for (int a = 0; a < 3; ++a)
            for (int b = a; b < 3; ++b) H[a][b] = H[b][a] = g[a].derivative(L[b]);

        // cross products of the slice gradient with the slice axes
        std::array<std::array<MultiPoly, 3>, 3> wv;
        wv[0] = {MultiPoly::zero(), g[2], -g[1]};
        wv[1] = {-g[2], MultiPoly::zero(), g[0]};
        wv[2] = {g[1], -g[0], MultiPoly::zero()};

        for (int j = 0; j < 3; ++j) {
            MultiPoly pi;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    if (wv[j][a].is_zero() || wv[j][b].is_zero()) continue;
                    pi = pi + wv[j][a] * H[a][b] * wv[j][b];
                }
            out[s * 3 + j] = pi;
        }
    }
    return out;
}

FlatnessCertificate flatness_certificate(const MultiPoly& f, const Point4& p) {
    require_on_surface(f, p, "flatness_certificate");
    FlatnessCertificate cert;
    cert.point = p;

    Vec4 g;
    for (int i = 0; i < 4; ++i) g[i] = f.derivative(i).eval(p);
    cert.singular = is_zero(g);

    if (!cert.singular) {
        int nonzero_at = -1, nonzero_count = 0;
        for (int i = 0; i < 4; ++i)
            if (!g[i].is_zero()) {
                nonzero_at = i;
                ++nonzero_count;
            }
        cert.axis_degenerate = (nonzero_count == 1 && nonzero_at <= 2);
    }

    auto pis = flat_polynomials(f);
    for (int i = 0; i < 9; ++i) cert.pi_values[i] = pis[i].eval(p);

    bool all_pi_zero = true;
    for (const auto& v : cert.pi_values)
        if (!v.is_zero()) all_pi_zero = false;

    if (!cert.singular) {
        Rational H[4][4];
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b) {
                H[a][b] = f.derivative(a).derivative(b).eval(p);
                H[b][a] = H[a][b];
            }
        int pivot = 0;
        while (g[pivot].is_zero()) ++pivot;
        // tangent basis b_j = g[pivot] e_j - g[j] e_pivot over j != pivot
        std::array<Vec4, 3> basis;
        int bi = 0;
        for (int j = 0; j < 4; ++j) {
            if (j == pivot) continue;
            Vec4 b{Rational(0), Rational(0), Rational(0), Rational(0)};
            b[j] = g[pivot];
            b[pivot] = -g[j];
            basis[bi++] = b;
        }
        cert.sff_zero = true;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                Rational acc;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) acc += basis[r][a] * H[a][b] * basis[c][b];
                cert.sff[r][c] = acc;
                if (!acc.is_zero()) cert.sff_zero = false;
            }
    }

    cert.is_flat = !cert.singular && !cert.axis_degenerate && all_pi_zero && cert.sff_zero;
    return cert;
}

FlatLineResult is_flat_line(const MultiPoly& f, const Line4& l) {
    require_contained(f, l, "is_flat_line");
    std::array<UniPoly, 4> g;
    bool any = false;
    for (int i = 0; i < 4; ++i) {
        g[i] = f.derivative(i).restrict_to_line(l.base, l.dir);
        any |= !g[i].is_zero();
    }
    if (!any) return {true, false};

    // Restrictions of the nine flatness polynomials must all vanish; each has
    // degree <= 3 deg(f) - 4, so 3 deg(f) - 3 roots already force this.
    for (const auto& pi : flat_polynomials(f))
        if (!pi.restrict_to_line(l.base, l.dir).is_zero()) return {false, false};

    // Exact second-fundamental-form vanishing along the line: the bivector
    // fields g_j e_k - g_k e_j span the tangent space at every non-singular
    // parameter, so the restricted Hessian vanishes on the tangent space iff
    // all their pairings vanish identically.
    UniPoly H[4][4];
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
            H[a][b] = f.derivative(a).derivative(b).restrict_to_line(l.base, l.dir);
            H[b][a] = H[a][b];
        }
    std::vector<std::pair<int, int>> pairs;
    for (int j = 0; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k) pairs.emplace_back(j, k);
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a; b < pairs.size(); ++b) {
            auto [j, k] = pairs[a];
            auto [lm, m] = pairs[b];
            UniPoly val = g[j] * g[lm] * H[k][m] - g[j] * g[m] * H[k][lm] -
                          g[k] * g[lm] * H[j][m] + g[k] * g[m] * H[j][lm];
            if (!val.is_zero()) return {false, false};
        }
    return {false, true};
}

bool tangent_constant_on_line(const MultiPoly& f, const Line4& l) {
    require_contained(f, l, "tangent_constant_on_line");
    std::array<UniPoly, 4> g;
    bool any = false;
    for (int i = 0; i < 4; ++i) {
        g[i] = f.derivative(i).restrict_to_line(l.base, l.dir);
        any |= !g[i].is_zero();
    }
    if (!any) throw std::invalid_argument("tangent_constant_on_line: singular line");

    // reference gradient at a non-singular rational parameter
    Vec4 ref;
    bool found = false;
    for (long t = 0; t <= f.total_degree() + 1 && !found; t = (t >= 0 ? -(t + 1) : -t)) {
        Rational tau(t);
        Vec4 val;
        bool nonzero = false;
        for (int i = 0; i < 4; ++i) {
            val[i] = g[i].eval(tau);
            nonzero |= !val[i].is_zero();
        }
        if (nonzero) {
            ref = val;
            found = true;
        }
    }
    if (!found) throw std::invalid_argument("tangent_constant_on_line: no non-singular sample");

    // all 2x2 minors of (g(t), ref) must vanish identically
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            std::vector<Rational> ca(g[i].coeffs()), cb(g[j].coeffs());
            for (auto& x : ca) x *= ref[j];
            for (auto& x : cb) x *= ref[i];
            if (!(UniPoly(ca) - UniPoly(cb)).is_zero()) return false;
        }
    return true;
}

std::pair<MultiPoly, Point4> random_rotation(const MultiPoly& f, const Point4& p,
                                             std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::array<std::array<long, 4>, 4> u{};
    for (int i = 0; i < 4; ++i) u[i][i] = 1;
    for (int s = 0; s < 12; ++s) {
        int i = static_cast<int>(rng() % 4), j = static_cast<int>(rng() % 4);
        if (i == j) continue;
        long c = static_cast<long>(rng() % 3) - 1;
        for (int k = 0; k < 4; ++k) u[i][k] += c * u[j][k];
    }
    std::array<MultiPoly, 4> subs;
    for (int i = 0; i < 4; ++i) {
        MultiPoly s;
        for (int j = 0; j < 4; ++j)
            if (u[i][j] != 0) s = s + MultiPoly::variable(j).scaled(Rational(u[i][j]));
        subs[i] = s;
    }
    MultiPoly fr = f.substitute(subs);

    // p' = U^{-1} p via exact elimination
    RatMatrix m(4, 5);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) m.at(i, j) = Rational(u[i][j]);
        m.at(i, 4) = p[i];
    }
    m.rref();
    Point4 pr{m.at(0, 4), m.at(1, 4), m.at(2, 4), m.at(3, 4)};
    return {fr, pr};
}

}  // namespace inc4
