#include "inc4/macaulay.hpp"

#include <map>
#include <random>
#include <vector>

#include "inc4/linalg.hpp"

namespace inc4 {

namespace {

// Smallest i with alpha_i >= d_i; pigeonhole guarantees one exists for
// |alpha| = sum(d_i) - 3.
int owner_index(const Expo& a, const std::array<int, 4>& deg) {
    for (int i = 0; i < 4; ++i)
        if (a[i] >= deg[i]) return i;
    return -1;
}

bool is_reduced(const Expo& a, const std::array<int, 4>& deg) {
    int hits = 0;
    for (int i = 0; i < 4; ++i)
        if (a[i] >= deg[i]) ++hits;
    return hits == 1;
}

struct MacaulayPair {
    RatMatrix full;    // the numerator matrix
    RatMatrix sub;     // rows/cols on non-reduced monomials (denominator)
    bool sub_empty;    // empty submatrix has determinant 1
};

MacaulayPair build_matrices(const std::array<MultiPoly, 4>& F, const std::array<int, 4>& deg) {
    const int d = deg[0] + deg[1] + deg[2] + deg[3] - 3;
    std::vector<Expo> mons = exponents_of_degree(d);
    const int n = static_cast<int>(mons.size());
    std::map<Expo, int, GradedLexLess> col;
    for (int j = 0; j < n; ++j) col[mons[j]] = j;

    MacaulayPair out;
    out.full = RatMatrix(n, n);
    std::vector<int> nonreduced;
    for (int r = 0; r < n; ++r) {
        const Expo& a = mons[r];
        int i = owner_index(a, deg);
        Expo shift = a;
        shift[i] = static_cast<std::uint16_t>(shift[i] - deg[i]);
        for (const auto& [e, c] : F[i].terms()) {
            Expo target{static_cast<std::uint16_t>(e[0] + shift[0]),
                        static_cast<std::uint16_t>(e[1] + shift[1]),
                        static_cast<std::uint16_t>(e[2] + shift[2]),
                        static_cast<std::uint16_t>(e[3] + shift[3])};
            out.full.at(r, col.at(target)) = c;
        }
        if (!is_reduced(a, deg)) nonreduced.push_back(r);
    }

    const int m = static_cast<int>(nonreduced.size());
    out.sub_empty = (m == 0);
    out.sub = RatMatrix(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out.sub.at(i, j) = out.full.at(nonreduced[i], nonreduced[j]);
    return out;
}

// Random unimodular integer matrix: a product of elementary row operations.
std::array<std::array<long, 4>, 4> random_unimodular(std::mt19937_64& rng) {
    std::array<std::array<long, 4>, 4> u{};
    for (int i = 0; i < 4; ++i) u[i][i] = 1;
    for (int step = 0; step < 10; ++step) {
        int i = static_cast<int>(rng() % 4);
        int j = static_cast<int>(rng() % 4);
        if (i == j) continue;
        long c = static_cast<long>(rng() % 3) - 1;  // -1, 0, 1
        if (c == 0) c = 1;
        for (int k = 0; k < 4; ++k) u[i][k] += c * u[j][k];
    }
    return u;
}

std::array<MultiPoly, 4> apply_change(const std::array<MultiPoly, 4>& F,
                                      const std::array<std::array<long, 4>, 4>& u) {
    std::array<MultiPoly, 4> subs;
    for (int i = 0; i < 4; ++i) {
        MultiPoly s;
        for (int j = 0; j < 4; ++j)
            if (u[i][j] != 0) s = s + MultiPoly::variable(j).scaled(Rational(u[i][j]));
        subs[i] = s;
    }
    std::array<MultiPoly, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = F[i].substitute(subs);
    return out;
}

}  // namespace

Rational macaulay_resultant(const std::array<MultiPoly, 4>& forms,
                            const std::array<int, 4>& degrees,
                            const MacaulayOptions& opts) {
    for (int i = 0; i < 4; ++i) {
        if (forms[i].is_zero())
            throw zero_form_error("macaulay_resultant: degenerate system (form " +
                                  std::to_string(i + 1) + " is identically zero)");
        if (degrees[i] < 1)
            throw zero_form_error("macaulay_resultant: declared degree must be positive");
        if (!forms[i].is_homogeneous(degrees[i]))
            throw zero_form_error("macaulay_resultant: form " + std::to_string(i + 1) +
                                  " is not homogeneous of declared degree");
    }

    std::mt19937_64 rng(opts.seed);
    std::array<MultiPoly, 4> F = forms;
    bool numerator_always_zero = true;
    for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
        MacaulayPair mm = build_matrices(F, degrees);
        Rational denom = mm.sub_empty ? Rational(1) : fraction_free_det(mm.sub);
        if (!denom.is_zero()) {
            Rational numer = fraction_free_det(mm.full);
            return numer / denom;
        }
        if (!fraction_free_det(mm.full).is_zero()) numerator_always_zero = false;
        // Vanishing of the resultant is invariant under unimodular changes
        // of v; only the extraneous denominator factor moves.
        F = apply_change(forms, random_unimodular(rng));
    }
    // det(M) = Res * det(M') identically, so a vanishing numerator across
    // every sampled coordinate frame certifies Res = 0: a nonzero Res would
    // force det(M') = 0 at all samples, which generic frames rule out.
    if (numerator_always_zero) return Rational(0);
    throw macaulay_degenerate_error(
        "macaulay_resultant: ill-conditioned Macaulay choice (denominator vanished after retries)");
}

}  // namespace inc4
