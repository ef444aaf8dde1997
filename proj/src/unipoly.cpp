#include "inc4/unipoly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <sstream>
#include <stdexcept>

namespace inc4 {

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational UniPoly::eval(const Rational& t) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rational(static_cast<long>(i)) * c_[i];
    return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    Rational inv = leading().inv();
    std::vector<Rational> d(c_);
    for (auto& x : d) x *= inv;
    return UniPoly(std::move(d));
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<Rational> d(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i < c_.size()) d[i] += c_[i];
        if (i < o.c_.size()) d[i] += o.c_[i];
    }
    return UniPoly(std::move(d));
}

UniPoly UniPoly::operator-() const {
    std::vector<Rational> d(c_);
    for (auto& x : d) x = -x;
    return UniPoly(std::move(d));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly();
    std::vector<Rational> d(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) d[i + j] += c_[i] * o.c_[j];
    return UniPoly(std::move(d));
}

UniPoly UniPoly::rem(const UniPoly& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("UniPoly::rem: zero divisor");
    std::vector<Rational> r(c_);
    const auto& d = divisor.c_;
    const Rational lead_inv = divisor.leading().inv();
    while (r.size() >= d.size() && !r.empty()) {
        if (r.back().is_zero()) { r.pop_back(); continue; }
        Rational q = r.back() * lead_inv;
        std::size_t shift = r.size() - d.size();
        for (std::size_t i = 0; i < d.size(); ++i) r[shift + i] -= q * d[i];
        r.pop_back();
    }
    return UniPoly(std::move(r));
}

std::string UniPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = c_[i];
        if (c.is_zero()) continue;
        if (!first) os << (c.sign() > 0 ? " + " : " - ");
        else if (c.sign() < 0) os << "-";
        Rational a = c.abs();
        if (i == 0 || a != Rational(1)) {
            os << a.str();
            if (i > 0) os << "*";
        }
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

UniPoly uni_gcd(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("uni_gcd: both inputs zero");
    UniPoly x = a.monic(), y = b.monic();
    if (x.is_zero()) return y;
    while (!y.is_zero()) {
        UniPoly r = x.rem(y).monic();
        x = y;
        y = r;
    }
    return x.monic();
}

UniPoly square_free_part(const UniPoly& p) {
    if (p.is_zero()) return p;
    if (p.degree() == 0) return UniPoly::constant(Rational(1));
    UniPoly g = uni_gcd(p, p.derivative());
    if (g.degree() == 0) return p.monic();
    // exact division p / g
    UniPoly q;
    {
        std::vector<Rational> r(p.coeffs());
        const auto& d = g.coeffs();
        std::vector<Rational> qq(r.size() - d.size() + 1);
        const Rational lead_inv = g.leading().inv();
        while (r.size() >= d.size()) {
            while (!r.empty() && r.back().is_zero()) r.pop_back();
            if (r.size() < d.size()) break;
            Rational c = r.back() * lead_inv;
            std::size_t shift = r.size() - d.size();
            qq[shift] = c;
            for (std::size_t i = 0; i < d.size(); ++i) r[shift + i] -= c * d[i];
            r.pop_back();
        }
        q = UniPoly(std::move(qq));
    }
    return q.monic();
}

namespace {

int sign_variations(const std::vector<UniPoly>& chain, const Rational& x) {
    int var = 0, prev = 0;
    for (const auto& p : chain) {
        int s = p.eval(x).sign();
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

// Sign of p at +inf (dir=+1) or -inf (dir=-1).
int sign_at_infinity(const UniPoly& p, int dir) {
    if (p.is_zero()) return 0;
    int s = p.leading().sign();
    if (dir < 0 && p.degree() % 2 == 1) s = -s;
    return s;
}

int sign_variations_inf(const std::vector<UniPoly>& chain, int dir) {
    int var = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sign_at_infinity(p, dir);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

}  // namespace

int sturm_distinct_real_roots(const UniPoly& p, const std::optional<Interval>& itv) {
    if (p.is_zero())
        throw std::invalid_argument("sturm_distinct_real_roots: identically zero input");
    UniPoly f = square_free_part(p);
    if (f.degree() <= 0) return 0;

    // Scaling by positive constants keeps the chain's sign structure; monic
    // normalization would not (leading coefficients can be negative).
    auto positive_normalize = [](const UniPoly& p) {
        Rational s = p.leading().abs().inv();
        std::vector<Rational> c(p.coeffs());
        for (auto& x : c) x *= s;
        return UniPoly(std::move(c));
    };

    std::vector<UniPoly> chain;
    chain.push_back(f);
    chain.push_back(f.derivative());
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        UniPoly r = chain[chain.size() - 2].rem(chain.back());
        if (r.is_zero()) break;
        chain.push_back(positive_normalize(-r));
    }

    if (!itv) return sign_variations_inf(chain, -1) - sign_variations_inf(chain, +1);

    if (itv->lo >= itv->hi) return 0;
    // V(a) - V(b) counts roots in (a, b]; drop b if it is a root.
    int n = sign_variations(chain, itv->lo) - sign_variations(chain, itv->hi);
    if (f.eval(itv->hi).is_zero()) --n;
    return n;
}

std::complex<double> eval_complex(const UniPoly& p, std::complex<double> z) {
    std::complex<double> acc(0.0, 0.0);
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + it->to_double();
    return acc;
}

ComplexRoots complex_roots(const UniPoly& p, double tol) {
    if (p.degree() < 1) throw std::invalid_argument("complex_roots: degree must be >= 1");
    const int n = p.degree();
    UniPoly m = p.monic();

    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -m[i].to_double();
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;

    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);

    double scale = 0.0;
    for (const auto& c : m.coeffs()) scale += std::abs(c.to_double());
    if (scale == 0.0) scale = 1.0;

    UniPoly dm = m.derivative();
    ComplexRoots out;
    for (int i = 0; i < n; ++i) {
        std::complex<double> z(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
        // Newton polish; multiplicities make this slow to converge, so cap it.
        for (int it = 0; it < 8; ++it) {
            std::complex<double> fv = eval_complex(m, z);
            std::complex<double> dv = eval_complex(dm, z);
            if (std::abs(dv) < 1e-300) break;
            std::complex<double> step = fv / dv;
            if (std::abs(step) < 1e-18 * (1.0 + std::abs(z))) break;
            z -= step;
        }
        double res = std::abs(eval_complex(m, z)) / scale;
        out.max_residual = std::max(out.max_residual, res);
        out.roots.push_back(z);
    }
    out.converged = out.max_residual <= tol;
    return out;
}

}  // namespace inc4
