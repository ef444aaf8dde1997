#include "inc4/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace inc4 {

Rational::Rational(long n, long d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(n) / mpq_class(d);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inv() const {
    if (is_zero()) throw std::invalid_argument("Rational: inverse of zero");
    return Rational(mpq_class(1) / v_);
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class n(s);
            return Rational(n);
        }
        mpz_class n(s.substr(0, slash));
        mpz_class d(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator");
        return Rational(n, d);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    }
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::size_t hash_mpz(const mpz_class& z) {
    // Residues mod two large primes; cheap and stable.
    unsigned long a = mpz_fdiv_ui(z.get_mpz_t(), 0xFFFFFFFFFFFFFFC5UL);
    unsigned long b = mpz_fdiv_ui(z.get_mpz_t(), 4294967291UL);
    std::size_t h = a;
    h = hash_combine(h, b);
    if (sgn(z) < 0) h = hash_combine(h, 0x5bd1e995u);
    return h;
}

std::size_t Rational::hash() const {
    return hash_combine(hash_mpz(num()), hash_mpz(den()));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Vec4 operator+(const Vec4& a, const Vec4& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

Vec4 operator-(const Vec4& a, const Vec4& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

Vec4 operator*(const Rational& c, const Vec4& v) {
    return {c * v[0], c * v[1], c * v[2], c * v[3]};
}

Rational dot(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

bool is_zero(const Vec4& v) {
    return v[0].is_zero() && v[1].is_zero() && v[2].is_zero() && v[3].is_zero();
}

std::size_t hash_vec4(const Vec4& v) {
    std::size_t h = 0x1234abcd;
    for (const auto& c : v) h = hash_combine(h, c.hash());
    return h;
}

}  // namespace inc4
