#include "inc4/multipoly.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace inc4 {

MultiPoly MultiPoly::constant(const Rational& c) {
    MultiPoly p;
    p.add_term({0, 0, 0, 0}, c);
    return p;
}

MultiPoly MultiPoly::monomial(const Rational& c, const Expo& e) {
    MultiPoly p;
    p.add_term(e, c);
    return p;
}

MultiPoly MultiPoly::variable(int axis) {
    if (axis < 0 || axis > 3) throw std::invalid_argument("MultiPoly::variable: axis out of range");
    Expo e{0, 0, 0, 0};
    e[axis] = 1;
    return monomial(Rational(1), e);
}

void MultiPoly::add_term(const Expo& e, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int MultiPoly::total_degree() const {
    if (terms_.empty()) return -1;
    return expo_degree(terms_.rbegin()->first);  // graded order: last term is max degree
}

bool MultiPoly::is_homogeneous(int d) const {
    for (const auto& [e, c] : terms_)
        if (expo_degree(e) != d) return false;
    return true;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly r(*this);
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly r(*this);
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
    MultiPoly r;
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, c * k);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly r;
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Expo e{static_cast<std::uint16_t>(ea[0] + eb[0]),
                   static_cast<std::uint16_t>(ea[1] + eb[1]),
                   static_cast<std::uint16_t>(ea[2] + eb[2]),
                   static_cast<std::uint16_t>(ea[3] + eb[3])};
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Rational MultiPoly::eval(const Vec4& p) const {
    // Cache powers of each coordinate up to the needed exponent.
    std::array<std::vector<Rational>, 4> pw;
    for (int i = 0; i < 4; ++i) pw[i].push_back(Rational(1));
    Rational acc;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < 4; ++i) {
            while (pw[i].size() <= e[i]) pw[i].push_back(pw[i].back() * p[i]);
            if (e[i] > 0) t *= pw[i][e[i]];
        }
        acc += t;
    }
    return acc;
}

MultiPoly MultiPoly::derivative(int axis) const {
    if (axis < 0 || axis > 3) throw std::invalid_argument("MultiPoly::derivative: unknown axis");
    MultiPoly r;
    for (const auto& [e, c] : terms_) {
        if (e[axis] == 0) continue;
        Expo d = e;
        d[axis] -= 1;
        r.add_term(d, c * Rational(static_cast<long>(e[axis])));
    }
    return r;
}

UniPoly MultiPoly::restrict_to_line(const Vec4& base, const Vec4& dir) const {
    if (inc4::is_zero(dir)) throw std::invalid_argument("restrict_to_line: zero direction");
    std::array<std::vector<UniPoly>, 4> pw;  // pw[i][k] = (base_i + t*dir_i)^k
    for (int i = 0; i < 4; ++i) {
        pw[i].push_back(UniPoly::constant(Rational(1)));
        pw[i].push_back(UniPoly({base[i], dir[i]}));
    }
    UniPoly acc;
    for (const auto& [e, c] : terms_) {
        UniPoly t = UniPoly::constant(c);
        for (int i = 0; i < 4; ++i) {
            while (pw[i].size() <= e[i]) pw[i].push_back(pw[i].back() * pw[i][1]);
            if (e[i] > 0) t = t * pw[i][e[i]];
        }
        acc = acc + t;
    }
    return acc;
}

MultiPoly MultiPoly::substitute(const std::array<MultiPoly, 4>& subs) const {
    std::array<std::vector<MultiPoly>, 4> pw;
    for (int i = 0; i < 4; ++i) {
        pw[i].push_back(MultiPoly::constant(Rational(1)));
        pw[i].push_back(subs[i]);
    }
    MultiPoly acc;
    for (const auto& [e, c] : terms_) {
        MultiPoly t = MultiPoly::constant(c);
        for (int i = 0; i < 4; ++i) {
            while (pw[i].size() <= e[i]) pw[i].push_back(pw[i].back() * pw[i][1]);
            if (e[i] > 0) t = t * pw[i][e[i]];
        }
        acc = acc + t;
    }
    return acc;
}

std::size_t MultiPoly::hash() const {
    std::size_t h = 0x77aa55;
    for (const auto& [e, c] : terms_) {
        std::size_t he = (std::size_t)e[0] | ((std::size_t)e[1] << 16) | ((std::size_t)e[2] << 32) |
                         ((std::size_t)e[3] << 48);
        h = hash_combine(h, he);
        h = hash_combine(h, c.hash());
    }
    return h;
}

std::string MultiPoly::str(const std::array<std::string, 4>& vars) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        os << a.str();
        for (int i = 0; i < 4; ++i) {
            if (e[i] == 0) continue;
            os << " " << vars[i];
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

namespace {

struct Parser {
    const std::string& s;
    std::size_t i = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == '*')) ++i;
    }
    bool done() { return i >= s.size(); }
    char peek() { return s[i]; }

    std::string number() {
        std::size_t start = i;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
        if (start == i) throw std::invalid_argument("polynomial parse: expected number at '" +
                                                    s.substr(start, 8) + "'");
        return s.substr(start, i - start);
    }

    int exponent() {
        skip_ws();
        if (done() || peek() != '^') return 1;
        ++i;
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i) throw std::invalid_argument("polynomial parse: bad exponent");
        return std::stoi(s.substr(start, i - start));
    }
};

}  // namespace

MultiPoly MultiPoly::parse(const std::string& text) {
    Parser p(text);
    MultiPoly out;
    p.skip_ws();
    if (p.done()) return out;
    while (true) {
        int sign = 1;
        p.skip_ws();
        while (!p.done() && (p.peek() == '+' || p.peek() == '-')) {
            if (p.peek() == '-') sign = -sign;
            ++p.i;
            p.skip_ws();
        }
        if (p.done()) throw std::invalid_argument("polynomial parse: dangling sign");

        Rational coef(1);
        bool saw_anything = false;
        if (std::isdigit(static_cast<unsigned char>(p.peek()))) {
            coef = Rational::parse(p.number());
            saw_anything = true;
        }
        Expo e{0, 0, 0, 0};
        while (true) {
            p.skip_ws();
            if (p.done()) break;
            char c = p.peek();
            int axis = -1;
            if (c == 'x') axis = 0;
            else if (c == 'y') axis = 1;
            else if (c == 'z') axis = 2;
            else if (c == 'w') axis = 3;
            if (axis < 0) break;
            ++p.i;
            int ex = p.exponent();
            e[axis] = static_cast<std::uint16_t>(e[axis] + ex);
            saw_anything = true;
        }
        if (!saw_anything)
            throw std::invalid_argument("polynomial parse: empty term in '" + text + "'");
        out.add_term(e, sign > 0 ? coef : -coef);
        p.skip_ws();
        if (p.done()) break;
        if (p.peek() != '+' && p.peek() != '-')
            throw std::invalid_argument(std::string("polynomial parse: unexpected character '") +
                                        p.peek() + "'");
    }
    return out;
}

std::array<MultiPoly, 4> gradient(const MultiPoly& f) {
    return {f.derivative(0), f.derivative(1), f.derivative(2), f.derivative(3)};
}

std::vector<Expo> exponents_of_degree(int d) {
    std::vector<Expo> out;
    for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b)
            for (int c = d - a - b; c >= 0; --c) {
                int e = d - a - b - c;
                out.push_back(Expo{static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b),
                                   static_cast<std::uint16_t>(c), static_cast<std::uint16_t>(e)});
            }
    return out;
}

std::array<MultiPoly, 4> osculation_forms(const MultiPoly& f, const Vec4& p) {
    // F_i(p; v) = sum_{|a|=i} (i!/a!) d^a f(p) v^a. Partials are built
    // incrementally along graded-lex chains and memoized.
    std::map<Expo, MultiPoly, GradedLexLess> partials;
    partials.emplace(Expo{0, 0, 0, 0}, f);

    auto get_partial = [&](const Expo& a) -> const MultiPoly& {
        auto it = partials.find(a);
        if (it != partials.end()) return it->second;
        std::vector<Expo> chainup;
        Expo cur = a;
        while (partials.find(cur) == partials.end()) {
            chainup.push_back(cur);
            for (int i = 0; i < 4; ++i)
                if (cur[i] > 0) {
                    cur[i] -= 1;
                    break;
                }
        }
        for (auto rit = chainup.rbegin(); rit != chainup.rend(); ++rit) {
            Expo prev = *rit;
            int axis = -1;
            for (int i = 0; i < 4; ++i)
                if ((*rit)[i] > 0) {
                    axis = i;
                    prev[i] -= 1;
                    break;
                }
            partials.emplace(*rit, partials.at(prev).derivative(axis));
        }
        return partials.at(a);
    };

    static const long fact[5] = {1, 1, 2, 6, 24};
    std::array<MultiPoly, 4> F;
    for (int order = 1; order <= 4; ++order) {
        MultiPoly form;
        for (const Expo& a : exponents_of_degree(order)) {
            Rational val = get_partial(a).eval(p);
            if (val.is_zero()) continue;
            long multinom = fact[order] / (fact[a[0]] * fact[a[1]] * fact[a[2]] * fact[a[3]]);
            form.add_term(a, val * Rational(multinom));
        }
        F[order - 1] = form;
    }
    return F;
}

}  // namespace inc4
