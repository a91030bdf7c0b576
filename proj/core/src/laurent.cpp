#include "qcpl/laurent.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qcpl {

Rational rational_pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0) {
        if (e < 0) throw std::domain_error("rational_pow: 0 to a negative power");
        return Rational(0);
    }
    Rational b = e > 0 ? base : Rational(1) / base;
    unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
    Rational acc(1);
    while (n > 0) {
        if (n & 1ul) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

namespace {

int checked_add(int a, int b) {
    long long s = static_cast<long long>(a) + b;
    if (s > std::numeric_limits<int>::max() || s < std::numeric_limits<int>::min())
        throw std::overflow_error("LaurentPoly: exponent overflow");
    return static_cast<int>(s);
}

// t1^e for unit-modulus t1, by squaring; exact for e = 0 and stable for small e.
std::complex<double> unit_pow(std::complex<double> t1, int e) {
    if (e == 0) return {1.0, 0.0};
    std::complex<double> b = e > 0 ? t1 : std::conj(t1);  // |t1| = 1: inverse is conjugate
    unsigned n = static_cast<unsigned>(e > 0 ? e : -e);
    std::complex<double> acc{1.0, 0.0};
    while (n > 0) {
        if (n & 1u) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

}  // namespace

LaurentPoly::LaurentPoly(const Rational& constant) {
    if (constant != 0) terms_[Monomial{}] = constant;
}

LaurentPoly LaurentPoly::monomial(const Rational& coeff, int p, int s, int t) {
    LaurentPoly out;
    if (coeff != 0) out.terms_[Monomial{p, s, t}] = coeff;
    return out;
}

void LaurentPoly::add_term(const Monomial& m, const Rational& coeff) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (coeff != 0) terms_.emplace(m, coeff);
        return;
    }
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& rhs) const {
    LaurentPoly out = *this;
    out += rhs;
    return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& rhs) const {
    LaurentPoly out = *this;
    for (const auto& [m, c] : rhs.terms_) out.add_term(m, -c);
    return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& rhs) const {
    LaurentPoly out;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : rhs.terms_) {
            Monomial m{checked_add(ma.p, mb.p), checked_add(ma.s, mb.s), checked_add(ma.t, mb.t)};
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

LaurentPoly LaurentPoly::conj() const {
    LaurentPoly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(Monomial{m.p, m.s, -m.t}, c);
    return out;
}

std::complex<double> LaurentPoly::eval(double q, double c, std::complex<double> t1) const {
    if (!(q > 1.0)) throw std::domain_error("LaurentPoly::eval: requires q > 1");
    if (!(c > 0.0)) throw std::domain_error("LaurentPoly::eval: requires c > 0");
    if (std::abs(std::abs(t1) - 1.0) > 1e-9)
        throw std::domain_error("LaurentPoly::eval: requires |t1| = 1");
    std::complex<double> acc{0.0, 0.0};
    const double sqrt_c = std::sqrt(c);
    for (const auto& [m, coeff] : terms_) {
        // P^p = q^-p, S^s = sqrt(c)^s
        double real_part = std::pow(q, -m.p) * std::pow(sqrt_c, m.s);
        acc += coeff.convert_to<double>() * real_part * unit_pow(t1, m.t);
    }
    return acc;
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool has_symbol = m.p != 0 || m.s != 0 || m.t != 0;
        bool wrote_coeff = false;
        if (mag != 1 || !has_symbol) {
            os << mag;
            wrote_coeff = true;
        }
        auto put = [&](const char* name, int e) {
            if (e == 0) return;
            if (wrote_coeff) os << "*";
            os << name;
            if (e != 1) os << "^" << e;
            wrote_coeff = true;
        };
        put("P", m.p);
        put("S", m.s);
        put("T", m.t);
    }
    return os.str();
}

}  // namespace qcpl
