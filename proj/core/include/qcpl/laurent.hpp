#pragma once

#include <complex>
#include <compare>
#include <map>
#include <string>

#include "qcpl/rational.hpp"

namespace qcpl {

/// Exponent triple of a Laurent monomial in the formal symbols
///   P = q^-1,  S = sqrt(c),  T = t1  (all formally invertible).
/// The circle conjugate of T is represented as T^-1; P and S are real positive.
struct Monomial {
    int p = 0;
    int s = 0;
    int t = 0;

    auto operator<=>(const Monomial&) const = default;
};

/// Laurent polynomial over the rationals in P, S, T.
///
/// Canonical form: the term map never stores a zero coefficient, so two values
/// are equal iff their maps are identical. All arithmetic is exact.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(const Rational& constant);
    LaurentPoly(long constant) : LaurentPoly(Rational(constant)) {}

    static LaurentPoly monomial(const Rational& coeff, int p, int s, int t);
    static LaurentPoly zero() { return {}; }
    static LaurentPoly one() { return LaurentPoly(Rational(1)); }
    /// P^k, S^k, T^k as polynomials.
    static LaurentPoly P(int k = 1) { return monomial(1, k, 0, 0); }
    static LaurentPoly S(int k = 1) { return monomial(1, 0, k, 0); }
    static LaurentPoly T(int k = 1) { return monomial(1, 0, 0, k); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    LaurentPoly operator-() const;
    LaurentPoly operator+(const LaurentPoly& rhs) const;
    LaurentPoly operator-(const LaurentPoly& rhs) const;
    LaurentPoly operator*(const LaurentPoly& rhs) const;
    LaurentPoly& operator+=(const LaurentPoly& rhs);

    bool operator==(const LaurentPoly&) const = default;

    /// Complex conjugation: fixes P and S (real positive), maps T -> T^-1.
    /// An involutive ring homomorphism (coefficients are rational, hence real).
    LaurentPoly conj() const;

    /// Substitutes P = 1/q, S = sqrt(c), T = t1 and converts to a complex double
    /// at the last step. Requires q > 1, c > 0 and |t1| = 1.
    std::complex<double> eval(double q, double c, std::complex<double> t1) const;

    /// Deterministic rendering, e.g. "1 - S^2" or "-1/2*P*S*T^-2".
    std::string str() const;

private:
    void add_term(const Monomial& m, const Rational& coeff);

    std::map<Monomial, Rational> terms_;
};

}  // namespace qcpl
