#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "qcpl/laurent.hpp"

using namespace qcpl;

namespace {

std::mt19937 rng(20240811);

Rational random_rational() {
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 9);
    return Rational(num(rng), den(rng));
}

LaurentPoly random_poly(int max_terms = 5, int max_exp = 4) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> expo(-max_exp, max_exp);
    LaurentPoly p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i)
        p += LaurentPoly::monomial(random_rational(), expo(rng), expo(rng), expo(rng));
    return p;
}

// Independent oracle for addition: merge term maps by hand and cancel.
LaurentPoly reference_add(const LaurentPoly& a, const LaurentPoly& b) {
    std::map<Monomial, Rational> merged;
    for (const auto& [m, c] : a.terms()) merged[m] += c;
    for (const auto& [m, c] : b.terms()) merged[m] += c;
    LaurentPoly out;
    for (const auto& [m, c] : merged)
        if (c != 0) out += LaurentPoly::monomial(c, m.p, m.s, m.t);
    return out;
}

}  // namespace

TEST_CASE("unit pair P * P^-1 = 1") {
    CHECK(LaurentPoly::P(1) * LaurentPoly::P(-1) == LaurentPoly::one());
}

TEST_CASE("difference of squares (S^2+1)(S^2-1) = S^4-1") {
    LaurentPoly lhs = (LaurentPoly::S(2) + LaurentPoly::one()) *
                      (LaurentPoly::S(2) - LaurentPoly::one());
    CHECK(lhs == LaurentPoly::S(4) - LaurentPoly::one());
}

TEST_CASE("x + (-x) = 0 against the reference adder") {
    for (int i = 0; i < 200; ++i) {
        LaurentPoly x = random_poly();
        CHECK((x + (-x)).is_zero());
        LaurentPoly y = random_poly();
        CHECK(x + y == reference_add(x, y));
    }
}

TEST_CASE("ring axioms on random inputs") {
    for (int i = 0; i < 100; ++i) {
        LaurentPoly a = random_poly(), b = random_poly(), c = random_poly();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("conjugation") {
    CHECK(LaurentPoly::T(1).conj() == LaurentPoly::T(-1));
    CHECK((LaurentPoly::S(1) * LaurentPoly::T(2)).conj() ==
          LaurentPoly::S(1) * LaurentPoly::T(-2));
    for (int i = 0; i < 100; ++i) {
        LaurentPoly x = random_poly(), y = random_poly();
        CHECK(x.conj().conj() == x);
        CHECK((x * y).conj() == x.conj() * y.conj());
    }
}

TEST_CASE("eval at pinned points") {
    LaurentPoly a = LaurentPoly::P(-2) + LaurentPoly::S(2);  // q^2 + c
    CHECK(std::abs(a.eval(2.0, 1.0, {1.0, 0.0}) - 5.0) < 1e-14);

    LaurentPoly unit = LaurentPoly::T(1) * LaurentPoly::T(-1);
    CHECK(std::abs(unit.eval(3.0, 2.0, std::polar(1.0, 0.7)) - 1.0) < 1e-14);

    LaurentPoly b = LaurentPoly::one() - LaurentPoly::P(2);  // 1 - q^-2
    CHECK(std::abs(b.eval(2.0, 1.0, {1.0, 0.0}) - 0.75) < 1e-14);
}

TEST_CASE("eval domain errors") {
    LaurentPoly x = LaurentPoly::P(1);
    CHECK_THROWS_AS(x.eval(1.0, 1.0, {1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(x.eval(0.5, 1.0, {1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(x.eval(2.0, 0.0, {1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(x.eval(2.0, -1.0, {1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(x.eval(2.0, 1.0, {2.0, 0.0}), std::domain_error);
}

TEST_CASE("eval is a ring homomorphism") {
    std::complex<double> t1 = std::polar(1.0, 1.1);
    for (int i = 0; i < 100; ++i) {
        LaurentPoly a = random_poly(), b = random_poly();
        auto lhs = (a * b).eval(1.7, 0.6, t1);
        auto rhs = a.eval(1.7, 0.6, t1) * b.eval(1.7, 0.6, t1);
        double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        CHECK(std::abs(lhs - rhs) / scale < 1e-12);
    }
}

TEST_CASE("conj then eval equals conjugate of eval") {
    std::complex<double> t1 = std::polar(1.0, -0.4);
    for (int i = 0; i < 100; ++i) {
        LaurentPoly x = random_poly();
        auto lhs = x.conj().eval(2.5, 1.3, t1);
        auto rhs = std::conj(x.eval(2.5, 1.3, t1));
        double scale = std::max(1.0, std::abs(rhs));
        CHECK(std::abs(lhs - rhs) / scale < 1e-12);
    }
}

TEST_CASE("exponent overflow is a hard error") {
    LaurentPoly big = LaurentPoly::monomial(1, std::numeric_limits<int>::max() - 1, 0, 0);
    CHECK_THROWS_AS(big * big, std::overflow_error);
}

TEST_CASE("rendering") {
    CHECK(LaurentPoly::zero().str() == "0");
    CHECK(LaurentPoly(Rational(3, 2)).str() == "3/2");
    CHECK((LaurentPoly::one() - LaurentPoly::S(2)).str() == "1 - S^2");
    CHECK(LaurentPoly::monomial(Rational(-1, 2), 1, 1, -2).str() == "-1/2*P*S*T^-2");
}

TEST_CASE("rational_pow") {
    CHECK(rational_pow(Rational(6, 5), -2) == Rational(25, 36));
    CHECK(rational_pow(Rational(2), 0) == Rational(1));
    CHECK_THROWS_AS(rational_pow(Rational(0), -1), std::domain_error);
}
