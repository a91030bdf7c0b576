#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qcpl/ncwords.hpp"
#include "qcpl/qcp.hpp"

using namespace qcpl;

namespace {

const Gen A = Gen::Alpha;
const Gen As = Gen::AlphaStar;
const Gen G = Gen::Gamma;

std::mt19937 rng(77);

FreeWord random_word(int max_len = 8) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> gen(0, 2);
    FreeWord w(static_cast<std::size_t>(len(rng)));
    for (Gen& g : w) g = static_cast<Gen>(gen(rng));
    return w;
}

LaurentPoly random_coeff() {
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> expo(-2, 2);
    Rational r(num(rng) == 0 ? 1 : num(rng));
    return LaurentPoly::monomial(r, expo(rng), expo(rng), expo(rng));
}

NCElement random_element(int max_words = 3) {
    std::uniform_int_distribution<int> nwords(1, max_words);
    NCElement e;
    int n = nwords(rng);
    for (int i = 0; i < n; ++i) e = e + normalize_word(random_coeff(), random_word(5));
    return e;
}

// Max-entry distance between two matrices on the leading square block.
double block_dev(const Matrix& a, const Matrix& b, int block) {
    return (a - b).topLeftCorner(block, block).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("contraction rules") {
    NCElement aa = normalize_word(LaurentPoly::one(), {A, As});
    CHECK(aa == NCElement::one() - NCElement::term(LaurentPoly::P(2), NormalWord{2, 0}));

    NCElement asa = normalize_word(LaurentPoly::one(), {As, A});
    CHECK(asa == NCElement::one() - NCElement::term(LaurentPoly::one(), NormalWord{2, 0}));
}

TEST_CASE("gamma commutation") {
    CHECK(NCElement::generator(A) * NCElement::generator(G) ==
          NCElement::term(LaurentPoly::P(1), NormalWord{1, 1}));
    CHECK(NCElement::generator(G) * NCElement::generator(G) ==
          NCElement::term(LaurentPoly::one(), NormalWord{2, 0}));
}

TEST_CASE("hand-reduced alpha* gamma alpha") {
    // alpha* gamma alpha = q gamma alpha* alpha = q (gamma - gamma^3)
    NCElement lhs = normalize_word(LaurentPoly::one(), {As, G, A});
    NCElement rhs = NCElement::term(LaurentPoly::P(-1), NormalWord{1, 0}) -
                    NCElement::term(LaurentPoly::P(-1), NormalWord{3, 0});
    CHECK(lhs == rhs);

    // numeric cross-check in truncation, away from the boundary
    TruncationContext ctx(2.0, 1.0, Complex(1.0, 0.0), 64, 1e-10, 16);
    auto [alpha, gamma] = build_alpha_gamma(ctx);
    Matrix direct = alpha.adjoint() * gamma * alpha;
    Matrix reduced = realize(lhs, alpha, gamma, ctx);
    CHECK(block_dev(direct, reduced, ctx.trusted()) < 1e-10);
}

TEST_CASE("multiplication is associative") {
    for (int i = 0; i < 40; ++i) {
        NCElement a = random_element(), b = random_element(), c = random_element();
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("adjoint basics") {
    CHECK(NCElement::generator(A).adjoint() == NCElement::generator(As));

    // (T g a)* = T^-1 a* g = T^-1 P^-1 g a*
    NCElement x = NCElement::term(LaurentPoly::T(1), NormalWord{1, 1});
    NCElement expect =
        NCElement::term(LaurentPoly::T(-1) * LaurentPoly::P(-1), NormalWord{1, -1});
    CHECK(x.adjoint() == expect);
}

TEST_CASE("adjoint is an involutive anti-homomorphism") {
    for (int i = 0; i < 40; ++i) {
        NCElement x = random_element(), y = random_element();
        CHECK(x.adjoint().adjoint() == x);
        CHECK((x * y).adjoint() == y.adjoint() * x.adjoint());
    }
}

TEST_CASE("generator elements") {
    auto [x1, x2] = build_generators();
    REQUIRE(x1.terms().size() == 2);
    REQUIRE(x2.terms().size() == 2);
    CHECK(x1.terms().at(NormalWord{0, 1}) == LaurentPoly::S(1) * LaurentPoly::T(1));
    CHECK(x1.terms().at(NormalWord{1, 0}) == LaurentPoly::T(-1));
    CHECK(x2.terms().at(NormalWord{1, 0}) ==
          -(LaurentPoly::P(1) * LaurentPoly::S(1) * LaurentPoly::T(1)));
    CHECK(x2.terms().at(NormalWord{0, -1}) == LaurentPoly::T(-1));
}

TEST_CASE("linear generator identities") {
    auto [x1, x2] = build_generators();
    NCElement x1a_x1 = x1.adjoint() * x1;
    NCElement x2a_x2 = x2.adjoint() * x2;
    CHECK(verify_identity(x1a_x1 + x2a_x2 * LaurentPoly::P(-2),
                          NCElement::term(LaurentPoly::P(-2) + LaurentPoly::S(2), NormalWord{})));
    CHECK(verify_identity(x1 * x1.adjoint() + x2 * x2.adjoint(),
                          NCElement::term(LaurentPoly::one() + LaurentPoly::S(2), NormalWord{})));
    CHECK(verify_identity(x1a_x1 * x2a_x2, x2a_x2 * x1a_x1));
    // x2*x2 = 1 + c q^-2 - q^-2 x1*x1
    NCElement rhs = NCElement::term(LaurentPoly::one() + LaurentPoly::S(2) * LaurentPoly::P(2),
                                    NormalWord{}) -
                    x1a_x1 * LaurentPoly::P(2);
    CHECK(verify_identity(x2a_x2, rhs));
}

TEST_CASE("redundant starred relations collapse under gamma* = gamma") {
    // alpha gamma* - q^-1 gamma* alpha and gamma* alpha* - q^-1 alpha* gamma*
    NCElement lhs1 = normalize_word(LaurentPoly::one(), {A, G}) -
                     normalize_word(LaurentPoly::P(1), {G, A});
    CHECK(lhs1.is_zero());
    NCElement lhs2 = normalize_word(LaurentPoly::one(), {G, As}) -
                     normalize_word(LaurentPoly::P(1), {As, G});
    CHECK(lhs2.is_zero());
}

TEST_CASE("full symbolic identity suite proves") {
    for (const auto& check : symbolic_identity_suite()) {
        INFO(check.name);
        CHECK(check.proven);
    }
}

TEST_CASE("local confluence on the critical overlaps") {
    for (FreeWord w : {FreeWord{A, As, G}, FreeWord{As, A, G}, FreeWord{A, As, A},
                       FreeWord{As, A, As}}) {
        CHECK(normalize_word_from(LaurentPoly::one(), w, 0) ==
              normalize_word_from(LaurentPoly::one(), w, 1));
    }
}

TEST_CASE("termination: step count stays polynomial on random words") {
    for (int i = 0; i < 300; ++i) {
        FreeWord w = random_word(12);
        std::size_t steps = normalize_step_count(w);
        std::size_t len = w.size();
        CHECK(steps <= 25 * len * len * len + 50);
    }
}

TEST_CASE("cross-engine: symbolic expansions match matrix arithmetic") {
    TruncationContext ctx(2.0, 1.0, std::polar(1.0, 0.9), 64, 1e-10, 16);
    auto [alpha, gamma] = build_alpha_gamma(ctx);
    auto [m1, m2] = build_x_pair(ctx);
    auto [x1, x2] = build_generators();

    // the generators themselves, entrywise
    CHECK(block_dev(realize(x1, alpha, gamma, ctx), m1, ctx.n) < 1e-12);
    CHECK(block_dev(realize(x2, alpha, gamma, ctx), m2, ctx.n) < 1e-12);

    struct Case {
        CanonicalProduct which;
        Matrix direct;
    };
    std::vector<Case> cases;
    cases.push_back({CanonicalProduct::X1adjX1, m1.adjoint() * m1});
    cases.push_back({CanonicalProduct::X2adjX2, m2.adjoint() * m2});
    cases.push_back({CanonicalProduct::X1adjX2, m1.adjoint() * m2});
    cases.push_back({CanonicalProduct::X2adjX1, m2.adjoint() * m1});
    cases.push_back({CanonicalProduct::X1X1adj, m1 * m1.adjoint()});
    cases.push_back({CanonicalProduct::X2X2adj, m2 * m2.adjoint()});
    for (const auto& c : cases) {
        Matrix symbolic = realize(expand_canonical(c.which), alpha, gamma, ctx);
        CHECK(block_dev(symbolic, c.direct, ctx.trusted()) < 1e-10);
    }
}

TEST_CASE("cross-engine: random elements") {
    TruncationContext ctx(2.0, 1.0, Complex(1.0, 0.0), 64, 1e-10, 16);
    auto [alpha, gamma] = build_alpha_gamma(ctx);
    for (int i = 0; i < 10; ++i) {
        NCElement a = random_element(2), b = random_element(2);
        Matrix lhs = realize(a * b, alpha, gamma, ctx);
        Matrix rhs = realize(a, alpha, gamma, ctx) * realize(b, alpha, gamma, ctx);
        CHECK(block_dev(lhs, rhs, ctx.trusted()) < 1e-10);
    }
}

TEST_CASE("rendering") {
    CHECK(NCElement::zero().str() == "0");
    CHECK(NCElement::one().str() == "1 * 1");
    NCElement e = NCElement::term(LaurentPoly::S(1) * LaurentPoly::T(2), NormalWord{1, 1});
    CHECK(e.str() == "S*T^2 * g^1 * a^1");
    NCElement f = NCElement::term(LaurentPoly::one() - LaurentPoly::S(2), NormalWord{2, 0});
    CHECK(f.str() == "(1 - S^2) * g^2");
    NCElement g = NCElement::term(LaurentPoly::T(-1), NormalWord{0, -2});
    CHECK(g.str() == "T^-1 * A^2");
}
