#include "qcpl/ncwords.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qcpl {

namespace {

struct Pending {
    LaurentPoly coeff;
    FreeWord word;
};

// Leftmost redex position, or npos if the word is already normal.
std::size_t find_redex(const FreeWord& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        Gen x = w[i], y = w[i + 1];
        if (x == Gen::Gamma) continue;
        if (y == Gen::Gamma) return i;                       // a g, A g
        if (x != y) return i;                                // a A, A a
    }
    return static_cast<std::size_t>(-1);
}

bool is_redex(const FreeWord& w, std::size_t i) {
    if (i + 1 >= w.size()) return false;
    Gen x = w[i], y = w[i + 1];
    if (x == Gen::Gamma) return false;
    return y == Gen::Gamma || x != y;
}

// Applies the rule at redex position i, pushing the resulting branches.
void apply_rule(std::vector<Pending>& stack, const Pending& cur, std::size_t i) {
    Gen x = cur.word[i], y = cur.word[i + 1];
    if (y == Gen::Gamma) {
        // a g -> P g a   /   A g -> P^-1 g A
        Pending next{cur.coeff * LaurentPoly::P(x == Gen::Alpha ? 1 : -1), cur.word};
        std::swap(next.word[i], next.word[i + 1]);
        stack.push_back(std::move(next));
        return;
    }
    // Mixed ladder pair: a A -> 1 - P^2 g^2   /   A a -> 1 - g^2
    Pending unit{cur.coeff, {}};
    unit.word.reserve(cur.word.size() - 2);
    unit.word.insert(unit.word.end(), cur.word.begin(), cur.word.begin() + i);
    unit.word.insert(unit.word.end(), cur.word.begin() + i + 2, cur.word.end());

    Pending gg{x == Gen::Alpha ? -(cur.coeff * LaurentPoly::P(2)) : -cur.coeff, cur.word};
    gg.word[i] = Gen::Gamma;
    gg.word[i + 1] = Gen::Gamma;

    stack.push_back(std::move(unit));
    stack.push_back(std::move(gg));
}

NormalWord read_normal(const FreeWord& w) {
    NormalWord nw;
    std::size_t i = 0;
    while (i < w.size() && w[i] == Gen::Gamma) {
        ++nw.gpow;
        ++i;
    }
    for (; i < w.size(); ++i) nw.ladder += (w[i] == Gen::Alpha) ? 1 : -1;
    return nw;
}

NCElement run_rewriting(std::vector<Pending> stack, std::size_t* steps) {
    NCElement out;
    while (!stack.empty()) {
        Pending cur = std::move(stack.back());
        stack.pop_back();
        if (cur.coeff.is_zero()) continue;
        std::size_t i = find_redex(cur.word);
        if (i == static_cast<std::size_t>(-1)) {
            out.add(read_normal(cur.word), cur.coeff);
            continue;
        }
        if (steps) ++*steps;
        apply_rule(stack, cur, i);
    }
    return out;
}

FreeWord expand(const NormalWord& w) {
    FreeWord fw;
    fw.reserve(static_cast<std::size_t>(w.gpow) + static_cast<std::size_t>(std::abs(w.ladder)));
    fw.insert(fw.end(), static_cast<std::size_t>(w.gpow), Gen::Gamma);
    fw.insert(fw.end(), static_cast<std::size_t>(std::abs(w.ladder)),
              w.ladder > 0 ? Gen::Alpha : Gen::AlphaStar);
    return fw;
}

}  // namespace

NCElement normalize_word(const LaurentPoly& coeff, const FreeWord& word) {
    return run_rewriting({Pending{coeff, word}}, nullptr);
}

NCElement normalize_word_from(const LaurentPoly& coeff, const FreeWord& word, std::size_t pos) {
    if (!is_redex(word, pos))
        throw std::invalid_argument("normalize_word_from: no redex at given position");
    std::vector<Pending> stack;
    apply_rule(stack, Pending{coeff, word}, pos);
    return run_rewriting(std::move(stack), nullptr);
}

std::size_t normalize_step_count(const FreeWord& word) {
    std::size_t steps = 0;
    run_rewriting({Pending{LaurentPoly::one(), word}}, &steps);
    return steps;
}

void NCElement::add(const NormalWord& w, const LaurentPoly& coeff) {
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        if (!coeff.is_zero()) terms_.emplace(w, coeff);
        return;
    }
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
}

NCElement NCElement::generator(Gen g) {
    NormalWord w;
    if (g == Gen::Gamma)
        w.gpow = 1;
    else
        w.ladder = (g == Gen::Alpha) ? 1 : -1;
    return term(LaurentPoly::one(), w);
}

NCElement NCElement::term(const LaurentPoly& coeff, const NormalWord& w) {
    NCElement out;
    out.add(w, coeff);
    return out;
}

NCElement NCElement::operator+(const NCElement& rhs) const {
    NCElement out = *this;
    for (const auto& [w, c] : rhs.terms_) out.add(w, c);
    return out;
}

NCElement NCElement::operator-(const NCElement& rhs) const {
    NCElement out = *this;
    for (const auto& [w, c] : rhs.terms_) out.add(w, -c);
    return out;
}

NCElement NCElement::operator-() const {
    NCElement out;
    for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
    return out;
}

NCElement NCElement::operator*(const LaurentPoly& scalar) const {
    NCElement out;
    for (const auto& [w, c] : terms_) {
        LaurentPoly p = c * scalar;
        if (!p.is_zero()) out.terms_.emplace(w, std::move(p));
    }
    return out;
}

NCElement NCElement::operator*(const NCElement& rhs) const {
    NCElement out;
    for (const auto& [wa, ca] : terms_) {
        for (const auto& [wb, cb] : rhs.terms_) {
            FreeWord concat = expand(wa);
            FreeWord tail = expand(wb);
            concat.insert(concat.end(), tail.begin(), tail.end());
            NCElement piece = normalize_word(ca * cb, concat);
            for (const auto& [w, c] : piece.terms()) out.add(w, c);
        }
    }
    return out;
}

NCElement NCElement::adjoint() const {
    NCElement out;
    for (const auto& [w, c] : terms_) {
        FreeWord fw = expand(w);
        std::reverse(fw.begin(), fw.end());
        for (Gen& g : fw) {
            if (g == Gen::Alpha)
                g = Gen::AlphaStar;
            else if (g == Gen::AlphaStar)
                g = Gen::Alpha;
        }
        NCElement piece = normalize_word(c.conj(), fw);
        for (const auto& [nw, nc] : piece.terms()) out.add(nw, nc);
    }
    return out;
}

std::string NCElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        bool multi = c.terms().size() > 1;
        std::string coeff = c.str();
        if (!first && !multi && coeff.starts_with('-')) {
            os << " - ";
            coeff.erase(0, 1);
        } else if (!first) {
            os << " + ";
        }
        first = false;
        os << (multi ? "(" : "") << coeff << (multi ? ")" : "");
        if (w.gpow != 0) os << " * g^" << w.gpow;
        if (w.ladder > 0) os << " * a^" << w.ladder;
        if (w.ladder < 0) os << " * A^" << -w.ladder;
        if (w.gpow == 0 && w.ladder == 0) os << " * 1";
    }
    return os.str();
}

std::pair<NCElement, NCElement> build_generators() {
    // x1 = sqrt(c) t1 alpha + t2 gamma,  x2 = -q^-1 sqrt(c) t1 gamma + t2 alpha*
    // with t2 = conj(t1) = T^-1.
    NCElement x1 = NCElement::term(LaurentPoly::S() * LaurentPoly::T(), NormalWord{0, 1}) +
                   NCElement::term(LaurentPoly::T(-1), NormalWord{1, 0});
    NCElement x2 = NCElement::term(-(LaurentPoly::P() * LaurentPoly::S() * LaurentPoly::T()),
                                   NormalWord{1, 0}) +
                   NCElement::term(LaurentPoly::T(-1), NormalWord{0, -1});
    return {x1, x2};
}

NCElement expand_canonical(CanonicalProduct which) {
    auto [x1, x2] = build_generators();
    switch (which) {
        case CanonicalProduct::X1adjX1: return x1.adjoint() * x1;
        case CanonicalProduct::X2adjX2: return x2.adjoint() * x2;
        case CanonicalProduct::X1adjX2: return x1.adjoint() * x2;
        case CanonicalProduct::X2adjX1: return x2.adjoint() * x1;
        case CanonicalProduct::X1X1adj: return x1 * x1.adjoint();
        case CanonicalProduct::X2X2adj: return x2 * x2.adjoint();
    }
    throw std::invalid_argument("expand_canonical: unknown product");
}

bool verify_identity(const NCElement& lhs, const NCElement& rhs) {
    return (lhs - rhs).is_zero();
}

namespace {

const Gen kA = Gen::Alpha;
const Gen kAs = Gen::AlphaStar;
const Gen kG = Gen::Gamma;

NCElement word(const LaurentPoly& coeff, std::initializer_list<Gen> gens) {
    return normalize_word(coeff, FreeWord(gens));
}

LaurentPoly S(int k) { return LaurentPoly::S(k); }
LaurentPoly P(int k) { return LaurentPoly::P(k); }
LaurentPoly T(int k) { return LaurentPoly::T(k); }

// The closed forms of the six canonical products, entered term by term from
// their displayed shapes (c = S^2, q^-1 = P, t1 = T, t2 = T^-1).
NCElement closed_x1adj_x1() {
    // c + (1-c) g^2 + sqrt(c) t1^-2 A g + sqrt(c) t1^2 g a
    return NCElement::term(S(2), {}) + word(LaurentPoly::one() - S(2), {kG, kG}) +
           word(S(1) * T(-2), {kAs, kG}) + word(S(1) * T(2), {kG, kA});
}

NCElement closed_x2adj_x2() {
    // 1 + q^-2 (c-1) g^2 - q^-1 sqrt(c) t1^2 a g - q^-1 sqrt(c) t1^-2 g A
    return NCElement::one() + word(P(2) * (S(2) - LaurentPoly::one()), {kG, kG}) -
           word(P(1) * S(1) * T(2), {kA, kG}) - word(P(1) * S(1) * T(-2), {kG, kAs});
}

NCElement closed_x2adj_x2_alt() {
    // ... - q^-2 sqrt(c) t1^2 g a - q^-2 sqrt(c) t1^-2 A g
    return NCElement::one() + word(P(2) * (S(2) - LaurentPoly::one()), {kG, kG}) -
           word(P(2) * S(1) * T(2), {kG, kA}) - word(P(2) * S(1) * T(-2), {kAs, kG});
}

NCElement closed_x1adj_x2() {
    // sqrt(c) t1^-2 A^2 - c q^-1 A g + g A - q^-1 sqrt(c) t1^2 g^2
    return word(S(1) * T(-2), {kAs, kAs}) - word(S(2) * P(1), {kAs, kG}) + word(1, {kG, kAs}) -
           word(P(1) * S(1) * T(2), {kG, kG});
}

NCElement closed_x2adj_x1() {
    // sqrt(c) t1^2 a^2 - c q^-1 g a + a g - q^-1 sqrt(c) t1^-2 g^2
    return word(S(1) * T(2), {kA, kA}) - word(S(2) * P(1), {kG, kA}) + word(1, {kA, kG}) -
           word(P(1) * S(1) * T(-2), {kG, kG});
}

NCElement closed_x1x1adj() {
    // c - c q^-2 g^2 + sqrt(c) t1^2 q^-1 g a + sqrt(c) t2^2 q^-1 A g + g^2
    return NCElement::term(S(2), {}) - word(S(2) * P(2), {kG, kG}) +
           word(S(1) * T(2) * P(1), {kG, kA}) + word(S(1) * T(-2) * P(1), {kAs, kG}) +
           word(1, {kG, kG});
}

NCElement closed_x2x2adj() {
    // 1 - g^2 - q^-1 sqrt(c) t2^2 A g - q^-1 sqrt(c) t1^2 g a + q^-2 c g^2
    return NCElement::one() - word(1, {kG, kG}) - word(P(1) * S(1) * T(-2), {kAs, kG}) -
           word(P(1) * S(1) * T(2), {kG, kA}) + word(P(2) * S(2), {kG, kG});
}

bool confluent_overlap(std::initializer_list<Gen> gens) {
    FreeWord w(gens);
    return normalize_word_from(LaurentPoly::one(), w, 0) ==
           normalize_word_from(LaurentPoly::one(), w, 1);
}

}  // namespace

std::vector<SymbolicCheck> symbolic_identity_suite() {
    std::vector<SymbolicCheck> out;
    auto check = [&out](std::string name, bool proven) {
        out.push_back({std::move(name), proven});
    };

    check("expand x1*x1", expand_canonical(CanonicalProduct::X1adjX1) == closed_x1adj_x1());
    check("expand x2*x2", expand_canonical(CanonicalProduct::X2adjX2) == closed_x2adj_x2());
    check("expand x2*x2 (second display)",
          expand_canonical(CanonicalProduct::X2adjX2) == closed_x2adj_x2_alt());
    check("expand x1*x2", expand_canonical(CanonicalProduct::X1adjX2) == closed_x1adj_x2());
    check("expand x2*x1", expand_canonical(CanonicalProduct::X2adjX1) == closed_x2adj_x1());
    check("expand x1x1*", expand_canonical(CanonicalProduct::X1X1adj) == closed_x1x1adj());
    check("expand x2x2*", expand_canonical(CanonicalProduct::X2X2adj) == closed_x2x2adj());

    NCElement x1a_x1 = expand_canonical(CanonicalProduct::X1adjX1);
    NCElement x2a_x2 = expand_canonical(CanonicalProduct::X2adjX2);
    NCElement x1_x1a = expand_canonical(CanonicalProduct::X1X1adj);
    NCElement x2_x2a = expand_canonical(CanonicalProduct::X2X2adj);

    check("x1*x1 + q^2 x2*x2 = q^2 + c",
          verify_identity(x1a_x1 + x2a_x2 * P(-2),
                          NCElement::term(P(-2) + S(2), NormalWord{})));
    check("x1x1* + x2x2* = 1 + c",
          verify_identity(x1_x1a + x2_x2a, NCElement::term(LaurentPoly::one() + S(2), NormalWord{})));
    check("[x1*x1, x2*x2] = 0", verify_identity(x1a_x1 * x2a_x2, x2a_x2 * x1a_x1));
    check("[x1x1*, x2x2*] = 0", verify_identity(x1_x1a * x2_x2a, x2_x2a * x1_x1a));

    check("confluence a A g", confluent_overlap({kA, kAs, kG}));
    check("confluence A a g", confluent_overlap({kAs, kA, kG}));
    check("confluence a A a", confluent_overlap({kA, kAs, kA}));
    check("confluence A a A", confluent_overlap({kAs, kA, kAs}));
    return out;
}

}  // namespace qcpl
