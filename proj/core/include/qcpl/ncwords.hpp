#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcpl/laurent.hpp"

namespace qcpl {

/// Generators of the *-algebra: a = alpha, A = alpha*, g = gamma (self-adjoint).
enum class Gen : std::uint8_t { Alpha, AlphaStar, Gamma };

using FreeWord = std::vector<Gen>;

/// A basis word of the normal form: gamma^gpow followed by a pure ladder block.
/// ladder > 0 encodes alpha^ladder, ladder < 0 encodes (alpha*)^(-ladder),
/// ladder = 0 encodes no ladder factor.
struct NormalWord {
    int gpow = 0;
    int ladder = 0;

    auto operator<=>(const NormalWord&) const = default;
};

/// Finite linear combination of NormalWords with LaurentPoly coefficients,
/// always fully reduced under the rewriting system
///
///   a g  -> P g a          (from  alpha gamma = q^-1 gamma alpha)
///   A g  -> P^-1 g A       (from  gamma alpha* = q^-1 alpha* gamma)
///   a A  -> 1 - P^2 g^2    (from  alpha alpha* + q^-2 gamma^2 = 1)
///   A a  -> 1 - g^2        (from  alpha* alpha + gamma^2 = 1)
///
/// which moves every gamma leftmost and contracts mixed ladder pairs. The
/// system terminates and is locally confluent on its critical overlaps, so
/// equality of elements is decided by normal-form identity.
class NCElement {
public:
    NCElement() = default;

    static NCElement zero() { return {}; }
    static NCElement one() { return term(LaurentPoly::one(), NormalWord{}); }
    static NCElement generator(Gen g);
    /// A single already-normal term coeff * g^gpow * ladder-block.
    static NCElement term(const LaurentPoly& coeff, const NormalWord& w);

    const std::map<NormalWord, LaurentPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    NCElement operator+(const NCElement& rhs) const;
    NCElement operator-(const NCElement& rhs) const;
    NCElement operator*(const NCElement& rhs) const;   // concatenate + renormalize
    NCElement operator*(const LaurentPoly& scalar) const;
    NCElement operator-() const;

    bool operator==(const NCElement&) const = default;

    /// *-operation: reverses words, swaps alpha <-> alpha*, fixes gamma,
    /// conjugates coefficients, renormalizes.
    NCElement adjoint() const;

    /// Rendering used verbatim in CLI output: one term per "coef * g^b * a^c"
    /// (or "A^a"), multi-term coefficients parenthesized.
    std::string str() const;

    void add(const NormalWord& w, const LaurentPoly& coeff);

private:
    std::map<NormalWord, LaurentPoly> terms_;
};

/// Exhaustively rewrites coeff * word into normal form.
NCElement normalize_word(const LaurentPoly& coeff, const FreeWord& word);

/// Rewrites like normalize_word but forces the first reduction to happen at
/// the redex starting at position pos (used by the local-confluence tests).
/// Throws std::invalid_argument if word[pos], word[pos+1] is not a redex.
NCElement normalize_word_from(const LaurentPoly& coeff, const FreeWord& word, std::size_t pos);

/// Number of rule applications performed while normalizing word (all branches).
std::size_t normalize_step_count(const FreeWord& word);

/// The distinguished generators x1 = S T a + T^-1 g and x2 = -P S T g + T^-1 A.
std::pair<NCElement, NCElement> build_generators();

enum class CanonicalProduct { X1adjX1, X2adjX2, X1adjX2, X2adjX1, X1X1adj, X2X2adj };

/// Fully reduced expansion of one of the six canonical generator products.
NCElement expand_canonical(CanonicalProduct which);

/// True iff lhs - rhs reduces to the zero element (an exact identity proof at
/// the level of the presented relations).
bool verify_identity(const NCElement& lhs, const NCElement& rhs);

struct SymbolicCheck {
    std::string name;
    bool proven;
};

/// The exact identity suite: the six canonical expansions against their
/// closed forms, the two linear generator identities, the two commutator
/// identities, and local confluence on the four critical overlaps. Every
/// check is an exact normal-form comparison.
std::vector<SymbolicCheck> symbolic_identity_suite();

}  // namespace qcpl
