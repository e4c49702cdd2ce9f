#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "njcalc/rational.hpp"

namespace njcalc {

struct LeafOutOfRange : std::runtime_error {
    explicit LeafOutOfRange(const std::string& w) : std::runtime_error(w) {}
};
struct MixedPresentation : std::runtime_error {
    explicit MixedPresentation(const std::string& w) : std::runtime_error(w) {}
};
struct WrongFamily : std::runtime_error {
    explicit WrongFamily(const std::string& w) : std::runtime_error(w) {}
};
struct ZeroElement : std::runtime_error {
    explicit ZeroElement(const std::string& w) : std::runtime_error(w) {}
};

enum class Family : std::uint8_t { M, P, X, Y };

/// Operadic generator. Degrees: |m_n| = n-2, |P_n| = n-1, |x_n| = -1, |y_n| = 0.
struct Generator {
    Family fam;
    int arity;

    int degree() const;
    std::string name() const;  // "m2", "P1", "x3", "y4"
    auto operator<=>(const Generator&) const = default;
};

enum class Presentation { MP, XY };

/// Planar rooted tree with generator-labelled vertices, stored as the
/// preorder token stream (each vertex token is followed by the encodings of
/// its children left to right; leaves are explicit tokens). The token order
/// is exactly the planar vertex order counted from the root clockwise, which
/// is the order all Koszul sign bookkeeping refers to.
class TreeMonomial {
public:
    struct Token {
        bool leaf;
        Generator gen;  // meaningful only when !leaf
        auto operator<=>(const Token&) const = default;
    };

    TreeMonomial() = default;
    static TreeMonomial corolla(Generator g);
    /// Builds from a preorder token stream; validates the prefix encoding.
    static TreeMonomial from_tokens(std::vector<Token> toks);

    const std::vector<Token>& tokens() const { return toks_; }
    int leaf_count() const;
    int vertex_count() const;
    int degree() const;  // total internal degree, sum over vertices
    Presentation presentation() const;

    /// Position (0-based into tokens) of the i-th leaf, i 1-based.
    std::size_t leaf_pos(int i) const;

    /// Grafts S onto leaf i. Companion sign exponent (see compose_at below)
    /// is computed by the caller.
    TreeMonomial grafted(int i, const TreeMonomial& S) const;

    /// Sum of vertex degrees strictly after the i-th leaf in planar order.
    int degree_after_leaf(int i) const;

    /// Splits off the planar-last vertex: returns (tree with that vertex
    /// replaced by a leaf, its generator, the 1-based leaf index it occupied).
    /// Requires at least 2 vertices.
    std::tuple<TreeMonomial, Generator, int> strip_last_vertex() const;

    /// Generator word from the root to each leaf, left to right.
    std::vector<std::vector<Generator>> path_encoding() const;

    std::string str() const;  // e.g. "m2(m2(1,2),3)"

    auto operator<=>(const TreeMonomial&) const = default;

private:
    std::vector<Token> toks_;
};

/// Finite rational combination of tree monomials; canonical (zero
/// coefficients pruned, monomials merged).
class OperadElement {
public:
    OperadElement() = default;
    static OperadElement single(const TreeMonomial& t, Rational c = Rational(1));

    void add_term(const TreeMonomial& t, const Rational& c);
    void add(const OperadElement& o);
    OperadElement scaled(const Rational& c) const;
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<TreeMonomial, Rational>& terms() const { return terms_; }
    bool operator==(const OperadElement&) const = default;

    std::string str() const;  // signed list, e.g. "-1 * m2(m2(1,2),3) + ..."

private:
    std::map<TreeMonomial, Rational> terms_;
};

/// Partial composition T o_i S in the free graded operad. The sign
/// (-1)^(|S| * sum of degrees of T-vertices after leaf i in planar order)
/// renormalizes the graft to the planar-order basis monomial.
OperadElement compose_at(const TreeMonomial& T, int i, const TreeMonomial& S);
OperadElement compose_at(const OperadElement& T, int i, const OperadElement& S);

/// Brace on the free operad: sum over order-preserving insertions of the
/// arguments into distinct slots, composed in ascending slot order.
OperadElement tree_brace(const TreeMonomial& f, const std::vector<TreeMonomial>& args);
OperadElement tree_brace(const OperadElement& f, const std::vector<OperadElement>& args);

/// Differential of the cobar construction on generators.
OperadElement cobar_d_m(int n);  // n >= 2
OperadElement cobar_d_P(int n);  // n >= 1
OperadElement cobar_d_xy(Generator g);
OperadElement cobar_d(Generator g);

/// Leibniz extension of the generator differentials (degree -1 derivation).
OperadElement differential(const OperadElement& e, Presentation pres);

struct DSquaredReport {
    struct Entry {
        Generator gen;
        OperadElement leftover;  // canonically zero iff pass
    };
    std::vector<Entry> entries;
    bool pass() const;
};

/// Verifies that the differential squares to zero on every generator of the
/// presentation with arity <= max_arity.
DSquaredReport d_squared_report(int max_arity, Presentation pres);

/// Weight used by the monomial order: phi(m_n) = n-1, phi(P_n) = 2n-1.
/// Throws WrongFamily on x/y generators.
int weight_phi(Generator g);

enum class Ordering { LT, EQ, GT };

/// The arity-then-path-weight-then-inflated-lexicographic total preorder on
/// m/P tree monomials. EQ is only reported for identical monomials.
Ordering compare_Xi(const TreeMonomial& a, const TreeMonomial& b);

/// The Xi-maximal monomial of a nonzero element, with its coefficient.
std::pair<TreeMonomial, Rational> leading_term(const OperadElement& e);

/// Parses the bracketed term syntax, e.g. "m2(m2(1,2),3)" or "P1(1)".
/// Leaves must be numbered 1..n left to right.
TreeMonomial parse_term(const std::string& s);

/// Test hook: flips the sign of one term of d(m_3) so that the d^2 = 0
/// acceptance criteria demonstrably fail on a corrupted build.
void set_sign_defect(bool on);
bool sign_defect();

}  // namespace njcalc
