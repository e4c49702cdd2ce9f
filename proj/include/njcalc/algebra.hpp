#pragma once

#include <optional>
#include <string>
#include <vector>

#include "njcalc/rational.hpp"

namespace njcalc {

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& w) : std::runtime_error(w) {}
};
struct NotNijenhuis : std::runtime_error {
    explicit NotNijenhuis(const std::string& w) : std::runtime_error(w) {}
};
struct NotNijenhuisBimodule : std::runtime_error {
    explicit NotNijenhuisBimodule(const std::string& w) : std::runtime_error(w) {}
};
struct NotRelativeRB : std::runtime_error {
    explicit NotRelativeRB(const std::string& w) : std::runtime_error(w) {}
};

/// One violated basis tuple of a structural check, with both sides spelled
/// out so sign errors can be chased by hand.
struct Violation {
    std::vector<std::size_t> indices;
    std::vector<Rational> lhs;
    std::vector<Rational> rhs;
    std::string describe() const;
};

struct CheckReport {
    std::string check_name;
    std::vector<Violation> violations;
    bool pass() const { return violations.empty(); }
    std::string describe() const;
};

/// Square matrix acting on the basis of a finite-dimensional space;
/// column j holds the coefficients of the image of basis vector j.
struct LinearOperator {
    std::size_t dim = 0;
    std::vector<Rational> mat;  // row-major, dim x dim

    LinearOperator() = default;
    explicit LinearOperator(std::size_t d) : dim(d), mat(d * d, Rational(0)) {}
    static LinearOperator identity(std::size_t d);
    static LinearOperator scalar(std::size_t d, const Rational& c);

    Rational& at(std::size_t i, std::size_t j) { return mat[i * dim + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return mat[i * dim + j]; }

    std::vector<Rational> apply(const std::vector<Rational>& v) const;
    LinearOperator compose(const LinearOperator& inner) const;  // this after inner
    bool operator==(const LinearOperator&) const = default;
};

/// Associative algebra candidate by structure constants:
/// e_i * e_j = sum_k mult[i][j][k] e_k. Associativity is *not* assumed at
/// construction; run check_associativity.
struct AlgebraPresentation {
    std::size_t dim = 0;
    std::vector<std::string> basis_labels;
    std::vector<Rational> mult;  // flattened (i*dim + j)*dim + k

    AlgebraPresentation() = default;
    explicit AlgebraPresentation(std::size_t d);

    Rational& mu(std::size_t i, std::size_t j, std::size_t k) { return mult[(i * dim + j) * dim + k]; }
    const Rational& mu(std::size_t i, std::size_t j, std::size_t k) const {
        return mult[(i * dim + j) * dim + k];
    }
    /// coefficients of (e_i * e_j)
    std::vector<Rational> product(std::size_t i, std::size_t j) const;
    std::vector<Rational> product_vec(const std::vector<Rational>& a, const std::vector<Rational>& b) const;
};

/// Bimodule candidate over an algebra: left action e_i . m_k = sum_l left[i][k][l] m_l,
/// right action m_k . e_i = sum_l right[k][i][l] m_l.
struct BimodulePresentation {
    std::size_t dim = 0;       // dim of M
    std::size_t alg_dim = 0;   // dim of A
    std::vector<Rational> left;   // (i*dim + k)*dim + l
    std::vector<Rational> right;  // (k*alg_dim + i)*dim + l

    BimodulePresentation() = default;
    BimodulePresentation(std::size_t alg_d, std::size_t mod_d);

    Rational& lambda(std::size_t i, std::size_t k, std::size_t l) { return left[(i * dim + k) * dim + l]; }
    const Rational& lambda(std::size_t i, std::size_t k, std::size_t l) const {
        return left[(i * dim + k) * dim + l];
    }
    Rational& rho(std::size_t k, std::size_t i, std::size_t l) { return right[(k * alg_dim + i) * dim + l]; }
    const Rational& rho(std::size_t k, std::size_t i, std::size_t l) const {
        return right[(k * alg_dim + i) * dim + l];
    }

    std::vector<Rational> act_left(const std::vector<Rational>& a, const std::vector<Rational>& x) const;
    std::vector<Rational> act_right(const std::vector<Rational>& x, const std::vector<Rational>& a) const;

    /// Regular bimodule A over itself.
    static BimodulePresentation regular(const AlgebraPresentation& A);
};

struct NijenhuisAlgebra {
    AlgebraPresentation algebra;
    LinearOperator operator_P;
};

struct NijenhuisBimodule {
    BimodulePresentation module;
    LinearOperator operator_PM;
};

CheckReport check_associativity(const AlgebraPresentation& A);

/// Bimodule axioms of M over A (association of actions, both mixed laws).
CheckReport check_bimodule(const AlgebraPresentation& A, const BimodulePresentation& M);

/// P(a)P(b) = P(P(a)b + aP(b) - P(ab)) on all basis pairs.
CheckReport check_nijenhuis(const AlgebraPresentation& A, const LinearOperator& P);

/// The two compatibility equations of a Nijenhuis bimodule:
///   P(a) P_M(x) = P_M(P(a)x + a P_M(x) - P_M(ax))
///   P_M(x) P(a) = P_M(P_M(x)a + x P(a) - P_M(xa))
CheckReport check_nijenhuis_bimodule(const NijenhuisAlgebra& N, const NijenhuisBimodule& M);

/// The deformed product a *_P b = P(a)b + aP(b) - P(ab); returns (A, m_P, P).
NijenhuisAlgebra deformed_product(const NijenhuisAlgebra& N);

/// Deformed bimodule over deformed_product(N): a |> x = P(a)x, x <| a = xP(a).
NijenhuisBimodule deformed_bimodule(const NijenhuisAlgebra& N, const NijenhuisBimodule& M);

/// Semidirect product algebra A (+) M with product (a,x)(b,y) = (ab, ay+xb)
/// and operator P (+) P_M; basis of A first, then basis of M.
NijenhuisAlgebra semidirect(const AlgebraPresentation& A, const BimodulePresentation& M,
                            const LinearOperator& P, const LinearOperator& P_M);

/// Relative Rota-Baxter operator of weight 0: a map P: M -> A (dim A x dim M
/// matrix) with P(x)P(y) = P( P(x).y + x.P(y) ) on all basis pairs of M.
CheckReport check_relative_rb(const AlgebraPresentation& A, const BimodulePresentation& M,
                              const std::vector<Rational>& P_MtoA);

/// Lift of a verified relative RB operator to the Nijenhuis operator
/// N_P(a, x) = (P(x), 0) on the semidirect product algebra.
NijenhuisAlgebra das_lift(const AlgebraPresentation& A, const BimodulePresentation& M,
                          const std::vector<Rational>& P_MtoA);

}  // namespace njcalc
