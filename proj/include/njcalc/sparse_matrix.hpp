#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "njcalc/rational.hpp"

namespace njcalc {

struct CompositionNotZero : std::runtime_error {
    explicit CompositionNotZero(const std::string& what) : std::runtime_error(what) {}
};

/// Sparse matrix over the rationals. Only nonzero entries are stored.
///
/// All modules index matrices over lexicographically flattened tensor bases
/// (output index slowest, then the input multi-index); see cohomology.hpp for
/// the flattening helpers.
class SparseMatrix {
public:
    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    static SparseMatrix identity(std::size_t n);
    static SparseMatrix zero(std::size_t rows, std::size_t cols) { return SparseMatrix(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void add(std::size_t r, std::size_t c, const Rational& v);
    void set(std::size_t r, std::size_t c, const Rational& v);
    Rational at(std::size_t r, std::size_t c) const;

    const std::map<std::pair<std::size_t, std::size_t>, Rational>& entries() const { return entries_; }
    std::size_t nnz() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }

    SparseMatrix operator*(const SparseMatrix& rhs) const;
    SparseMatrix operator+(const SparseMatrix& rhs) const;
    SparseMatrix operator-(const SparseMatrix& rhs) const;
    SparseMatrix scaled(const Rational& c) const;
    bool operator==(const SparseMatrix& rhs) const;

    std::vector<Rational> apply(const std::vector<Rational>& v) const;

    /// Exact rank over the rationals (fraction-preserving elimination, pivot
    /// chosen with smallest numerator magnitude to limit coefficient growth).
    std::size_t rank() const;

    /// Basis of the kernel; result has exactly cols() - rank() vectors and
    /// every vector satisfies M*v = 0 exactly.
    std::vector<std::vector<Rational>> kernel_basis() const;

private:
    void check_bounds(std::size_t r, std::size_t c) const;

    std::size_t rows_, cols_;
    std::map<std::pair<std::size_t, std::size_t>, Rational> entries_;
};

/// dim ker(d_out) - rank(d_in) at a complex position ... -> C --d_out--> ...
/// with incoming differential d_in. Throws CompositionNotZero unless
/// d_out * d_in = 0, which would signal a differential bug upstream.
std::size_t cohomology_dim(const SparseMatrix& d_out, const SparseMatrix& d_in);

/// One exact solution of A x = b, or nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_linear(const SparseMatrix& A, const std::vector<Rational>& b);

}  // namespace njcalc
