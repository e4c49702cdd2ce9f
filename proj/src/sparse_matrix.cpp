#include "njcalc/sparse_matrix.hpp"

#include <algorithm>

namespace njcalc {

namespace {

// Row-major working form for elimination.
using Row = std::map<std::size_t, Rational>;

std::vector<Row> to_rows(const SparseMatrix& m) {
    std::vector<Row> rows(m.rows());
    for (const auto& [rc, v] : m.entries()) rows[rc.first][rc.second] = v;
    return rows;
}

// Reduced row echelon form in place; returns pivot columns.
// Pivot choice within a column: smallest |numerator| (then smallest
// denominator) keeps intermediate coefficients from exploding on the
// integer-heavy matrices this library produces.
std::vector<std::size_t> rref(std::vector<Row>& rows, std::size_t ncols) {
    std::vector<std::size_t> pivot_cols;
    std::size_t top = 0;
    for (std::size_t col = 0; col < ncols && top < rows.size(); ++col) {
        std::size_t best = rows.size();
        for (std::size_t r = top; r < rows.size(); ++r) {
            auto it = rows[r].find(col);
            if (it == rows[r].end() || it->second.is_zero()) continue;
            if (best == rows.size()) {
                best = r;
                continue;
            }
            const Rational& cand = it->second;
            const Rational& cur = rows[best].at(col);
            auto key = [](const Rational& x) { return std::make_pair(::abs(x.num()), x.den()); };
            if (key(cand) < key(cur)) best = r;
        }
        if (best == rows.size()) continue;
        std::swap(rows[top], rows[best]);

        Rational inv = rows[top].at(col).inv();
        for (auto& [c, v] : rows[top]) v *= inv;

        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == top) continue;
            auto it = rows[r].find(col);
            if (it == rows[r].end() || it->second.is_zero()) continue;
            Rational factor = it->second;
            for (const auto& [c, v] : rows[top]) {
                Rational delta = factor * v;
                auto jt = rows[r].find(c);
                if (jt == rows[r].end()) {
                    if (!delta.is_zero()) rows[r][c] = -delta;
                } else {
                    jt->second -= delta;
                    if (jt->second.is_zero()) rows[r].erase(jt);
                }
            }
        }
        pivot_cols.push_back(col);
        ++top;
    }
    return pivot_cols;
}

}  // namespace

SparseMatrix SparseMatrix::identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, Rational(1));
    return m;
}

void SparseMatrix::check_bounds(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix: index out of bounds");
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
    check_bounds(r, c);
    if (v.is_zero()) return;
    auto key = std::make_pair(r, c);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        entries_.emplace(key, v);
    } else {
        it->second += v;
        if (it->second.is_zero()) entries_.erase(it);
    }
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
    check_bounds(r, c);
    auto key = std::make_pair(r, c);
    if (v.is_zero())
        entries_.erase(key);
    else
        entries_[key] = v;
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
    check_bounds(r, c);
    auto it = entries_.find(std::make_pair(r, c));
    return it == entries_.end() ? Rational(0) : it->second;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("SparseMatrix: dimension mismatch in product");
    // column map of rhs for cache-friendly access
    std::vector<std::vector<std::pair<std::size_t, Rational>>> rhs_rows(rhs.rows_);
    for (const auto& [rc, v] : rhs.entries_) rhs_rows[rc.first].emplace_back(rc.second, v);
    SparseMatrix out(rows_, rhs.cols_);
    for (const auto& [rc, v] : entries_) {
        for (const auto& [c2, w] : rhs_rows[rc.second]) out.add(rc.first, c2, v * w);
    }
    return out;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("SparseMatrix: dimension mismatch in sum");
    SparseMatrix out = *this;
    for (const auto& [rc, v] : rhs.entries_) out.add(rc.first, rc.second, v);
    return out;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& rhs) const { return *this + rhs.scaled(Rational(-1)); }

SparseMatrix SparseMatrix::scaled(const Rational& c) const {
    SparseMatrix out(rows_, cols_);
    if (c.is_zero()) return out;
    for (const auto& [rc, v] : entries_) out.entries_[rc] = v * c;
    return out;
}

bool SparseMatrix::operator==(const SparseMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && entries_ == rhs.entries_;
}

std::vector<Rational> SparseMatrix::apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("SparseMatrix: vector length mismatch");
    std::vector<Rational> out(rows_, Rational(0));
    for (const auto& [rc, val] : entries_) out[rc.first] += val * v[rc.second];
    return out;
}

std::size_t SparseMatrix::rank() const {
    auto rows = to_rows(*this);
    return rref(rows, cols_).size();
}

std::vector<std::vector<Rational>> SparseMatrix::kernel_basis() const {
    auto rows = to_rows(*this);
    std::vector<std::size_t> pivots = rref(rows, cols_);

    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rational> v(cols_, Rational(0));
        v[free_col] = Rational(1);
        // For each pivot row, solve for the pivot variable.
        for (std::size_t pr = 0; pr < pivots.size(); ++pr) {
            auto it = rows[pr].find(free_col);
            if (it != rows[pr].end()) v[pivots[pr]] = -it->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rational>> solve_linear(const SparseMatrix& A, const std::vector<Rational>& b) {
    if (b.size() != A.rows()) throw std::invalid_argument("solve_linear: rhs length mismatch");
    auto rows = to_rows(A);
    std::size_t aug = A.cols();  // augmented column index
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (!b[r].is_zero()) rows[r][aug] = b[r];
    std::vector<std::size_t> pivots = rref(rows, A.cols());
    // inconsistent iff a leftover row is (0 ... 0 | nonzero)
    for (std::size_t r = pivots.size(); r < rows.size(); ++r)
        if (rows[r].count(aug)) return std::nullopt;
    std::vector<Rational> x(A.cols(), Rational(0));
    for (std::size_t pr = 0; pr < pivots.size(); ++pr) {
        auto it = rows[pr].find(aug);
        if (it != rows[pr].end()) x[pivots[pr]] = it->second;
    }
    return x;
}

std::size_t cohomology_dim(const SparseMatrix& d_out, const SparseMatrix& d_in) {
    if (d_out.cols() != d_in.rows())
        throw std::invalid_argument("cohomology_dim: differentials do not fit at this position");
    SparseMatrix comp = d_out * d_in;
    if (!comp.is_zero())
        throw CompositionNotZero("cohomology_dim: d_out * d_in != 0 (" + std::to_string(comp.nnz()) +
                                 " nonzero entries)");
    std::size_t r_out = d_out.rank();
    std::size_t r_in = d_in.rank();
    return d_out.cols() - r_out - r_in;
}

}  // namespace njcalc
