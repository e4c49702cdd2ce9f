#include <doctest.h>

#include <random>

#include "njcalc/sparse_matrix.hpp"
#include "oracles.hpp"

using namespace njcalc;

namespace {

SparseMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    SparseMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.set(r, c, Rational(rows[r][c]));
    return m;
}

}  // namespace

TEST_CASE("rank on the stated examples") {
    CHECK(SparseMatrix(3, 3).rank() == 0);
    CHECK(SparseMatrix::identity(3).rank() == 3);
    CHECK(from_rows({{1, 2}, {2, 4}}).rank() == 1);  // hand row-reduction: rows proportional
}

TEST_CASE("kernel bases") {
    CHECK(SparseMatrix::identity(2).kernel_basis().empty());
    CHECK(SparseMatrix(2, 3).kernel_basis().size() == 3);
    auto m = from_rows({{1, 2}, {2, 4}});
    auto basis = m.kernel_basis();
    REQUIRE(basis.size() == 1);
    for (const auto& v : basis) {
        auto img = m.apply(v);
        for (const auto& x : img) CHECK(x.is_zero());
    }
}

TEST_CASE("cohomology_dim on tiny complexes") {
    // zero maps in and out: dim H = n
    CHECK(cohomology_dim(SparseMatrix(1, 4), SparseMatrix(4, 1)) == 4);
    // identity out: nothing survives
    CHECK(cohomology_dim(SparseMatrix::identity(3), SparseMatrix(3, 0)) == 0);
    // exact two-step complex Q -> Q^2 -> Q with d_in = (1,1)^T, d_out = (1,-1)
    SparseMatrix d_in(2, 1), d_out(1, 2);
    d_in.set(0, 0, Rational(1));
    d_in.set(1, 0, Rational(1));
    d_out.set(0, 0, Rational(1));
    d_out.set(0, 1, Rational(-1));
    CHECK(cohomology_dim(d_out, d_in) == 0);
    // non-composing pair is rejected
    SparseMatrix bad_out = SparseMatrix::identity(2);
    CHECK_THROWS_AS(cohomology_dim(bad_out, d_in), CompositionNotZero);
}

TEST_CASE("rank + kernel size = cols, rank matches the dense oracle, rank is row-permutation "
          "invariant") {
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<int> entry(-3, 3);
    std::uniform_int_distribution<std::size_t> dim(1, 7);
    for (int t = 0; t < 60; ++t) {
        std::size_t r = dim(rng), c = dim(rng);
        SparseMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (entry(rng) > 0) m.set(i, j, Rational(entry(rng)));
        std::size_t rk = m.rank();
        CHECK(rk == oracles::dense_rank(m));
        CHECK(rk + m.kernel_basis().size() == c);
        for (const auto& v : m.kernel_basis()) {
            auto img = m.apply(v);
            for (const auto& x : img) CHECK(x.is_zero());
        }
        // permute rows
        std::vector<std::size_t> perm(r);
        for (std::size_t i = 0; i < r; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        SparseMatrix p(r, c);
        for (const auto& [rc, v] : m.entries()) p.set(perm[rc.first], rc.second, v);
        CHECK(p.rank() == rk);
    }
}

TEST_CASE("solve_linear finds exact solutions and detects inconsistency") {
    auto m = from_rows({{1, 2}, {3, 4}});
    auto x = solve_linear(m, {Rational(5), Rational(6)});
    REQUIRE(x.has_value());
    auto img = m.apply(*x);
    CHECK(img[0] == Rational(5));
    CHECK(img[1] == Rational(6));
    auto sing = from_rows({{1, 2}, {2, 4}});
    CHECK(!solve_linear(sing, {Rational(1), Rational(3)}).has_value());
    CHECK(solve_linear(sing, {Rational(1), Rational(2)}).has_value());
}

TEST_CASE("fraction arithmetic in elimination stays exact") {
    // Hilbert-like matrix has full rank over Q; floating point would not see it cleanly
    std::size_t n = 6;
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.set(i, j, Rational(1, static_cast<long>(i + j + 1)));
    CHECK(m.rank() == n);
    CHECK(oracles::dense_rank(m) == n);
}
