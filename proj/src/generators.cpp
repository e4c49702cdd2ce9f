#include "njcalc/generators.hpp"

#include <functional>

namespace njcalc {

int CorpusGenerator::small_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

namespace {

AlgebraPresentation truncated_poly(std::size_t dim) {
    // k[x]/(x^dim), basis 1, x, ..., x^{dim-1}
    AlgebraPresentation A(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            if (i + j < dim) A.mu(i, j, i + j) = Rational(1);
    return A;
}

AlgebraPresentation componentwise(std::size_t dim) {
    AlgebraPresentation A(dim);
    for (std::size_t i = 0; i < dim; ++i) A.mu(i, i, i) = Rational(1);
    return A;
}

AlgebraPresentation strictly_upper_3() {
    // strictly upper triangular 3x3 matrices: e01, e12, e02 with e01 e12 = e02
    AlgebraPresentation A(3);
    A.basis_labels = {"e01", "e12", "e02"};
    A.mu(0, 1, 2) = Rational(1);
    return A;
}

}  // namespace

AlgebraPresentation CorpusGenerator::random_associative(std::size_t max_dim) {
    while (true) {
        switch (small_int(0, 5)) {
            case 0: {  // fully random with rejection, small dims only
                std::size_t dim = static_cast<std::size_t>(small_int(1, 2));
                for (int attempt = 0; attempt < 40; ++attempt) {
                    AlgebraPresentation A(dim);
                    for (auto& c : A.mult) c = Rational(small_int(-2, 2));
                    if (check_associativity(A).pass()) return A;
                }
                break;  // re-roll the strategy
            }
            case 1: return truncated_poly(static_cast<std::size_t>(small_int(2, static_cast<int>(std::max<std::size_t>(2, max_dim)))));
            case 2: return componentwise(static_cast<std::size_t>(small_int(1, static_cast<int>(max_dim))));
            case 3:
                if (max_dim >= 3) return strictly_upper_3();
                break;
            case 4: {  // zero algebra
                return AlgebraPresentation(static_cast<std::size_t>(small_int(1, static_cast<int>(max_dim))));
            }
            case 5: {  // k (+) k[x]/(x^2)
                if (max_dim < 3) break;
                AlgebraPresentation A(3);
                A.mu(0, 0, 0) = Rational(1);
                A.mu(1, 1, 1) = Rational(1);
                A.mu(1, 2, 2) = Rational(1);
                A.mu(2, 1, 2) = Rational(1);
                return A;
            }
        }
    }
}

LinearOperator CorpusGenerator::random_nijenhuis_operator(const AlgebraPresentation& A) {
    std::size_t d = A.dim;
    for (int attempt = 0; attempt < 200; ++attempt) {
        LinearOperator P(d);
        switch (small_int(0, 3)) {
            case 0:  // random entries, filtered
                for (auto& c : P.mat) c = Rational(small_int(-2, 2));
                break;
            case 1:  // random diagonal
                for (std::size_t i = 0; i < d; ++i) P.at(i, i) = Rational(small_int(-2, 2));
                break;
            case 2: {  // left multiplication by a random element (always Nijenhuis)
                std::vector<Rational> c(d);
                for (auto& x : c) x = Rational(small_int(-2, 2));
                for (std::size_t j = 0; j < d; ++j) {
                    std::vector<Rational> ej(d, Rational(0));
                    ej[j] = Rational(1);
                    auto img = A.product_vec(c, ej);
                    for (std::size_t i = 0; i < d; ++i) P.at(i, j) = img[i];
                }
                break;
            }
            case 3:  // scalar
                P = LinearOperator::scalar(d, Rational(small_int(-2, 2)));
                break;
        }
        if (check_nijenhuis(A, P).pass()) return P;
    }
    return LinearOperator(d);  // zero operator, always valid
}

NijenhuisAlgebra CorpusGenerator::random_nijenhuis_algebra(std::size_t max_dim) {
    AlgebraPresentation A = random_associative(max_dim);
    LinearOperator P = random_nijenhuis_operator(A);
    return NijenhuisAlgebra{A, P};
}

NijenhuisBimodule CorpusGenerator::random_bimodule(const NijenhuisAlgebra& N, std::size_t max_dim) {
    if (small_int(0, 2) != 0) {
        return NijenhuisBimodule{BimodulePresentation::regular(N.algebra), N.operator_P};
    }
    // zero-action module: every operator is compatible; draw a random one
    std::size_t md = static_cast<std::size_t>(small_int(1, static_cast<int>(max_dim)));
    BimodulePresentation B(N.algebra.dim, md);
    LinearOperator PM(md);
    for (auto& c : PM.mat) c = Rational(small_int(-2, 2));
    NijenhuisBimodule M{B, PM};
    if (!check_nijenhuis_bimodule(N, M).pass())
        M.operator_PM = LinearOperator(md);
    return M;
}

LinearOperator CorpusGenerator::perturb_operator_breaking(const NijenhuisAlgebra& N, int max_tries) {
    for (int t = 0; t < max_tries; ++t) {
        LinearOperator Q = N.operator_P;
        std::size_t i = static_cast<std::size_t>(small_int(0, static_cast<int>(N.algebra.dim) - 1));
        std::size_t j = static_cast<std::size_t>(small_int(0, static_cast<int>(N.algebra.dim) - 1));
        Q.at(i, j) += Rational(small_int(0, 1) ? 1 : -1);
        if (!check_nijenhuis(N.algebra, Q).pass()) return Q;
    }
    // dense fallback: random operator that fails the check
    while (true) {
        LinearOperator Q(N.algebra.dim);
        for (auto& c : Q.mat) c = Rational(small_int(-2, 2));
        if (!check_nijenhuis(N.algebra, Q).pass()) return Q;
    }
}

GradedMap CorpusGenerator::random_graded_map(const SpaceRef& domain, const SpaceRef& codomain, int arity,
                                             int degree, int density_pct) {
    GradedMap m(domain, codomain, arity, degree);
    std::vector<int> ins(static_cast<std::size_t>(arity), 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == arity) {
            int want = degree;
            for (int i : ins) want += domain.degree_of(i);
            for (int out = 0; out < codomain.dim(); ++out) {
                if (codomain.degree_of(out) != want) continue;
                if (small_int(0, 99) < density_pct) {
                    int c = small_int(-2, 2);
                    if (c != 0) m.add_entry(ins, out, Rational(c));
                }
            }
            return;
        }
        for (int i = 0; i < domain.dim(); ++i) {
            ins[static_cast<std::size_t>(pos)] = i;
            rec(pos + 1);
        }
    };
    rec(0);
    return m;
}

}  // namespace njcalc
