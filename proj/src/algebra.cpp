#include "njcalc/algebra.hpp"

#include <sstream>

namespace njcalc {

namespace {

std::vector<Rational> basis_vec(std::size_t dim, std::size_t i) {
    std::vector<Rational> v(dim, Rational(0));
    v[i] = Rational(1);
    return v;
}

std::vector<Rational> add_vec(std::vector<Rational> a, const std::vector<Rational>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

std::vector<Rational> sub_vec(std::vector<Rational> a, const std::vector<Rational>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

bool is_zero_vec(const std::vector<Rational>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

}  // namespace

std::string Violation::describe() const {
    std::ostringstream os;
    os << "at (";
    for (std::size_t i = 0; i < indices.size(); ++i) os << (i ? "," : "") << indices[i];
    os << "): lhs = [";
    for (std::size_t i = 0; i < lhs.size(); ++i) os << (i ? "," : "") << lhs[i];
    os << "], rhs = [";
    for (std::size_t i = 0; i < rhs.size(); ++i) os << (i ? "," : "") << rhs[i];
    os << "]";
    return os.str();
}

std::string CheckReport::describe() const {
    std::ostringstream os;
    os << check_name << ": " << (pass() ? "pass" : "FAIL");
    for (const auto& v : violations) os << "\n  " << v.describe();
    return os.str();
}

LinearOperator LinearOperator::identity(std::size_t d) {
    LinearOperator op(d);
    for (std::size_t i = 0; i < d; ++i) op.at(i, i) = Rational(1);
    return op;
}

LinearOperator LinearOperator::scalar(std::size_t d, const Rational& c) {
    LinearOperator op(d);
    for (std::size_t i = 0; i < d; ++i) op.at(i, i) = c;
    return op;
}

std::vector<Rational> LinearOperator::apply(const std::vector<Rational>& v) const {
    if (v.size() != dim) throw DimensionMismatch("LinearOperator::apply: vector length mismatch");
    std::vector<Rational> out(dim, Rational(0));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            if (!at(i, j).is_zero()) out[i] += at(i, j) * v[j];
    return out;
}

LinearOperator LinearOperator::compose(const LinearOperator& inner) const {
    if (dim != inner.dim) throw DimensionMismatch("LinearOperator::compose: dimension mismatch");
    LinearOperator out(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) {
            if (at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < dim; ++j) out.at(i, j) += at(i, k) * inner.at(k, j);
        }
    return out;
}

AlgebraPresentation::AlgebraPresentation(std::size_t d)
    : dim(d), basis_labels(d), mult(d * d * d, Rational(0)) {
    for (std::size_t i = 0; i < d; ++i) basis_labels[i] = "e" + std::to_string(i);
}

std::vector<Rational> AlgebraPresentation::product(std::size_t i, std::size_t j) const {
    std::vector<Rational> out(dim, Rational(0));
    for (std::size_t k = 0; k < dim; ++k) out[k] = mu(i, j, k);
    return out;
}

std::vector<Rational> AlgebraPresentation::product_vec(const std::vector<Rational>& a,
                                                       const std::vector<Rational>& b) const {
    std::vector<Rational> out(dim, Rational(0));
    for (std::size_t i = 0; i < dim; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim; ++j) {
            if (b[j].is_zero()) continue;
            Rational c = a[i] * b[j];
            for (std::size_t k = 0; k < dim; ++k) out[k] += c * mu(i, j, k);
        }
    }
    return out;
}

BimodulePresentation::BimodulePresentation(std::size_t alg_d, std::size_t mod_d)
    : dim(mod_d),
      alg_dim(alg_d),
      left(alg_d * mod_d * mod_d, Rational(0)),
      right(mod_d * alg_d * mod_d, Rational(0)) {}

std::vector<Rational> BimodulePresentation::act_left(const std::vector<Rational>& a,
                                                     const std::vector<Rational>& x) const {
    std::vector<Rational> out(dim, Rational(0));
    for (std::size_t i = 0; i < alg_dim; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t k = 0; k < dim; ++k) {
            if (x[k].is_zero()) continue;
            Rational c = a[i] * x[k];
            for (std::size_t l = 0; l < dim; ++l) out[l] += c * lambda(i, k, l);
        }
    }
    return out;
}

std::vector<Rational> BimodulePresentation::act_right(const std::vector<Rational>& x,
                                                      const std::vector<Rational>& a) const {
    std::vector<Rational> out(dim, Rational(0));
    for (std::size_t k = 0; k < dim; ++k) {
        if (x[k].is_zero()) continue;
        for (std::size_t i = 0; i < alg_dim; ++i) {
            if (a[i].is_zero()) continue;
            Rational c = x[k] * a[i];
            for (std::size_t l = 0; l < dim; ++l) out[l] += c * rho(k, i, l);
        }
    }
    return out;
}

BimodulePresentation BimodulePresentation::regular(const AlgebraPresentation& A) {
    BimodulePresentation M(A.dim, A.dim);
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t k = 0; k < A.dim; ++k)
            for (std::size_t l = 0; l < A.dim; ++l) {
                M.lambda(i, k, l) = A.mu(i, k, l);
                M.rho(k, i, l) = A.mu(k, i, l);
            }
    return M;
}

CheckReport check_associativity(const AlgebraPresentation& A) {
    CheckReport rep{"associativity", {}};
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = 0; j < A.dim; ++j)
            for (std::size_t k = 0; k < A.dim; ++k) {
                auto lhs = A.product_vec(A.product(i, j), basis_vec(A.dim, k));
                auto rhs = A.product_vec(basis_vec(A.dim, i), A.product(j, k));
                if (lhs != rhs) rep.violations.push_back({{i, j, k}, lhs, rhs});
            }
    return rep;
}

CheckReport check_bimodule(const AlgebraPresentation& A, const BimodulePresentation& M) {
    CheckReport rep{"bimodule", {}};
    if (M.alg_dim != A.dim) throw DimensionMismatch("check_bimodule: algebra dimension mismatch");
    auto e = [&](std::size_t i) { return basis_vec(A.dim, i); };
    auto m = [&](std::size_t k) { return basis_vec(M.dim, k); };
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = 0; j < A.dim; ++j)
            for (std::size_t k = 0; k < M.dim; ++k) {
                // (e_i e_j) m = e_i (e_j m)
                auto l1 = M.act_left(A.product(i, j), m(k));
                auto r1 = M.act_left(e(i), M.act_left(e(j), m(k)));
                if (l1 != r1) rep.violations.push_back({{i, j, k}, l1, r1});
                // m (e_i e_j) = (m e_i) e_j
                auto l2 = M.act_right(m(k), A.product(i, j));
                auto r2 = M.act_right(M.act_right(m(k), e(i)), e(j));
                if (l2 != r2) rep.violations.push_back({{k, i, j}, l2, r2});
                // (e_i m) e_j = e_i (m e_j)
                auto l3 = M.act_right(M.act_left(e(i), m(k)), e(j));
                auto r3 = M.act_left(e(i), M.act_right(m(k), e(j)));
                if (l3 != r3) rep.violations.push_back({{i, k, j}, l3, r3});
            }
    return rep;
}

CheckReport check_nijenhuis(const AlgebraPresentation& A, const LinearOperator& P) {
    if (P.dim != A.dim) throw DimensionMismatch("check_nijenhuis: operator dimension mismatch");
    CheckReport rep{"nijenhuis", {}};
    for (std::size_t i = 0; i < A.dim; ++i) {
        auto Pa = P.apply(basis_vec(A.dim, i));
        for (std::size_t j = 0; j < A.dim; ++j) {
            auto Pb = P.apply(basis_vec(A.dim, j));
            auto lhs = A.product_vec(Pa, Pb);
            auto inner = add_vec(A.product_vec(Pa, basis_vec(A.dim, j)),
                                 A.product_vec(basis_vec(A.dim, i), Pb));
            inner = sub_vec(inner, P.apply(A.product(i, j)));
            auto rhs = P.apply(inner);
            if (lhs != rhs) rep.violations.push_back({{i, j}, lhs, rhs});
        }
    }
    return rep;
}

CheckReport check_nijenhuis_bimodule(const NijenhuisAlgebra& N, const NijenhuisBimodule& M) {
    const auto& A = N.algebra;
    const auto& P = N.operator_P;
    const auto& Mod = M.module;
    const auto& PM = M.operator_PM;
    if (PM.dim != Mod.dim || Mod.alg_dim != A.dim)
        throw DimensionMismatch("check_nijenhuis_bimodule: dimension mismatch");
    CheckReport rep{"nijenhuis_bimodule", {}};
    for (std::size_t i = 0; i < A.dim; ++i) {
        auto a = basis_vec(A.dim, i);
        auto Pa = P.apply(a);
        for (std::size_t k = 0; k < Mod.dim; ++k) {
            auto x = basis_vec(Mod.dim, k);
            auto PMx = PM.apply(x);
            // P(a) P_M(x) = P_M(P(a)x + a P_M(x) - P_M(ax))
            auto lhs1 = Mod.act_left(Pa, PMx);
            auto in1 = add_vec(Mod.act_left(Pa, x), Mod.act_left(a, PMx));
            in1 = sub_vec(in1, PM.apply(Mod.act_left(a, x)));
            auto rhs1 = PM.apply(in1);
            if (lhs1 != rhs1) rep.violations.push_back({{i, k}, lhs1, rhs1});
            // P_M(x) P(a) = P_M(P_M(x)a + x P(a) - P_M(xa))
            auto lhs2 = Mod.act_right(PMx, Pa);
            auto in2 = add_vec(Mod.act_right(PMx, a), Mod.act_right(x, Pa));
            in2 = sub_vec(in2, PM.apply(Mod.act_right(x, a)));
            auto rhs2 = PM.apply(in2);
            if (lhs2 != rhs2) rep.violations.push_back({{k, i}, lhs2, rhs2});
        }
    }
    return rep;
}

NijenhuisAlgebra deformed_product(const NijenhuisAlgebra& N) {
    if (!check_nijenhuis(N.algebra, N.operator_P).pass())
        throw NotNijenhuis("deformed_product: input fails the Nijenhuis check");
    const auto& A = N.algebra;
    const auto& P = N.operator_P;
    AlgebraPresentation AP(A.dim);
    AP.basis_labels = A.basis_labels;
    for (std::size_t i = 0; i < A.dim; ++i) {
        auto Pa = P.apply(basis_vec(A.dim, i));
        for (std::size_t j = 0; j < A.dim; ++j) {
            auto Pb = P.apply(basis_vec(A.dim, j));
            auto prod = add_vec(A.product_vec(Pa, basis_vec(A.dim, j)),
                                A.product_vec(basis_vec(A.dim, i), Pb));
            prod = sub_vec(prod, P.apply(A.product(i, j)));
            for (std::size_t k = 0; k < A.dim; ++k) AP.mu(i, j, k) = prod[k];
        }
    }
    return NijenhuisAlgebra{AP, P};
}

NijenhuisBimodule deformed_bimodule(const NijenhuisAlgebra& N, const NijenhuisBimodule& M) {
    if (!check_nijenhuis_bimodule(N, M).pass())
        throw NotNijenhuisBimodule("deformed_bimodule: input fails the Nijenhuis bimodule check");
    const auto& A = N.algebra;
    const auto& P = N.operator_P;
    const auto& Mod = M.module;
    BimodulePresentation out(A.dim, Mod.dim);
    for (std::size_t i = 0; i < A.dim; ++i) {
        auto Pa = P.apply(basis_vec(A.dim, i));
        for (std::size_t k = 0; k < Mod.dim; ++k) {
            auto lv = Mod.act_left(Pa, basis_vec(Mod.dim, k));   // a |> x = P(a)x
            auto rv = Mod.act_right(basis_vec(Mod.dim, k), Pa);  // x <| a = xP(a)
            for (std::size_t l = 0; l < Mod.dim; ++l) {
                out.lambda(i, k, l) = lv[l];
                out.rho(k, i, l) = rv[l];
            }
        }
    }
    return NijenhuisBimodule{out, M.operator_PM};
}

NijenhuisAlgebra semidirect(const AlgebraPresentation& A, const BimodulePresentation& M,
                            const LinearOperator& P, const LinearOperator& P_M) {
    if (M.alg_dim != A.dim || P.dim != A.dim || P_M.dim != M.dim)
        throw DimensionMismatch("semidirect: dimension mismatch");
    std::size_t d = A.dim + M.dim;
    AlgebraPresentation S(d);
    for (std::size_t i = 0; i < A.dim; ++i) S.basis_labels[i] = A.basis_labels.empty() ? "a" + std::to_string(i) : A.basis_labels[i];
    for (std::size_t k = 0; k < M.dim; ++k) S.basis_labels[A.dim + k] = "m" + std::to_string(k);
    // (a,x)(b,y) = (ab, ay + xb); M*M = 0
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = 0; j < A.dim; ++j)
            for (std::size_t k = 0; k < A.dim; ++k) S.mu(i, j, k) = A.mu(i, j, k);
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t k = 0; k < M.dim; ++k)
            for (std::size_t l = 0; l < M.dim; ++l) {
                S.mu(i, A.dim + k, A.dim + l) = M.lambda(i, k, l);
                S.mu(A.dim + k, i, A.dim + l) = M.rho(k, i, l);
            }
    LinearOperator op(d);
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = 0; j < A.dim; ++j) op.at(i, j) = P.at(i, j);
    for (std::size_t k = 0; k < M.dim; ++k)
        for (std::size_t l = 0; l < M.dim; ++l) op.at(A.dim + k, A.dim + l) = P_M.at(k, l);
    return NijenhuisAlgebra{S, op};
}

CheckReport check_relative_rb(const AlgebraPresentation& A, const BimodulePresentation& M,
                              const std::vector<Rational>& P_MtoA) {
    if (M.alg_dim != A.dim) throw DimensionMismatch("check_relative_rb: algebra dimension mismatch");
    if (P_MtoA.size() != A.dim * M.dim)
        throw DimensionMismatch("check_relative_rb: operator must be dim(A) x dim(M)");
    auto apply_P = [&](const std::vector<Rational>& x) {
        std::vector<Rational> out(A.dim, Rational(0));
        for (std::size_t i = 0; i < A.dim; ++i)
            for (std::size_t k = 0; k < M.dim; ++k) out[i] += P_MtoA[i * M.dim + k] * x[k];
        return out;
    };
    CheckReport rep{"relative_rb", {}};
    for (std::size_t k = 0; k < M.dim; ++k) {
        auto x = basis_vec(M.dim, k);
        auto Px = apply_P(x);
        for (std::size_t l = 0; l < M.dim; ++l) {
            auto y = basis_vec(M.dim, l);
            auto Py = apply_P(y);
            auto lhs = A.product_vec(Px, Py);
            auto rhs = apply_P(add_vec(M.act_left(Px, y), M.act_right(x, Py)));
            if (lhs != rhs) rep.violations.push_back({{k, l}, lhs, rhs});
        }
    }
    return rep;
}

NijenhuisAlgebra das_lift(const AlgebraPresentation& A, const BimodulePresentation& M,
                          const std::vector<Rational>& P_MtoA) {
    if (!check_relative_rb(A, M, P_MtoA).pass())
        throw NotRelativeRB("das_lift: operator fails the relative Rota-Baxter check");
    NijenhuisAlgebra base = semidirect(A, M, LinearOperator(A.dim), LinearOperator(M.dim));
    // N_P(a, x) = (P(x), 0): only the A-rows over the M-columns are nonzero.
    LinearOperator N_P(A.dim + M.dim);
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t k = 0; k < M.dim; ++k) N_P.at(i, A.dim + k) = P_MtoA[i * M.dim + k];
    return NijenhuisAlgebra{base.algebra, N_P};
}

}  // namespace njcalc
