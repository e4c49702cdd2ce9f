#include "njcalc/cohomology.hpp"

#include <functional>

#include "njcalc/parallel.hpp"

namespace njcalc {

namespace {

std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

/// Iterates tuples in A^(x n) lexicographically (first index slowest).
bool next_tuple(std::vector<std::size_t>& t, std::size_t base) {
    for (std::size_t j = t.size(); j-- > 0;) {
        if (++t[j] < base) return true;
        t[j] = 0;
    }
    return false;
}

/// Column-parallel assembly with deterministic merge order.
SparseMatrix assemble(std::size_t rows, std::size_t cols,
                      const std::function<std::vector<std::pair<std::size_t, Rational>>(std::size_t)>& col_fn) {
    std::vector<std::vector<std::pair<std::size_t, Rational>>> per_col(cols);
    parallel_for(cols, [&](std::size_t c) { per_col[c] = col_fn(c); });
    SparseMatrix out(rows, cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (const auto& [r, v] : per_col[c]) out.add(r, c, v);
    return out;
}

struct ColSplit {
    std::size_t out;
    std::vector<std::size_t> ins;
};

ColSplit split_col(std::size_t col, std::size_t dim_a, int n) {
    ColSplit s;
    s.ins.resize(static_cast<std::size_t>(n));
    for (int j = n - 1; j >= 0; --j) {
        s.ins[static_cast<std::size_t>(j)] = col % dim_a;
        col /= dim_a;
    }
    s.out = col;
    return s;
}

}  // namespace

std::size_t cochain_dim(std::size_t dim_a, std::size_t dim_m, int n) { return dim_m * ipow(dim_a, n); }

std::size_t cochain_index(const std::vector<std::size_t>& ins, std::size_t out, std::size_t dim_a,
                          std::size_t /*dim_m*/) {
    std::size_t idx = out;
    for (auto i : ins) idx = idx * dim_a + i;
    return idx;
}

namespace {

/// Shared skeleton of the Hochschild-type differentials. The three term
/// families are supplied as coefficient tables:
///   lam(a, o, l): coefficient of m_l in the first-term action of e_a on m_o
///   mid(u, v, w): coefficient of e_w in the middle-term product e_u e_v
///   rho(o, a, l): coefficient of m_l in the last-term action
SparseMatrix hochschild_like(std::size_t dim_a, std::size_t dim_m, int n,
                             const std::function<Rational(std::size_t, std::size_t, std::size_t)>& lam,
                             const std::function<Rational(std::size_t, std::size_t, std::size_t)>& mid,
                             const std::function<Rational(std::size_t, std::size_t, std::size_t)>& rho) {
    std::size_t rows = cochain_dim(dim_a, dim_m, n + 1);
    std::size_t cols = cochain_dim(dim_a, dim_m, n);
    return assemble(rows, cols, [&, n](std::size_t col) {
        auto [o, S] = split_col(col, dim_a, n);
        std::vector<std::pair<std::size_t, Rational>> entries;
        std::vector<std::size_t> T(static_cast<std::size_t>(n) + 1);

        // a_1 . f(a_2..a_{n+1}) : T = (a, S...)
        for (std::size_t a = 0; a < dim_a; ++a) {
            std::copy(S.begin(), S.end(), T.begin() + 1);
            T[0] = a;
            for (std::size_t l = 0; l < dim_m; ++l) {
                Rational c = lam(a, o, l);
                if (!c.is_zero()) entries.emplace_back(cochain_index(T, l, dim_a, dim_m), c);
            }
        }
        // (-1)^i f(..., a_i a_{i+1}, ...) : T = (S_1..S_{i-1}, u, v, S_{i+1}..)
        for (int i = 1; i <= n; ++i) {
            Rational sgn = pow_sign(i);
            for (std::size_t u = 0; u < dim_a; ++u)
                for (std::size_t v = 0; v < dim_a; ++v) {
                    Rational c = mid(u, v, S[static_cast<std::size_t>(i - 1)]);
                    if (c.is_zero()) continue;
                    std::size_t w = 0;
                    for (int j = 0; j < i - 1; ++j) T[static_cast<std::size_t>(w++)] = S[static_cast<std::size_t>(j)];
                    T[w++] = u;
                    T[w++] = v;
                    for (int j = i; j < n; ++j) T[w++] = S[static_cast<std::size_t>(j)];
                    entries.emplace_back(cochain_index(T, o, dim_a, dim_m), sgn * c);
                }
        }
        // (-1)^{n+1} f(a_1..a_n) . a_{n+1} : T = (S..., a)
        Rational last_sgn = pow_sign(n + 1);
        for (std::size_t a = 0; a < dim_a; ++a) {
            std::copy(S.begin(), S.end(), T.begin());
            T[static_cast<std::size_t>(n)] = a;
            for (std::size_t l = 0; l < dim_m; ++l) {
                Rational c = rho(o, a, l);
                if (!c.is_zero()) entries.emplace_back(cochain_index(T, l, dim_a, dim_m), last_sgn * c);
            }
        }
        return entries;
    });
}

}  // namespace

SparseMatrix hochschild_d(const AlgebraPresentation& A, const BimodulePresentation& M, int n) {
    if (n < 0) throw std::invalid_argument("hochschild_d: n >= 0 required");
    if (M.alg_dim != A.dim) throw DimensionMismatch("hochschild_d: bimodule over a different algebra");
    return hochschild_like(
        A.dim, M.dim, n, [&](std::size_t a, std::size_t o, std::size_t l) { return M.lambda(a, o, l); },
        [&](std::size_t u, std::size_t v, std::size_t w) { return A.mu(u, v, w); },
        [&](std::size_t o, std::size_t a, std::size_t l) { return M.rho(o, a, l); });
}

SparseMatrix hochschild_d_reference(const AlgebraPresentation& A, const BimodulePresentation& M, int n) {
    // Untuned evaluation straight from the definition: apply each basis
    // cochain to every input tuple. Kept as the oracle the fast kernel is
    // compared against.
    std::size_t rows = cochain_dim(A.dim, M.dim, n + 1);
    std::size_t cols = cochain_dim(A.dim, M.dim, n);
    SparseMatrix out(rows, cols);
    for (std::size_t col = 0; col < cols; ++col) {
        auto [o, S] = split_col(col, A.dim, n);
        auto f = [&](const std::vector<std::size_t>& args) {
            std::vector<Rational> val(M.dim, Rational(0));
            if (args == std::vector<std::size_t>(S.begin(), S.end())) val[o] = Rational(1);
            return val;
        };
        std::vector<std::size_t> T(static_cast<std::size_t>(n) + 1, 0);
        do {
            std::vector<Rational> acc(M.dim, Rational(0));
            std::vector<Rational> ea(A.dim, Rational(0));
            // a_1 f(rest)
            {
                std::vector<std::size_t> rest(T.begin() + 1, T.end());
                auto fv = f(rest);
                std::fill(ea.begin(), ea.end(), Rational(0));
                ea[T[0]] = Rational(1);
                auto term = M.act_left(ea, fv);
                for (std::size_t l = 0; l < M.dim; ++l) acc[l] += term[l];
            }
            // middle terms
            for (int i = 1; i <= n; ++i) {
                auto prod = A.product(T[static_cast<std::size_t>(i - 1)], T[static_cast<std::size_t>(i)]);
                for (std::size_t w = 0; w < A.dim; ++w) {
                    if (prod[w].is_zero()) continue;
                    std::vector<std::size_t> args;
                    for (int j = 0; j < i - 1; ++j) args.push_back(T[static_cast<std::size_t>(j)]);
                    args.push_back(w);
                    for (int j = i + 1; j <= n; ++j) args.push_back(T[static_cast<std::size_t>(j)]);
                    auto fv = f(args);
                    for (std::size_t l = 0; l < M.dim; ++l) acc[l] += pow_sign(i) * prod[w] * fv[l];
                }
            }
            // f(front) a_{n+1}
            {
                std::vector<std::size_t> front(T.begin(), T.end() - 1);
                auto fv = f(front);
                std::fill(ea.begin(), ea.end(), Rational(0));
                ea[T[static_cast<std::size_t>(n)]] = Rational(1);
                auto term = M.act_right(fv, ea);
                for (std::size_t l = 0; l < M.dim; ++l) acc[l] += pow_sign(n + 1) * term[l];
            }
            for (std::size_t l = 0; l < M.dim; ++l)
                if (!acc[l].is_zero()) out.add(cochain_index(T, l, A.dim, M.dim), col, acc[l]);
        } while (next_tuple(T, A.dim));
    }
    return out;
}

SparseMatrix deformed_d(const NijenhuisAlgebra& N, const NijenhuisBimodule& M, int n) {
    const auto& A = N.algebra;
    const auto& P = N.operator_P;
    const auto& Mod = M.module;
    if (Mod.alg_dim != A.dim || P.dim != A.dim)
        throw DimensionMismatch("deformed_d: dimension mismatch");
    // deformed product constants and P-twisted actions
    std::vector<Rational> muP(A.dim * A.dim * A.dim, Rational(0));
    for (std::size_t u = 0; u < A.dim; ++u)
        for (std::size_t v = 0; v < A.dim; ++v) {
            for (std::size_t c = 0; c < A.dim; ++c) {
                if (!P.at(c, u).is_zero())
                    for (std::size_t w = 0; w < A.dim; ++w)
                        muP[(u * A.dim + v) * A.dim + w] += P.at(c, u) * A.mu(c, v, w);
                if (!P.at(c, v).is_zero())
                    for (std::size_t w = 0; w < A.dim; ++w)
                        muP[(u * A.dim + v) * A.dim + w] += P.at(c, v) * A.mu(u, c, w);
            }
            for (std::size_t c = 0; c < A.dim; ++c) {
                if (A.mu(u, v, c).is_zero()) continue;
                for (std::size_t w = 0; w < A.dim; ++w)
                    muP[(u * A.dim + v) * A.dim + w] -= A.mu(u, v, c) * P.at(w, c);
            }
        }
    return hochschild_like(
        A.dim, Mod.dim, n,
        [&](std::size_t a, std::size_t o, std::size_t l) {
            Rational c(0);  // lambda(P(e_a), o, l)
            for (std::size_t b = 0; b < A.dim; ++b)
                if (!P.at(b, a).is_zero()) c += P.at(b, a) * Mod.lambda(b, o, l);
            return c;
        },
        [&](std::size_t u, std::size_t v, std::size_t w) { return muP[(u * A.dim + v) * A.dim + w]; },
        [&](std::size_t o, std::size_t a, std::size_t l) {
            Rational c(0);  // rho(o, P(e_a), l)
            for (std::size_t b = 0; b < A.dim; ++b)
                if (!P.at(b, a).is_zero()) c += P.at(b, a) * Mod.rho(o, b, l);
            return c;
        });
}

namespace {

/// Matrix of f |-> Op o f on Hom(A^(x k), M).
SparseMatrix postcompose(const LinearOperator& Op, std::size_t dim_a, int k) {
    std::size_t tuples = ipow(dim_a, k);
    std::size_t d = cochain_dim(dim_a, Op.dim, k);
    SparseMatrix out(d, d);
    for (std::size_t l = 0; l < Op.dim; ++l)
        for (std::size_t o = 0; o < Op.dim; ++o) {
            if (Op.at(l, o).is_zero()) continue;
            for (std::size_t t = 0; t < tuples; ++t) out.add(l * tuples + t, o * tuples + t, Op.at(l, o));
        }
    return out;
}

}  // namespace

SparseMatrix njo_d(const NijenhuisAlgebra& N, const NijenhuisBimodule& M, int n) {
    SparseMatrix dalg = hochschild_d(N.algebra, M.module, n);
    SparseMatrix dP = deformed_d(N, M, n);
    SparseMatrix pm = postcompose(M.operator_PM, N.algebra.dim, n + 1);
    return dP - pm * dalg;
}

SparseMatrix phi(const NijenhuisAlgebra& N, const NijenhuisBimodule& M, int n) {
    const auto& A = N.algebra;
    const auto& P = N.operator_P;
    const auto& Mod = M.module;
    if (n < 0) throw std::invalid_argument("phi: n >= 0 required");
    std::size_t d = cochain_dim(A.dim, Mod.dim, n);
    if (n == 0) return SparseMatrix::identity(d);

    // powers of P_M up to n
    std::vector<LinearOperator> pmpow{LinearOperator::identity(Mod.dim)};
    for (int k = 1; k <= n; ++k) pmpow.push_back(M.operator_PM.compose(pmpow.back()));

    return assemble(d, d, [&, n](std::size_t col) {
        auto [o, S] = split_col(col, A.dim, n);
        std::vector<std::pair<std::size_t, Rational>> entries;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            int k = __builtin_popcount(mask);
            Rational sgn = pow_sign(n - k);
            const LinearOperator& post = pmpow[static_cast<std::size_t>(n - k)];
            // inputs at positions in mask run through P: coefficient of basis
            // tuple T is prod P[S_j][T_j] over masked j, with T_j = S_j elsewhere
            std::vector<std::size_t> T(S.begin(), S.end());
            std::function<void(int, const Rational&)> fill = [&](int j, const Rational& coef) {
                if (j == n) {
                    for (std::size_t l = 0; l < Mod.dim; ++l) {
                        Rational c = post.at(l, o);
                        if (!c.is_zero())
                            entries.emplace_back(cochain_index(T, l, A.dim, Mod.dim), sgn * coef * c);
                    }
                    return;
                }
                if (!(mask & (1u << j))) {
                    T[static_cast<std::size_t>(j)] = S[static_cast<std::size_t>(j)];
                    fill(j + 1, coef);
                    return;
                }
                for (std::size_t u = 0; u < A.dim; ++u) {
                    Rational pc = P.at(S[static_cast<std::size_t>(j)], u);
                    if (pc.is_zero()) continue;
                    T[static_cast<std::size_t>(j)] = u;
                    fill(j + 1, coef * pc);
                }
            };
            fill(0, Rational(1));
        }
        return entries;
    });
}

std::size_t nja_dim(std::size_t dim_a, std::size_t dim_m, int n) {
    if (n == 0) return cochain_dim(dim_a, dim_m, 0);
    return cochain_dim(dim_a, dim_m, n) + cochain_dim(dim_a, dim_m, n - 1);
}

std::vector<ComplexSlice> nja_complex(const NijenhuisAlgebra& N, const NijenhuisBimodule& M, int max_n) {
    std::size_t da = N.algebra.dim, dm = M.module.dim;
    std::vector<ComplexSlice> out;
    for (int n = 0; n <= max_n; ++n) {
        SparseMatrix d(nja_dim(da, dm, n + 1), nja_dim(da, dm, n));
        SparseMatrix dalg = hochschild_d(N.algebra, M.module, n);
        SparseMatrix ph = phi(N, M, n);
        std::size_t alg_rows = cochain_dim(da, dm, n + 1);
        for (const auto& [rc, v] : dalg.entries()) d.add(rc.first, rc.second, v);
        for (const auto& [rc, v] : ph.entries()) d.add(alg_rows + rc.first, rc.second, -v);
        if (n >= 1) {
            SparseMatrix dnjo = njo_d(N, M, n - 1);
            std::size_t alg_cols = cochain_dim(da, dm, n);
            for (const auto& [rc, v] : dnjo.entries()) d.add(alg_rows + rc.first, alg_cols + rc.second, -v);
        }
        out.push_back({n, std::move(d)});
    }
    return out;
}

CohomologyTable cohomology_table(const NijenhuisAlgebra& N, const NijenhuisBimodule& M, int max_n) {
    std::size_t da = N.algebra.dim, dm = M.module.dim;
    std::vector<SparseMatrix> d_alg, d_njo;
    for (int n = 0; n <= max_n; ++n) {
        d_alg.push_back(hochschild_d(N.algebra, M.module, n));
        d_njo.push_back(njo_d(N, M, n));
    }
    auto d_nja = nja_complex(N, M, max_n);

    CohomologyTable tab;
    for (int n = 0; n <= max_n; ++n) {
        SparseMatrix prev_alg = n == 0 ? SparseMatrix(cochain_dim(da, dm, 0), 0)
                                       : d_alg[static_cast<std::size_t>(n - 1)];
        SparseMatrix prev_njo = n == 0 ? SparseMatrix(cochain_dim(da, dm, 0), 0)
                                       : d_njo[static_cast<std::size_t>(n - 1)];
        SparseMatrix prev_nja = n == 0 ? SparseMatrix(nja_dim(da, dm, 0), 0)
                                       : d_nja[static_cast<std::size_t>(n - 1)].d;
        CohomologyRow row;
        row.n = n;
        row.h_alg = cohomology_dim(d_alg[static_cast<std::size_t>(n)], prev_alg);
        row.h_njo = cohomology_dim(d_njo[static_cast<std::size_t>(n)], prev_njo);
        row.h_nja = cohomology_dim(d_nja[static_cast<std::size_t>(n)].d, prev_nja);
        tab.rows.push_back(row);
    }
    for (int n = 0; n <= max_n; ++n) {
        long s = (n % 2 == 0) ? 1 : -1;
        tab.euler_alg += s * static_cast<long>(tab.rows[static_cast<std::size_t>(n)].h_alg);
        tab.euler_njo += s * static_cast<long>(tab.rows[static_cast<std::size_t>(n)].h_njo);
        tab.euler_nja += s * static_cast<long>(tab.rows[static_cast<std::size_t>(n)].h_nja);
    }
    tab.boundary_rank_alg = d_alg[static_cast<std::size_t>(max_n)].rank();
    tab.boundary_rank_njo = d_njo[static_cast<std::size_t>(max_n)].rank();
    tab.boundary_rank_nja = d_nja[static_cast<std::size_t>(max_n)].d.rank();

    // chi_H + (-1)^N rank(d^N) telescopes to the cochain Euler characteristic;
    // the cone identity chi(C_NjA) = chi(C_Alg) - chi(C_NjO^{<=N-1}) then
    // transfers to the cohomology side.
    auto chi_c = [&](auto dim_fn) {
        long c = 0;
        for (int n = 0; n <= max_n; ++n) c += ((n % 2 == 0) ? 1 : -1) * static_cast<long>(dim_fn(n));
        return c;
    };
    long boundary_sign = (max_n % 2 == 0) ? 1 : -1;
    long chi_alg = tab.euler_alg + boundary_sign * static_cast<long>(tab.boundary_rank_alg);
    long chi_njo = tab.euler_njo + boundary_sign * static_cast<long>(tab.boundary_rank_njo);
    long chi_nja = tab.euler_nja + boundary_sign * static_cast<long>(tab.boundary_rank_nja);
    long chi_alg_c = chi_c([&](int n) { return cochain_dim(da, dm, n); });
    long chi_nja_c = chi_c([&](int n) { return nja_dim(da, dm, n); });
    long chi_njo_trunc = 0;
    for (int n = 0; n <= max_n - 1; ++n)
        chi_njo_trunc += ((n % 2 == 0) ? 1 : -1) * static_cast<long>(cochain_dim(da, dm, n));
    bool ok = (chi_alg == chi_alg_c) && (chi_nja == chi_nja_c) && (chi_nja_c == chi_alg_c - chi_njo_trunc);
    // the NjO telescope must also match its own cochain count
    ok = ok && (chi_njo == chi_c([&](int n) { return cochain_dim(da, dm, n); }));
    tab.euler_consistent = ok;
    return tab;
}

CheckReport coefficient_embedding_check(const NijenhuisAlgebra& N, const NijenhuisBimodule& M, int max_n) {
    const auto& A = N.algebra;
    std::size_t da = A.dim, dm = M.module.dim, ds = da + dm;
    NijenhuisAlgebra S = semidirect(A, M.module, N.operator_P, M.operator_PM);
    NijenhuisBimodule S_reg{BimodulePresentation::regular(S.algebra), S.operator_P};

    auto small = nja_complex(N, M, max_n);
    auto big = nja_complex(S, S_reg, max_n);

    // iota on Hom(A^(x k), M) -> Hom(S^(x k), S): basis (out, T) to
    // (da + out, T) with A-inputs embedded as the first da indices of S
    auto iota_hom = [&](int k) {
        std::size_t cols = cochain_dim(da, dm, k);
        std::size_t rows = cochain_dim(ds, ds, k);
        SparseMatrix m(rows, cols);
        for (std::size_t col = 0; col < cols; ++col) {
            auto [o, T] = split_col(col, da, k);
            std::size_t row = da + o;
            for (auto t : T) row = row * ds + t;
            m.set(row, col, Rational(1));
        }
        return m;
    };
    auto iota_nja = [&](int n) {
        std::size_t rows = nja_dim(ds, ds, n), cols = nja_dim(da, dm, n);
        SparseMatrix m(rows, cols);
        SparseMatrix a = iota_hom(n);
        for (const auto& [rc, v] : a.entries()) m.add(rc.first, rc.second, v);
        if (n >= 1) {
            SparseMatrix b = iota_hom(n - 1);
            std::size_t ro = cochain_dim(ds, ds, n), co = cochain_dim(da, dm, n);
            for (const auto& [rc, v] : b.entries()) m.add(ro + rc.first, co + rc.second, v);
        }
        return m;
    };

    CheckReport rep{"coefficient_embedding", {}};
    for (int n = 0; n <= max_n; ++n) {
        SparseMatrix lhs = big[static_cast<std::size_t>(n)].d * iota_nja(n);
        SparseMatrix rhs = iota_nja(n + 1) * small[static_cast<std::size_t>(n)].d;
        if (!(lhs == rhs)) {
            SparseMatrix diff = lhs - rhs;
            Violation v;
            v.indices = {static_cast<std::size_t>(n), diff.nnz()};
            rep.violations.push_back(v);
        }
    }
    return rep;
}

}  // namespace njcalc
