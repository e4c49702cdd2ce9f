#include "njcalc/homotopy.hpp"

#include <functional>

#include "njcalc/sparse_matrix.hpp"

namespace njcalc {

namespace {

void compositions_into(int n, int p, std::vector<int>& cur,
                       const std::function<void(const std::vector<int>&)>& emit) {
    if (p == 1) {
        if (n >= 1) {
            cur.push_back(n);
            emit(cur);
            cur.pop_back();
        }
        return;
    }
    for (int first = 1; first <= n - (p - 1); ++first) {
        cur.push_back(first);
        compositions_into(n - first, p - 1, cur, emit);
        cur.pop_back();
    }
}

}  // namespace

void HomotopyNijenhuisAlgebra::validate() const {
    for (const auto& [n, op] : m) {
        if (op.arity() != n || op.degree() != n - 2 || !(op.domain() == V()) || !(op.codomain() == V()))
            throw DegreeViolation("HomotopyNijenhuisAlgebra: m_" + std::to_string(n) +
                                  " must be a degree n-2 map V^n -> V");
    }
    for (const auto& [n, op] : p) {
        if (op.arity() != n || op.degree() != n - 1 || !(op.domain() == V()) || !(op.codomain() == V()))
            throw DegreeViolation("HomotopyNijenhuisAlgebra: P_" + std::to_string(n) +
                                  " must be a degree n-1 map V^n -> V");
    }
}

DeformationElement HomotopyNijenhuisAlgebra::to_deformation() const {
    validate();
    DeformationElement alpha;
    alpha.space = space;
    for (const auto& [n, op] : m) {
        GradedMap b = tilde_inv(op);
        if (!b.is_zero()) alpha.alg.emplace(n, b);
    }
    for (const auto& [n, op] : p) {
        GradedMap r = hat_inv(op);
        if (!r.is_zero()) alpha.njo.emplace(n, r);
    }
    alpha.validate();
    return alpha;
}

HomotopyNijenhuisAlgebra HomotopyNijenhuisAlgebra::from_deformation(const DeformationElement& alpha) {
    alpha.validate();
    HomotopyNijenhuisAlgebra H;
    H.space = alpha.space;
    for (const auto& [n, b] : alpha.alg) {
        GradedMap op = tilde(b);
        if (!op.is_zero()) H.m.emplace(n, op);
    }
    for (const auto& [n, r] : alpha.njo) {
        GradedMap op = hat(r);
        if (!op.is_zero()) H.p.emplace(n, op);
    }
    H.validate();
    return H;
}

GradedMap stasheff_residual(const HomotopyNijenhuisAlgebra& H, int n) {
    GradedMap res(H.V(), H.V(), n, n - 3);
    for (int j = 1; j <= n; ++j) {
        auto inner = H.m.find(j);
        if (inner == H.m.end()) continue;
        int outer_arity = n - j + 1;
        auto outer = H.m.find(outer_arity);
        if (outer == H.m.end()) continue;
        for (int i = 0; i + j <= n; ++i) {
            int k = n - i - j;
            res += insert_at(outer->second, i, inner->second).scaled(pow_sign(i + static_cast<long>(j) * k));
        }
    }
    return res;
}

ResidualReport check_stasheff(const HomotopyNijenhuisAlgebra& H, int max_n) {
    H.validate();
    ResidualReport rep{"stasheff", {}};
    for (int n = 1; n <= max_n; ++n) rep.residuals.emplace_back(n, stasheff_residual(H, n));
    return rep;
}

GradedMap homotopy_nijenhuis_residual(const HomotopyNijenhuisAlgebra& H, int n) {
    GradedMap res(H.V(), H.V(), n, n - 2);
    for (int p = 1; p <= n; ++p) {
        auto mp = H.m.find(p);
        if (mp == H.m.end()) continue;
        std::vector<int> parts;
        compositions_into(n, p, parts, [&](const std::vector<int>& r) {
            for (int t = 0; t <= p; ++t) {
                // needs every P_{r_q}, outer (q <= t) and inner alike
                bool have = true;
                for (int q = 1; q <= p; ++q)
                    if (!H.p.count(r[static_cast<std::size_t>(q - 1)])) have = false;
                if (!have) continue;

                // i_q + k_q + 1 = r_q for q <= t
                std::vector<int> iq(static_cast<std::size_t>(t), 0);
                std::function<void(int)> loop_i = [&](int q) {
                    if (q == t) {
                        // h_t + ... + h_p = t
                        std::vector<int> h(static_cast<std::size_t>(p - t + 1), 0);
                        std::function<void(int, int)> loop_h = [&](int idx, int rest) {
                            if (idx == p - t) {
                                h[static_cast<std::size_t>(idx)] = rest;
                                // sign alpha
                                long alpha = 0;
                                for (int q2 = 1; q2 <= t; ++q2) {
                                    long rq = r[static_cast<std::size_t>(q2 - 1)];
                                    long kq = rq - 1 - iq[static_cast<std::size_t>(q2 - 1)];
                                    long suffix = 0;
                                    for (int s = q2 + 1; s <= p; ++s) suffix += r[static_cast<std::size_t>(s - 1)];
                                    alpha += rq + kq + suffix * kq - static_cast<long>(q2) * kq;
                                }
                                for (int ii = t + 1; ii <= p; ++ii) {
                                    long hsum = 0;
                                    for (int j = t; j <= ii - 1; ++j) hsum += h[static_cast<std::size_t>(j - t)];
                                    alpha += (hsum + ii - t - p) * (r[static_cast<std::size_t>(ii - 1)] - 1);
                                }
                                // assemble m_p o (id^{h_t} (x) P (x) id^{h_{t+1}} ...)
                                GradedMap X = mp->second;
                                int shift = 0, consumed = 0;
                                for (int s = 0; s < p - t; ++s) {
                                    consumed += h[static_cast<std::size_t>(s)];
                                    int slot = consumed + s;
                                    X = insert_at(X, slot + shift,
                                                  H.p.at(r[static_cast<std::size_t>(t + s)]));
                                    shift += r[static_cast<std::size_t>(t + s)] - 1;
                                }
                                for (int q2 = t; q2 >= 1; --q2)
                                    X = insert_at(H.p.at(r[static_cast<std::size_t>(q2 - 1)]),
                                                  iq[static_cast<std::size_t>(q2 - 1)], X);
                                res += X.scaled(pow_sign(alpha));
                                return;
                            }
                            for (int v = 0; v <= rest; ++v) {
                                h[static_cast<std::size_t>(idx)] = v;
                                loop_h(idx + 1, rest - v);
                            }
                        };
                        loop_h(0, t);
                        return;
                    }
                    for (int v = 0; v < r[static_cast<std::size_t>(q)]; ++v) {
                        iq[static_cast<std::size_t>(q)] = v;
                        loop_i(q + 1);
                    }
                };
                loop_i(0);
            }
        });
    }
    return res;
}

ResidualReport check_homotopy_nijenhuis(const HomotopyNijenhuisAlgebra& H, int max_n) {
    H.validate();
    ResidualReport rep{"homotopy_nijenhuis", {}};
    for (int n = 1; n <= max_n; ++n) rep.residuals.emplace_back(n, homotopy_nijenhuis_residual(H, n));
    return rep;
}

namespace {

/// Evaluate a map on concrete coefficient vectors (multilinear expansion).
std::vector<Rational> evaluate(const GradedMap& f, const std::vector<std::vector<Rational>>& args) {
    std::vector<Rational> out(static_cast<std::size_t>(f.codomain().dim()), Rational(0));
    for (const auto& [k, c] : f.entries()) {
        Rational w = c;
        for (std::size_t j = 0; j < k.first.size() && !w.is_zero(); ++j)
            w *= args[j][static_cast<std::size_t>(k.first[j])];
        if (!w.is_zero()) out[static_cast<std::size_t>(k.second)] += w;
    }
    return out;
}

}  // namespace

HomologyStructure homology_structure(const HomotopyNijenhuisAlgebra& H, int max_n) {
    H.validate();
    int bound = std::max(3, max_n);
    if (!check_stasheff(H, bound).pass() || !check_homotopy_nijenhuis(H, bound).pass())
        throw DegreeViolation("homology_structure: input fails the homotopy identities");

    const GradedSpace& V = *H.space;
    GradedMap d1 = H.m.count(1) ? H.m.at(1) : GradedMap(H.V(), H.V(), 1, -1);

    // per-degree matrix of m_1: V_deg -> V_{deg-1}, full-space indices
    int dim = V.total_dim();
    SparseMatrix D(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
    for (const auto& [k, c] : d1.entries()) D.add(static_cast<std::size_t>(k.second),
                                                  static_cast<std::size_t>(k.first[0]), c);

    // cycles and boundaries degreewise, represented in full-space coordinates
    std::vector<std::vector<Rational>> reps;        // representative vectors
    std::vector<int> rep_degs;
    std::vector<std::vector<Rational>> boundaries;  // image vectors of m_1
    for (int j = 0; j < dim; ++j) {
        std::vector<Rational> col(static_cast<std::size_t>(dim), Rational(0));
        bool nz = false;
        for (int i = 0; i < dim; ++i) {
            col[static_cast<std::size_t>(i)] = D.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            nz = nz || !col[static_cast<std::size_t>(i)].is_zero();
        }
        if (nz) boundaries.push_back(col);
    }
    auto kernel = D.kernel_basis();
    // choose representatives: kernel vectors independent modulo boundaries
    {
        SparseMatrix sel(static_cast<std::size_t>(dim), boundaries.size() + kernel.size());
        std::size_t c = 0;
        for (const auto& b : boundaries) {
            for (int i = 0; i < dim; ++i) sel.add(static_cast<std::size_t>(i), c, b[static_cast<std::size_t>(i)]);
            ++c;
        }
        for (const auto& z : kernel) {
            for (int i = 0; i < dim; ++i) sel.add(static_cast<std::size_t>(i), c, z[static_cast<std::size_t>(i)]);
            ++c;
        }
        // greedy left-to-right pivot columns: boundaries first, so the picked
        // kernel columns are independent modulo the image
        std::size_t base_rank = [&] {
            SparseMatrix b(static_cast<std::size_t>(dim), boundaries.size());
            for (std::size_t cc = 0; cc < boundaries.size(); ++cc)
                for (int i = 0; i < dim; ++i)
                    b.add(static_cast<std::size_t>(i), cc, boundaries[cc][static_cast<std::size_t>(i)]);
            return b.rank();
        }();
        SparseMatrix acc(static_cast<std::size_t>(dim), 0);
        std::size_t cur_rank = base_rank;
        // incremental rank growth test per kernel vector
        std::vector<std::vector<Rational>> chosen = boundaries;
        for (const auto& z : kernel) {
            std::vector<std::vector<Rational>> trial = chosen;
            trial.push_back(z);
            SparseMatrix t(static_cast<std::size_t>(dim), trial.size());
            for (std::size_t cc = 0; cc < trial.size(); ++cc)
                for (int i = 0; i < dim; ++i)
                    t.add(static_cast<std::size_t>(i), cc, trial[cc][static_cast<std::size_t>(i)]);
            if (t.rank() > cur_rank) {
                ++cur_rank;
                chosen.push_back(z);
                reps.push_back(z);
                int deg = 0;
                for (int i = 0; i < dim; ++i)
                    if (!z[static_cast<std::size_t>(i)].is_zero()) deg = V.degree_of(i);
                rep_degs.push_back(deg);
            }
        }
    }

    // class of a cycle: solve [reps | boundaries] x = v, read the rep part
    SparseMatrix decomp(static_cast<std::size_t>(dim), reps.size() + boundaries.size());
    for (std::size_t c = 0; c < reps.size(); ++c)
        for (int i = 0; i < dim; ++i) decomp.add(static_cast<std::size_t>(i), c, reps[c][static_cast<std::size_t>(i)]);
    for (std::size_t c = 0; c < boundaries.size(); ++c)
        for (int i = 0; i < dim; ++i)
            decomp.add(static_cast<std::size_t>(i), reps.size() + c, boundaries[c][static_cast<std::size_t>(i)]);
    auto class_of = [&](const std::vector<Rational>& v) {
        auto x = solve_linear(decomp, v);
        if (!x) throw NotWellDefined("homology_structure: value is not a cycle modulo boundaries");
        return std::vector<Rational>(x->begin(), x->begin() + static_cast<long>(reps.size()));
    };

    GradedMap m2 = H.m.count(2) ? H.m.at(2) : GradedMap(H.V(), H.V(), 2, 0);
    GradedMap p1 = H.p.count(1) ? H.p.at(1) : GradedMap(H.V(), H.V(), 1, 0);

    auto is_cycle = [&](const std::vector<Rational>& v) {
        auto dv = D.apply(v);
        for (const auto& x : dv)
            if (!x.is_zero()) return false;
        return true;
    };

    std::size_t h = reps.size();
    AlgebraPresentation A(h);
    LinearOperator P(h);
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < h; ++j) {
            auto val = evaluate(m2, {reps[i], reps[j]});
            if (!is_cycle(val)) throw NotWellDefined("homology_structure: m_2 of cycles is not a cycle");
            auto cls = class_of(val);
            for (std::size_t k = 0; k < h; ++k) A.mu(i, j, k) = cls[k];
        }
        auto pv = evaluate(p1, {reps[i]});
        if (!is_cycle(pv)) throw NotWellDefined("homology_structure: P_1 of a cycle is not a cycle");
        auto cls = class_of(pv);
        for (std::size_t k = 0; k < h; ++k) P.at(k, i) = cls[k];
    }

    // representative independence: products and the operator kill boundaries
    for (const auto& b : boundaries) {
        for (std::size_t i = 0; i < h; ++i) {
            for (auto* pairv : {&b}) {
                auto v1 = evaluate(m2, {*pairv, reps[i]});
                auto v2 = evaluate(m2, {reps[i], *pairv});
                for (const auto& v : {v1, v2}) {
                    if (!is_cycle(v)) continue;  // handled by homotopy correction terms
                    auto cls = class_of(v);
                    for (const auto& x : cls)
                        if (!x.is_zero())
                            throw NotWellDefined("homology_structure: representative-dependent product");
                }
            }
        }
        auto pv = evaluate(p1, {b});
        if (is_cycle(pv)) {
            auto cls = class_of(pv);
            for (const auto& x : cls)
                if (!x.is_zero()) throw NotWellDefined("homology_structure: representative-dependent operator");
        }
    }

    auto assoc = check_associativity(A);
    if (!assoc.pass()) throw NotWellDefined("homology_structure: induced product is not associative");
    auto nij = check_nijenhuis(A, P);
    if (!nij.pass()) throw NotWellDefined("homology_structure: induced operator is not Nijenhuis");

    return HomologyStructure{NijenhuisAlgebra{A, P}, rep_degs};
}

void AInfinityOneAlgebra::validate() const {
    for (const auto& [k, op] : ops) {
        if (op.arity() != k || op.degree() != -1 || !(op.domain() == sA()) || !(op.codomain() == sA()))
            throw DegreeViolation("AInfinityOneAlgebra: operation " + std::to_string(k) +
                                  " must be a degree -1 map on the suspended carrier");
    }
}

ResidualReport check_ainf1(const AInfinityOneAlgebra& A, int max_n) {
    A.validate();
    ResidualReport rep{"ainf1", {}};
    for (int n = 1; n <= max_n; ++n) {
        GradedMap res(A.sA(), A.sA(), n, -2);
        for (int i = 1; i <= n; ++i) {
            int j = n + 1 - i;
            auto oj = A.ops.find(j);
            auto oi = A.ops.find(i);
            if (oj == A.ops.end() || oi == A.ops.end()) continue;
            res += brace(oj->second, {oi->second});
        }
        rep.residuals.emplace_back(n, res);
    }
    return rep;
}

SumSpace direct_sum(const GradedSpace& A, const GradedSpace& M) {
    std::map<int, int> dims;
    for (const auto& [d, n] : A.components()) dims[d] += n;
    for (const auto& [d, n] : M.components()) dims[d] += n;
    SumSpace out;
    out.total = std::make_shared<const GradedSpace>(GradedSpace(dims));
    out.is_m.assign(static_cast<std::size_t>(out.total->total_dim()), false);
    out.embed_a.resize(static_cast<std::size_t>(A.total_dim()));
    out.embed_m.resize(static_cast<std::size_t>(M.total_dim()));
    for (int i = 0; i < A.total_dim(); ++i) {
        int d = A.degree_of(i);
        int off = i - A.index_of(d, 0);
        out.embed_a[static_cast<std::size_t>(i)] = out.total->index_of(d, off);
    }
    for (int i = 0; i < M.total_dim(); ++i) {
        int d = M.degree_of(i);
        int off = i - M.index_of(d, 0);
        int idx = out.total->index_of(d, A.dim_in_degree(d) + off);
        out.embed_m[static_cast<std::size_t>(i)] = idx;
        out.is_m[static_cast<std::size_t>(idx)] = true;
    }
    return out;
}

void AInfinityOneBimodule::validate() const {
    SpaceRef sW{sum.total, 1};
    for (const auto& [k, op] : mfrak) {
        if (op.arity() != k || op.degree() != -1 || !(op.domain() == sW) || !(op.codomain() == sW))
            throw DegreeViolation("AInfinityOneBimodule: algebra operation shape mismatch");
        for (const auto& [key, c] : op.entries()) {
            for (int in : key.first)
                if (sum.is_m[static_cast<std::size_t>(in)])
                    throw DegreeViolation("AInfinityOneBimodule: algebra operation touches the module");
            if (sum.is_m[static_cast<std::size_t>(key.second)])
                throw DegreeViolation("AInfinityOneBimodule: algebra operation lands in the module");
        }
    }
    for (const auto& [k, op] : rho) {
        if (op.arity() != k || op.degree() != -1 || !(op.domain() == sW) || !(op.codomain() == sW))
            throw DegreeViolation("AInfinityOneBimodule: module operation shape mismatch");
        for (const auto& [key, c] : op.entries()) {
            int m_inputs = 0;
            for (int in : key.first) m_inputs += sum.is_m[static_cast<std::size_t>(in)] ? 1 : 0;
            if (m_inputs != 1 || !sum.is_m[static_cast<std::size_t>(key.second)])
                throw DegreeViolation(
                    "AInfinityOneBimodule: module operation must have exactly one module input and a "
                    "module output");
        }
    }
}

ResidualReport check_ainf1_bimodule(const AInfinityOneBimodule& M, int max_n) {
    M.validate();
    SpaceRef sW{M.sum.total, 1};
    ResidualReport rep{"ainf1_bimodule", {}};
    for (int n = 1; n <= max_n; ++n) {
        GradedMap res(sW, sW, n, -2);
        for (int i = 1; i <= n; ++i) {
            int j = n + 1 - i;
            auto rj = M.rho.find(j);
            if (rj == M.rho.end()) continue;
            auto mi = M.mfrak.find(i);
            if (mi != M.mfrak.end()) res += brace(rj->second, {mi->second});
            auto ri = M.rho.find(i);
            if (ri != M.rho.end()) res += brace(rj->second, {ri->second});
        }
        rep.residuals.emplace_back(n, res);
    }
    return rep;
}

AInfinityOneAlgebra semidirect_ainf1(const AInfinityOneBimodule& M, int max_n) {
    M.validate();
    AInfinityOneAlgebra out;
    out.space = M.sum.total;
    for (const auto& [k, op] : M.mfrak) out.ops.emplace(k, op);
    for (const auto& [k, op] : M.rho) {
        auto it = out.ops.find(k);
        if (it == out.ops.end())
            out.ops.emplace(k, op);
        else
            it->second += op;
    }
    if (!check_ainf1(out, max_n).pass())
        throw DegreeViolation("semidirect_ainf1: semidirect operations fail the shifted Stasheff identities");
    return out;
}

GradedMap homotopy_rb_residual(const AInfinityOneBimodule& M, const HomotopyRBOperator& B, int n) {
    SpaceRef sW{M.sum.total, 1};
    GradedMap res(sW, sW, n, -1);
    for (int p = 1; p <= n; ++p) {
        std::vector<int> parts;
        compositions_into(n, p, parts, [&](const std::vector<int>& r) {
            bool have_b = true;
            for (int x : r)
                if (!B.B.count(x)) have_b = false;
            if (!have_b) return;
            auto mp = M.mfrak.find(p);
            if (mp != M.mfrak.end()) {
                std::vector<GradedMap> args;
                for (int x : r) args.push_back(suspend_output(B.B.at(x)));
                res += brace(mp->second, args);
            }
            auto rp = M.rho.find(p);
            if (rp != M.rho.end()) {
                std::vector<GradedMap> args;
                for (std::size_t s = 1; s < r.size(); ++s)
                    args.push_back(suspend_output(B.B.at(r[s])));
                GradedMap inner = brace(rp->second, args);
                res += brace(suspend_output(B.B.at(r[0])), {inner}).scaled(Rational(-1));
            }
        });
    }
    return res;
}

ResidualReport check_homotopy_rb(const AInfinityOneBimodule& M, const HomotopyRBOperator& B, int max_n) {
    M.validate();
    SpaceRef sW{M.sum.total, 1};
    SpaceRef W{M.sum.total, 0};
    for (const auto& [k, op] : B.B) {
        if (op.arity() != k || op.degree() != -1 || !(op.domain() == sW) || !(op.codomain() == W))
            throw DegreeViolation("check_homotopy_rb: component shape mismatch");
        for (const auto& [key, c] : op.entries()) {
            for (int in : key.first)
                if (!M.sum.is_m[static_cast<std::size_t>(in)])
                    throw DegreeViolation("check_homotopy_rb: component must consume module inputs");
            if (M.sum.is_m[static_cast<std::size_t>(key.second)])
                throw DegreeViolation("check_homotopy_rb: component must land in the algebra");
        }
    }
    ResidualReport rep{"homotopy_rb", {}};
    for (int n = 1; n <= max_n; ++n) rep.residuals.emplace_back(n, homotopy_rb_residual(M, B, n));
    return rep;
}

DeformationElement rb_to_nijenhuis(const AInfinityOneBimodule& M, const HomotopyRBOperator& B, int max_n) {
    if (!check_homotopy_rb(M, B, max_n).pass())
        throw NotHomotopyRB("rb_to_nijenhuis: operator fails the weight-0 identity");
    AInfinityOneAlgebra semi = semidirect_ainf1(M, max_n);
    DeformationElement alpha;
    alpha.space = M.sum.total;
    for (const auto& [k, op] : semi.ops)
        if (!op.is_zero()) alpha.alg.emplace(k, op);
    for (const auto& [k, op] : B.B)
        if (!op.is_zero()) alpha.njo.emplace(k, op);
    alpha.validate();
    return alpha;
}

}  // namespace njcalc
