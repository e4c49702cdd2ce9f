#include "njcalc/linf.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "njcalc/sparse_matrix.hpp"

namespace njcalc {

namespace {

Rational factorial(int n) {
    Rational r(1);
    for (int i = 2; i <= n; ++i) r *= Rational(i);
    return r;
}

GradedMap v_level_map_from_mult(const AlgebraPresentation& A, const SpacePtr& V) {
    GradedMap m(SpaceRef{V, 0}, SpaceRef{V, 0}, 2, 0);
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = 0; j < A.dim; ++j)
            for (std::size_t k = 0; k < A.dim; ++k)
                m.add_entry({static_cast<int>(i), static_cast<int>(j)}, static_cast<int>(k), A.mu(i, j, k));
    return m;
}

GradedMap v_level_map_from_operator(const LinearOperator& P, const SpacePtr& V) {
    GradedMap p(SpaceRef{V, 0}, SpaceRef{V, 0}, 1, 0);
    for (std::size_t i = 0; i < P.dim; ++i)
        for (std::size_t j = 0; j < P.dim; ++j)
            p.add_entry({static_cast<int>(j)}, static_cast<int>(i), P.at(i, j));
    return p;
}

}  // namespace

void DeformationElement::validate() const {
    for (const auto& [i, b] : alg) {
        if (b.arity() != i || b.degree() != -1 || !(b.codomain() == sV()) || !(b.domain() == sV()))
            throw DegreeViolation("DeformationElement: b_" + std::to_string(i) +
                                  " must be a degree -1 map (sV)^i -> sV");
    }
    for (const auto& [i, r] : njo) {
        if (r.arity() != i || r.degree() != -1 || !(r.codomain() == V()) || !(r.domain() == sV()))
            throw DegreeViolation("DeformationElement: R_" + std::to_string(i) +
                                  " must be a degree -1 map (sV)^i -> V");
    }
}

GradedMap l2_alg(const GradedMap& sf, const GradedMap& sh) {
    if (sf.codomain() != sf.domain() || sh.codomain() != sh.domain())
        throw CodomainMismatch("l2_alg: both arguments must be alg-flavoured (land in sV)");
    return gerstenhaber(sf, sh);
}

GradedMap l_mixed(const GradedMap& sh, const std::vector<GradedMap>& gs) {
    int n = static_cast<int>(gs.size());
    if (sh.arity() != n)
        throw ArityMismatch("l_mixed: alg element arity " + std::to_string(sh.arity()) +
                            " does not match " + std::to_string(n) + " njo arguments");
    SpaceRef sV = sh.domain();
    int out_arity = 0, out_degree = sh.degree();
    for (const auto& g : gs) {
        out_arity += g.arity();
        out_degree += g.degree() + 1;
    }
    // accumulate in sV-valued form, desuspend once at the end
    GradedMap acc(sV, sV, out_arity, out_degree);

    std::vector<GradedMap> sgs;
    sgs.reserve(gs.size());
    std::vector<int> gdeg;
    for (const auto& g : gs) {
        if (!(g.codomain() == SpaceRef{sV.base, sV.shift - 1}))
            throw CodomainMismatch("l_mixed: njo argument must land in the unsuspended carrier");
        sgs.push_back(suspend_output(g));
        gdeg.push_back(g.degree());
    }
    long h_deg = sh.degree() - 1;  // degree of h where sh = s o h

    std::vector<int> arr(n);
    std::iota(arr.begin(), arr.end(), 0);
    do {
        long chi = chi_sign(arr, gdeg);
        long eta_extra = static_cast<long>(n) * (h_deg + 1);
        for (int j = 0; j < n - 1; ++j) eta_extra += static_cast<long>(n - 1 - j) * gdeg[arr[j]];
        for (int k = 0; k <= n; ++k) {
            // a wrap around an arity-0 argument is an empty insertion sum
            bool dead = false;
            for (int i = 0; i < k; ++i) dead = dead || sgs[arr[i]].arity() == 0;
            if (dead) continue;
            long xi = static_cast<long>(k);
            {
                long s = 0;
                for (int i = 0; i < k; ++i) s += gdeg[arr[i]] + 1;
                xi += (h_deg + 1) * s;
            }
            std::vector<GradedMap> inner_args;
            for (int i = k; i < n; ++i) inner_args.push_back(sgs[arr[i]]);
            GradedMap term = brace(sh, inner_args);
            for (int i = k - 1; i >= 0; --i) term = brace(sgs[arr[i]], {term});
            Rational sign = pow_sign(eta_extra + xi) * Rational(chi);
            acc += term.scaled(sign);
        }
    } while (std::next_permutation(arr.begin(), arr.end()));
    return desuspend_output(acc);
}

GradedMap l_mixed_positioned(const std::vector<GradedMap>& pre, const GradedMap& sh,
                             const std::vector<GradedMap>& post) {
    std::vector<GradedMap> gs = pre;
    gs.insert(gs.end(), post.begin(), post.end());
    long k = static_cast<long>(pre.size());
    long h_deg = sh.degree() - 1;
    long sum_pre = 0;
    for (const auto& g : pre) sum_pre += g.degree();
    Rational sign = pow_sign((h_deg + 1) * sum_pre + k);
    return l_mixed(sh, gs).scaled(sign);
}

std::optional<CElement> l_n_full(const std::vector<CElement>& args) {
    std::size_t n_alg = 0;
    for (const auto& a : args) n_alg += a.is_alg ? 1 : 0;
    if (args.size() == 2 && n_alg == 2) {
        return CElement{true, l2_alg(args[0].map, args[1].map)};
    }
    if (n_alg == 1 && args.size() >= 2) {
        std::vector<GradedMap> pre, post;
        const GradedMap* sh = nullptr;
        for (const auto& a : args) {
            if (a.is_alg)
                sh = &a.map;
            else
                (sh ? post : pre).push_back(a.map);
        }
        if (sh->arity() != static_cast<int>(args.size()) - 1) return std::nullopt;
        return CElement{false, l_mixed_positioned(pre, *sh, post)};
    }
    return std::nullopt;
}

std::pair<GradedMap, GradedMap> mc_residual(const DeformationElement& alpha, int n) {
    alpha.validate();
    SpaceRef sV = alpha.sV();
    GradedMap alg_res(sV, sV, n, -2);
    for (int i = 1; i <= n; ++i) {
        auto outer = alpha.alg.find(n - i + 1);
        auto inner = alpha.alg.find(i);
        if (outer == alpha.alg.end() || inner == alpha.alg.end()) continue;
        alg_res += brace(outer->second, {inner->second});
    }

    GradedMap njo_acc(sV, sV, n, -1);
    // ordered compositions r_1 + ... + r_p = n, every R_{r_j} and b_p present
    std::vector<int> parts;
    std::function<void(int)> rec = [&](int rest) {
        if (rest == 0) {
            int p = static_cast<int>(parts.size());
            auto bit = alpha.alg.find(p);
            if (bit == alpha.alg.end()) return;
            bool have = true;
            for (int r : parts)
                if (!alpha.njo.count(r)) {
                    have = false;
                    break;
                }
            if (!have) return;
            for (int t = 0; t <= p; ++t) {
                std::vector<GradedMap> inner_args;
                for (int s = t; s < p; ++s) inner_args.push_back(suspend_output(alpha.njo.at(parts[s])));
                GradedMap term = brace(bit->second, inner_args);
                for (int q = t - 1; q >= 0; --q)
                    term = brace(suspend_output(alpha.njo.at(parts[q])), {term});
                njo_acc += term.scaled(pow_sign(t));
            }
            return;
        }
        for (int r = 1; r <= rest; ++r) {
            parts.push_back(r);
            rec(rest - r);
            parts.pop_back();
        }
    };
    rec(n);
    return {alg_res, desuspend_output(njo_acc)};
}

bool is_mc(const DeformationElement& alpha, int max_n) {
    for (int n = 1; n <= max_n; ++n) {
        auto [a, o] = mc_residual(alpha, n);
        if (!a.is_zero() || !o.is_zero()) return false;
    }
    return true;
}

DeformationElement from_nijenhuis(const NijenhuisAlgebra& N) {
    if (!check_nijenhuis(N.algebra, N.operator_P).pass())
        throw NotNijenhuis("from_nijenhuis: input fails the Nijenhuis check");
    auto V = std::make_shared<const GradedSpace>(GradedSpace::ungraded(static_cast<int>(N.algebra.dim)));
    DeformationElement alpha;
    alpha.space = V;
    alpha.alg.emplace(2, tilde_inv(v_level_map_from_mult(N.algebra, V)));
    alpha.njo.emplace(1, hat_inv(v_level_map_from_operator(N.operator_P, V)));
    alpha.validate();
    return alpha;
}

void CChain::add(bool is_alg, const GradedMap& m) {
    if (m.is_zero()) return;
    auto& bucket = is_alg ? alg : njo;
    auto it = bucket.find(m.arity());
    if (it == bucket.end()) {
        bucket.emplace(m.arity(), m);
    } else {
        it->second += m;
        if (it->second.is_zero()) bucket.erase(it);
    }
}

namespace {

/// Multisets of the given size over the sorted key list, as count vectors.
void multisets_rec(const std::vector<int>& keys, int size, std::size_t from, std::vector<int>& counts,
                   const std::function<void(const std::vector<int>&)>& emit) {
    if (size == 0) {
        emit(counts);
        return;
    }
    if (from >= keys.size()) return;
    for (int take = size; take >= 0; --take) {
        counts[from] = take;
        multisets_rec(keys, size - take, from + 1, counts, emit);
        counts[from] = 0;
    }
}

}  // namespace

CChain twist_l1(const DeformationElement& alpha, const CElement& x) {
    alpha.validate();
    CChain out;
    std::vector<int> r_arities;
    for (const auto& [i, _] : alpha.njo) r_arities.push_back(i);

    if (x.is_alg) {
        // Gerstenhaber part: -l_2(b_j (x) x)
        for (const auto& [j, b] : alpha.alg) out.add(true, l2_alg(b, x.map).scaled(Rational(-1)));
        // operator part: all-njo insertions, i = arity(x)
        int a = x.map.arity();
        if (a >= 1) {
            std::vector<int> counts(r_arities.size(), 0);
            Rational lead = pow_sign(static_cast<long>(a) * (a + 1) / 2);
            multisets_rec(r_arities, a, 0, counts, [&](const std::vector<int>& cts) {
                std::vector<GradedMap> seq;
                Rational denom(1);
                for (std::size_t c = 0; c < cts.size(); ++c) {
                    for (int rep = 0; rep < cts[c]; ++rep) seq.push_back(alpha.njo.at(r_arities[c]));
                    denom *= factorial(cts[c]);
                }
                // x sits last: positioned sign for k = a njo args in front
                long xdeg = x.map.degree();
                long sum_r = -static_cast<long>(a);
                Rational pos_sign = pow_sign(xdeg * sum_r + a);
                GradedMap val = l_mixed(x.map, seq);
                out.add(false, val.scaled(lead * pos_sign / denom));
            });
        }
    } else {
        // exactly one alg component b_i with arity i = 1 + #njo picks
        for (const auto& [i, b] : alpha.alg) {
            if (i < 1) continue;
            std::vector<int> counts(r_arities.size(), 0);
            Rational lead = pow_sign(static_cast<long>(i) * (i + 1) / 2);
            multisets_rec(r_arities, i - 1, 0, counts, [&](const std::vector<int>& cts) {
                std::vector<GradedMap> seq;
                Rational denom(1);
                for (std::size_t c = 0; c < cts.size(); ++c) {
                    for (int rep = 0; rep < cts[c]; ++rep) seq.push_back(alpha.njo.at(r_arities[c]));
                    denom *= factorial(cts[c]);
                }
                seq.push_back(x.map);
                GradedMap val = l_mixed(b, seq);
                out.add(false, val.scaled(lead / denom));
            });
        }
    }
    return out;
}

namespace {

// flat index of a basis map of Hom((sA)^n, sA or A): out * d^n + lex(inputs)
std::size_t flat_index(const std::vector<int>& ins, int out, std::size_t d) {
    std::size_t idx = static_cast<std::size_t>(out);
    for (int i : ins) idx = idx * d + static_cast<std::size_t>(i);
    return idx;
}

std::vector<int> unflatten(std::size_t idx, int n, std::size_t d, int& out) {
    std::vector<int> ins(n);
    for (int j = n - 1; j >= 0; --j) {
        ins[j] = static_cast<int>(idx % d);
        idx /= d;
    }
    out = static_cast<int>(idx);
    return ins;
}

}  // namespace

TwistedDims twisted_cohomology_dims(const NijenhuisAlgebra& N, int max_n) {
    DeformationElement alpha = from_nijenhuis(N);
    std::size_t d = N.algebra.dim;
    SpaceRef sV = alpha.sV();
    SpaceRef V = alpha.V();

    // cochain position n >= 1 holds (alg arity n) (+) (njo arity n-1);
    // njo arity 0 = Hom(k, A) is included, alg arity 0 is not (reduced
    // coalgebra), which is what makes positions 0/1 non-comparable.
    auto block_dim = [&](int n) -> std::size_t {
        if (n < 1) return 0;
        std::size_t alg_dim = d;  // d^n * d outputs
        for (int i = 0; i < n; ++i) alg_dim *= d;
        std::size_t njo_dim = d;
        for (int i = 0; i < n - 1; ++i) njo_dim *= d;
        return alg_dim + njo_dim;
    };

    auto pow_d = [&](int n) {
        std::size_t r = 1;
        for (int i = 0; i < n; ++i) r *= d;
        return r;
    };

    // matrix of twist_l1 from position n to position n+1
    auto block_matrix = [&](int n) {
        SparseMatrix mat(block_dim(n + 1), block_dim(n));
        std::size_t alg_n = d * pow_d(n);
        std::size_t alg_n1 = d * pow_d(n + 1);
        // alg basis columns
        for (std::size_t col = 0; col < alg_n; ++col) {
            int out;
            auto ins = unflatten(col, n, d, out);
            GradedMap e(sV, sV, n, 1 - n);
            e.add_entry(ins, out, Rational(1));
            CChain img = twist_l1(alpha, CElement{true, e});
            for (const auto& [ar, m] : img.alg) {
                if (ar != n + 1) throw std::logic_error("twisted block: unexpected alg output arity");
                for (const auto& [k, v] : m.entries()) mat.add(flat_index(k.first, k.second, d), col, v);
            }
            for (const auto& [ar, m] : img.njo) {
                if (ar != n) throw std::logic_error("twisted block: unexpected njo output arity");
                for (const auto& [k, v] : m.entries())
                    mat.add(alg_n1 + flat_index(k.first, k.second, d), col, v);
            }
        }
        // njo basis columns (arity n-1)
        std::size_t njo_n = d * pow_d(n - 1);
        for (std::size_t col = 0; col < njo_n; ++col) {
            int out;
            auto ins = unflatten(col, n - 1, d, out);
            GradedMap e(sV, V, n - 1, 1 - n);
            e.add_entry(ins, out, Rational(1));
            CChain img = twist_l1(alpha, CElement{false, e});
            for (const auto& [ar, m] : img.njo) {
                if (ar != n) throw std::logic_error("twisted block: unexpected njo output arity");
                for (const auto& [k, v] : m.entries())
                    mat.add(alg_n1 + flat_index(k.first, k.second, d), alg_n + col, v);
            }
            if (!img.alg.empty()) throw std::logic_error("twisted block: njo input produced alg output");
        }
        return mat;
    };

    TwistedDims out;
    std::vector<SparseMatrix> mats;  // position n -> n+1, n = 1..max_n
    for (int n = 1; n <= max_n; ++n) mats.push_back(block_matrix(n));
    out.dims.assign(static_cast<std::size_t>(max_n) + 1, 0);
    for (int n = 2; n <= max_n; ++n) {
        const SparseMatrix& d_in = mats[static_cast<std::size_t>(n - 2)];
        const SparseMatrix& d_out = mats[static_cast<std::size_t>(n - 1)];
        out.dims[static_cast<std::size_t>(n)] = cohomology_dim(d_out, d_in);
    }
    return out;
}

GradedMap njo_bracket(const AlgebraPresentation& A, const GradedMap& f, const GradedMap& g) {
    if (!check_associativity(A).pass()) throw NotNijenhuis("njo_bracket: algebra must be associative");
    SpacePtr V = f.domain().base;
    GradedMap nu = tilde_inv(v_level_map_from_mult(A, V));
    return l_mixed(nu, {f, g});
}

GradedMap njo_mc_candidate(const AlgebraPresentation& A, const LinearOperator& P, const SpacePtr& V) {
    return hat_inv(v_level_map_from_operator(P, V));
}

}  // namespace njcalc
