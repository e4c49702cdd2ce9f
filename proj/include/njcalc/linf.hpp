#pragma once

#include <map>
#include <optional>
#include <vector>

#include "njcalc/algebra.hpp"
#include "njcalc/graded.hpp"

namespace njcalc {

struct ArityMismatch : std::runtime_error {
    explicit ArityMismatch(const std::string& w) : std::runtime_error(w) {}
};
struct NotMC : std::runtime_error {
    explicit NotMC(const std::string& w) : std::runtime_error(w) {}
};

/// Element of the deformation-complex direct sum: alg-flavoured maps land in
/// sV (Hom(T(sV), sV)), njo-flavoured ones in V (Hom(T(sV), V)).
struct CElement {
    bool is_alg;
    GradedMap map;
};

/// Family (b_i) + (R_i) on the suspension of a carrier space; the carrier of
/// Maurer-Cartan candidates. Components are keyed by arity.
struct DeformationElement {
    SpacePtr space;  // the carrier V
    std::map<int, GradedMap> alg;  // b_i : (sV)^(x i) -> sV
    std::map<int, GradedMap> njo;  // R_i : (sV)^(x i) -> V

    SpaceRef sV() const { return SpaceRef{space, 1}; }
    SpaceRef V() const { return SpaceRef{space, 0}; }

    /// Degree -1 homogeneity of every component.
    void validate() const;
};

/// l_2 on two alg-flavoured elements: the Gerstenhaber bracket.
GradedMap l2_alg(const GradedMap& sf, const GradedMap& sh);

/// The mixed bracket l_{n+1}(sh (x) g_1 (x) ... (x) g_n) for one alg element
/// of arity n and n njo elements; result is njo-flavoured (lands in V).
GradedMap l_mixed(const GradedMap& sh, const std::vector<GradedMap>& gs);

/// The positioned variant with sh after the first k njo arguments.
GradedMap l_mixed_positioned(const std::vector<GradedMap>& pre, const GradedMap& sh,
                             const std::vector<GradedMap>& post);

/// Full dispatch: (i) two alg args, (ii)/(iii) one alg with matching arity,
/// otherwise zero (nullopt).
std::optional<CElement> l_n_full(const std::vector<CElement>& args);

/// Left sides of the two Maurer-Cartan component equations at arity n:
/// the A-infinity part sum b_{n-i+1}{b_i} (alg, lands in sV) and the operator
/// part (njo, desuspended to land in V).
std::pair<GradedMap, GradedMap> mc_residual(const DeformationElement& alpha, int n);

/// True when every residual with arity <= max_n vanishes.
bool is_mc(const DeformationElement& alpha, int max_n);

/// A strict Nijenhuis algebra as a degree-(-1) deformation element:
/// b_2 = tilde_inv(m), R_1 = hat_inv(P) on the carrier concentrated in
/// degree 0.
DeformationElement from_nijenhuis(const NijenhuisAlgebra& N);

/// Sum of graded maps of mixed arity, keyed (is_alg, arity).
struct CChain {
    std::map<int, GradedMap> alg;
    std::map<int, GradedMap> njo;

    void add(bool is_alg, const GradedMap& m);
    bool is_zero() const { return alg.empty() && njo.empty(); }
};

/// Differential twisted by a Maurer-Cartan element:
/// l_1^alpha(x) = sum_i (-1)^(i(i+1)/2) / i!  l_{i+1}(alpha^(x i) (x) x).
/// Exact for finitely supported alpha (the sums terminate).
CChain twist_l1(const DeformationElement& alpha, const CElement& x);

struct TwistedDims {
    // dims of H at cochain position n (n >= 2 comparable with the mapping
    // cone; positions 0/1 are affected by the missing arity-0 corner of the
    // reduced tensor coalgebra and are reported but not comparable)
    std::vector<std::size_t> dims;
    std::size_t first_comparable = 2;
};

/// Cohomology dimensions of (deformation complex, twist_l1) for a strict
/// Nijenhuis algebra; positions n >= 2 match the mapping-cone table.
TwistedDims twisted_cohomology_dims(const NijenhuisAlgebra& N, int max_n);

/// The graded Lie bracket on the operator part over a fixed associative
/// product: [f, g] = l_3(tilde_inv(m), f, g).
GradedMap njo_bracket(const AlgebraPresentation& A, const GradedMap& f, const GradedMap& g);

/// tau = hat_inv(P) for a candidate operator P; MC for njo_bracket iff P is
/// Nijenhuis.
GradedMap njo_mc_candidate(const AlgebraPresentation& A, const LinearOperator& P, const SpacePtr& V);

}  // namespace njcalc
