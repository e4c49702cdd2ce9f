#pragma once

#include <map>
#include <vector>

#include "njcalc/algebra.hpp"
#include "njcalc/graded.hpp"
#include "njcalc/linf.hpp"

namespace njcalc {

struct NotHomotopyRB : std::runtime_error {
    explicit NotHomotopyRB(const std::string& w) : std::runtime_error(w) {}
};
struct NotWellDefined : std::runtime_error {
    explicit NotWellDefined(const std::string& w) : std::runtime_error(w) {}
};

/// Per-arity residual report of a homotopy identity check.
struct ResidualReport {
    std::string name;
    std::vector<std::pair<int, GradedMap>> residuals;  // arity -> leftover
    bool pass() const {
        for (const auto& [n, r] : residuals)
            if (!r.is_zero()) return false;
        return true;
    }
    int first_failure() const {
        for (const auto& [n, r] : residuals)
            if (!r.is_zero()) return n;
        return -1;
    }
};

/// Homotopy Nijenhuis structure on a complex (V, m_1): operations
/// m_n: V^(x n) -> V of degree n-2 and P_n of degree n-1, finitely supported.
struct HomotopyNijenhuisAlgebra {
    SpacePtr space;
    std::map<int, GradedMap> m;  // m_1 = d_V
    std::map<int, GradedMap> p;

    SpaceRef V() const { return SpaceRef{space, 0}; }
    void validate() const;

    DeformationElement to_deformation() const;
    static HomotopyNijenhuisAlgebra from_deformation(const DeformationElement& alpha);
};

/// Stasheff identity residual at arity n:
/// sum_{i+j+k=n, j>=1} (-1)^(i+jk) m_{i+1+k} o (id^i (x) m_j (x) id^k).
GradedMap stasheff_residual(const HomotopyNijenhuisAlgebra& H, int n);
ResidualReport check_stasheff(const HomotopyNijenhuisAlgebra& H, int max_n);

/// Residual of the operator identity at arity n (the unshifted form of the
/// Maurer-Cartan operator equation); at n = 1 this is m_1 P_1 - P_1 m_1.
GradedMap homotopy_nijenhuis_residual(const HomotopyNijenhuisAlgebra& H, int n);
ResidualReport check_homotopy_nijenhuis(const HomotopyNijenhuisAlgebra& H, int max_n);

/// Strict Nijenhuis structure induced on H(V, m_1) by m_2 and P_1. Checks
/// that classes are independent of representatives and that the result
/// passes the strict checks.
struct HomologyStructure {
    NijenhuisAlgebra algebra;
    std::vector<int> class_degrees;
};
HomologyStructure homology_structure(const HomotopyNijenhuisAlgebra& H, int max_n);

/// A (x)-family on the suspension of a carrier: operations of degree -1
/// subject to sum_{i+j=n+1} m_j{m_i} = 0.
struct AInfinityOneAlgebra {
    SpacePtr space;    // carrier A; operations live on sA
    std::map<int, GradedMap> ops;  // frak m_k : (sA)^(x k) -> sA, degree -1

    SpaceRef sA() const { return SpaceRef{space, 1}; }
    void validate() const;
};

ResidualReport check_ainf1(const AInfinityOneAlgebra& A, int max_n);

/// Direct sum carrier for semidirect data: basis of A first within each
/// degree, then basis of M.
struct SumSpace {
    SpacePtr total;
    std::vector<int> embed_a;  // A-basis index -> total index
    std::vector<int> embed_m;
    std::vector<bool> is_m;    // per total index
};
SumSpace direct_sum(const GradedSpace& A, const GradedSpace& M);

/// Bimodule operations rho_k on the suspended total space, each with exactly
/// one M input slot and M output, extended by zero elsewhere; rho_1 is the
/// differential of sM (stored with the same support convention).
struct AInfinityOneBimodule {
    SumSpace sum;
    std::map<int, GradedMap> mfrak;  // the algebra operations, zero-extended to s(total)
    std::map<int, GradedMap> rho;

    void validate() const;
};

/// sum_{i+j=n+1} rho_j{mfrak_i} + rho_j{rho_i} per arity.
ResidualReport check_ainf1_bimodule(const AInfinityOneBimodule& M, int max_n);

/// h_k = mfrak_k + rho_k on the total space; verified, not assumed.
AInfinityOneAlgebra semidirect_ainf1(const AInfinityOneBimodule& M, int max_n);

/// Homotopy relative Rota-Baxter operator of weight 0: components
/// B_i: (sM)^(x i) -> A of degree -1, zero-extended to the total space.
struct HomotopyRBOperator {
    std::map<int, GradedMap> B;  // domain s(total), codomain total
};

/// Residual of the weight-0 identity at arity n:
/// sum m_p{sB_{r_1},...,sB_{r_p}} - sum (sB_{r_1}){rho_p{sB_{r_2},...,sB_{r_p}}}.
GradedMap homotopy_rb_residual(const AInfinityOneBimodule& M, const HomotopyRBOperator& B, int n);
ResidualReport check_homotopy_rb(const AInfinityOneBimodule& M, const HomotopyRBOperator& B, int max_n);

/// The lift b_n = mfrak_n + rho_n, R_n = B_n on the total carrier; throws
/// NotHomotopyRB unless the operator identity holds to max_n. The result
/// passes check_homotopy_nijenhuis to the same bound.
DeformationElement rb_to_nijenhuis(const AInfinityOneBimodule& M, const HomotopyRBOperator& B, int max_n);

}  // namespace njcalc
