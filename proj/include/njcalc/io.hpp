#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "njcalc/algebra.hpp"
#include "njcalc/homotopy.hpp"
#include "njcalc/linf.hpp"
#include "njcalc/sparse_matrix.hpp"

namespace njcalc {

struct MalformedInput : std::runtime_error {
    explicit MalformedInput(const std::string& w) : std::runtime_error(w) {}
};

/// Algebra file:
/// {
///   "basis": ["e0", "e1"],
///   "mult": [[i, j, k, "p/q"], ...],          // e_i e_j = sum mu e_k, sparse
///   "operator": [["p/q", ...], ...],          // rows; column j = image of e_j
///   "module": {                               // optional
///     "dim": m,
///     "left":  [[i, k, l, "p/q"], ...],       // e_i . m_k = sum m_l
///     "right": [[k, i, l, "p/q"], ...],       // m_k . e_i = sum m_l
///     "operator": [["p/q", ...], ...]
///   }
/// }
/// Indices are 0-based; rationals are "p/q" or "p".
struct AlgebraFile {
    NijenhuisAlgebra N;
    std::optional<NijenhuisBimodule> M;
};

AlgebraFile load_algebra(const nlohmann::json& j);
AlgebraFile load_algebra_file(const std::string& path);
nlohmann::json algebra_to_json(const NijenhuisAlgebra& N, const NijenhuisBimodule* M);

/// A bare module object ({"dim", "left", "right", "operator"}), or a wrapper
/// {"module": {...}} as in the algebra file.
NijenhuisBimodule load_module(const nlohmann::json& j, std::size_t alg_dim);

/// Graded structure file:
/// {
///   "degrees": {"0": 2, "1": 1},              // carrier V, degree -> dim
///   "maps": [{"name": "m2", "arity": 2, "degree": 0,
///             "entries": [[out, in_1, ..., in_arity, "p/q"], ...]}, ...]
/// }
/// Basis indices are global (ascending degree, then position). Map families
/// by name: m<k>/P<k> are carrier-level operations (degrees k-2 / k-1);
/// b<k>/R<k> are their suspended forms (degree -1 maps on sV, R landing in V).
/// Either spelling loads to the same internal structure.
struct GradedStructureFile {
    DeformationElement alpha;
};

GradedStructureFile load_graded_structure(const nlohmann::json& j);
GradedStructureFile load_graded_structure_file(const std::string& path);
nlohmann::json graded_structure_to_json(const DeformationElement& alpha);

/// Module file for the relative Rota-Baxter lift:
/// {
///   "degrees": {...},                          // carrier M
///   "maps": [{"name": "rho2", "arity": 2, "slot": 1,
///             "entries": [[out_m, in_1, ..., "p/q"]]}, ...]
/// }
/// rho<k> entries are suspended-level coefficients; the input at the 1-based
/// "slot" is an M-index, the others A-indices, the output an M-index.
/// Operator file: maps named B<k> with entries [[out_a, in_m..., "p/q"]],
/// suspended-level coefficients of (sM)^(x k) -> A.
struct RBLiftInput {
    AInfinityOneBimodule data;
    HomotopyRBOperator B;
};

RBLiftInput load_rb_input(const nlohmann::json& algebra_file, const nlohmann::json& module_file,
                          const nlohmann::json& operator_file);

nlohmann::json matrix_to_json(const SparseMatrix& m);

nlohmann::json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace njcalc
