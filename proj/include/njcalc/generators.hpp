#pragma once

#include <cstdint>
#include <random>

#include "njcalc/algebra.hpp"
#include "njcalc/graded.hpp"

namespace njcalc {

/// Seeded generator of small verified instances for property suites. Entries
/// are drawn from {-2..2}; associativity/Nijenhuis candidates are filtered by
/// the checks, mixed with structured families so the corpus is not dominated
/// by near-zero draws.
class CorpusGenerator {
public:
    explicit CorpusGenerator(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }

    /// Random associative algebra, dim <= max_dim (1..3).
    AlgebraPresentation random_associative(std::size_t max_dim = 3);

    /// Random Nijenhuis operator for A (always succeeds: the fallback
    /// families include 0, scalar and left-multiplication operators).
    LinearOperator random_nijenhuis_operator(const AlgebraPresentation& A);

    /// Verified pair (algebra + operator).
    NijenhuisAlgebra random_nijenhuis_algebra(std::size_t max_dim = 3);

    /// Verified Nijenhuis bimodule over N (regular or zero-action module).
    NijenhuisBimodule random_bimodule(const NijenhuisAlgebra& N, std::size_t max_dim = 3);

    /// Entry bump that breaks check_nijenhuis (retries until it does).
    LinearOperator perturb_operator_breaking(const NijenhuisAlgebra& N, int max_tries = 64);

    /// Homogeneous map with random entries in {-2..2} on the given space.
    GradedMap random_graded_map(const SpaceRef& domain, const SpaceRef& codomain, int arity, int degree,
                                int density_pct = 60);

    int small_int(int lo, int hi);

private:
    std::mt19937_64 rng_;
};

}  // namespace njcalc
