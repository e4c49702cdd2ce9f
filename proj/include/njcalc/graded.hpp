#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "njcalc/rational.hpp"

namespace njcalc {

struct LengthMismatch : std::runtime_error {
    explicit LengthMismatch(const std::string& w) : std::runtime_error(w) {}
};
struct ArityUnderflow : std::runtime_error {
    explicit ArityUnderflow(const std::string& w) : std::runtime_error(w) {}
};
struct CodomainMismatch : std::runtime_error {
    explicit CodomainMismatch(const std::string& w) : std::runtime_error(w) {}
};
struct DegreeViolation : std::runtime_error {
    explicit DegreeViolation(const std::string& w) : std::runtime_error(w) {}
};

/// Finite-dimensional graded vector space (homological grading). The global
/// basis enumerates degrees in ascending order, then positions within a
/// degree; all tensor flattening in this library is lexicographic over these
/// global indices.
class GradedSpace {
public:
    GradedSpace() = default;
    explicit GradedSpace(std::map<int, int> dims);
    /// Space concentrated in degree 0.
    static GradedSpace ungraded(int dim);

    const std::map<int, int>& components() const { return dims_; }
    int total_dim() const { return total_; }
    int degree_of(int idx) const;
    int index_of(int degree, int offset) const;
    int dim_in_degree(int degree) const;

    bool operator==(const GradedSpace& o) const { return dims_ == o.dims_; }

private:
    std::map<int, int> dims_;
    std::vector<int> cum_;     // cumulative dims per degree block
    std::vector<int> degs_;    // degree per block
    int total_ = 0;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

/// A graded space seen through a suspension shift: degree(idx) =
/// base degree + shift. sV is {V, +1}.
struct SpaceRef {
    SpacePtr base;
    int shift = 0;

    int degree_of(int idx) const { return base->degree_of(idx) + shift; }
    int dim() const { return base->total_dim(); }
    SpaceRef suspended(int by = 1) const { return {base, shift + by}; }
    /// Spaces compare by value, so structurally equal carriers built in
    /// different places are interchangeable.
    bool operator==(const SpaceRef& o) const {
        return shift == o.shift && (base == o.base || (base && o.base && *base == *o.base));
    }
    bool operator!=(const SpaceRef& o) const { return !(*this == o); }
};

/// Koszul sign of rearranging homogeneous elements: arrangement[j] is the
/// original position of the element landing at position j. Returns +1/-1 as
/// the product of (-1)^(d_a d_b) over crossing pairs.
int koszul_sign(const std::vector<int>& arrangement, const std::vector<int>& degrees);

/// sgn(sigma) * koszul_sign: the antisymmetric-convention sign chi used by
/// L-infinity brackets.
int chi_sign(const std::vector<int>& arrangement, const std::vector<int>& degrees);

/// Homogeneous multilinear map f: D^(tensor arity) -> C between (shifted)
/// graded spaces, stored as a sparse coefficient tensor. Entries are kept
/// homogeneous: deg_C(out) = degree + sum deg_D(in).
class GradedMap {
public:
    GradedMap() = default;
    GradedMap(SpaceRef domain, SpaceRef codomain, int arity, int degree);

    static GradedMap zero_like(const GradedMap& m) {
        return GradedMap(m.domain(), m.codomain(), m.arity(), m.degree());
    }

    const SpaceRef& domain() const { return domain_; }
    const SpaceRef& codomain() const { return codomain_; }
    int arity() const { return arity_; }
    int degree() const { return degree_; }

    void add_entry(const std::vector<int>& inputs, int out, const Rational& c);
    Rational entry(const std::vector<int>& inputs, int out) const;
    const std::map<std::pair<std::vector<int>, int>, Rational>& entries() const { return entries_; }

    bool is_zero() const { return entries_.empty(); }
    std::size_t support() const { return entries_.size(); }

    GradedMap& operator+=(const GradedMap& o);
    GradedMap operator+(const GradedMap& o) const;
    GradedMap scaled(const Rational& c) const;
    GradedMap operator-() const { return scaled(Rational(-1)); }
    bool operator==(const GradedMap& o) const;

    std::string str() const;

private:
    SpaceRef domain_, codomain_;
    int arity_ = 0, degree_ = 0;
    std::map<std::pair<std::vector<int>, int>, Rational> entries_;
};

/// Brace f{g_1,...,g_k}: sum over order-preserving insertions of the g's
/// into f's inputs, with sign (-1)^(|g_j| * deg of everything left of g_j's
/// argument block). Arguments must land in f's domain space. k = 0 returns f.
GradedMap brace(const GradedMap& f, const std::vector<GradedMap>& args);

/// f composed with (id^i (x) g (x) id^(arity(f)-i-1)), slot i 0-based.
GradedMap insert_at(const GradedMap& f, int slot, const GradedMap& g);

/// [f,h]_G = f{h} - (-1)^(|f||h|) h{f} for maps landing in their own
/// domain space.
GradedMap gerstenhaber(const GradedMap& f, const GradedMap& h);

/// Output (de)suspension: s o f and s^{-1} o f (no sign, degree +-1).
GradedMap suspend_output(const GradedMap& f);
GradedMap desuspend_output(const GradedMap& f);

/// The two fixed isomorphisms and their inverses:
///   tilde: Hom((sV)^n, sV) -> Hom(V^n, V),  f |-> s^{-1} o f o s^n
///   hat:   Hom((sV)^n, V)  -> Hom(V^n, V),  g |-> g o s^n
/// Round-trips are exact identities.
GradedMap tilde(const GradedMap& f);
GradedMap tilde_inv(const GradedMap& m);
GradedMap hat(const GradedMap& g);
GradedMap hat_inv(const GradedMap& p);

}  // namespace njcalc
