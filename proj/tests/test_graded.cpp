#include <doctest.h>

#include <random>

#include "njcalc/generators.hpp"
#include "njcalc/graded.hpp"

using namespace njcalc;

namespace {

SpacePtr two_one() {
    return std::make_shared<const GradedSpace>(GradedSpace(std::map<int, int>{{0, 2}, {1, 1}}));
}

}  // namespace

TEST_CASE("graded space indexing") {
    auto V = two_one();
    CHECK(V->total_dim() == 3);
    CHECK(V->degree_of(0) == 0);
    CHECK(V->degree_of(1) == 0);
    CHECK(V->degree_of(2) == 1);
    CHECK(V->index_of(1, 0) == 2);
    CHECK(V->dim_in_degree(5) == 0);
    CHECK_THROWS(V->degree_of(3));
    SpaceRef sV{V, 1};
    CHECK(sV.degree_of(2) == 2);
}

TEST_CASE("koszul signs") {
    CHECK(koszul_sign({0, 1, 2}, {1, 1, 1}) == 1);
    CHECK(koszul_sign({1, 0}, {1, 1}) == -1);  // transposing two odds
    CHECK(koszul_sign({1, 0}, {1, 0}) == 1);
    // 3-cycle on degrees (1,1,0) via adjacent transpositions:
    // (0,1,2)->(1,0,2)->(1,2,0): signs (-1)^{1*1} then (-1)^{1*0}
    CHECK(koszul_sign({1, 2, 0}, {1, 1, 0}) == -1);
    CHECK_THROWS_AS(koszul_sign({0, 1}, {1}), LengthMismatch);
    // chi adds the permutation sign
    CHECK(chi_sign({1, 0}, {1, 1}) == 1);
    CHECK(chi_sign({1, 0}, {0, 0}) == -1);
}

TEST_CASE("homogeneity is enforced") {
    auto V = two_one();
    SpaceRef W{V, 0};
    GradedMap f(W, W, 2, -1);
    CHECK_NOTHROW(f.add_entry({2, 0}, 1, Rational(1)));  // 1 + 0 - 1 = 0 = deg out
    CHECK_THROWS_AS(f.add_entry({0, 0}, 0, Rational(1)), DegreeViolation);
    CHECK_THROWS_AS(f.add_entry({0}, 0, Rational(1)), LengthMismatch);
}

TEST_CASE("brace on arity-1 maps is composition") {
    auto V = two_one();
    SpaceRef W{V, 0};
    GradedMap f(W, W, 1, 0), g(W, W, 1, 0);
    f.add_entry({0}, 1, Rational(2));
    g.add_entry({1}, 0, Rational(3));
    auto fg = brace(f, {g});  // f after g
    CHECK(fg.arity() == 1);
    CHECK(fg.entry({1}, 1) == Rational(6));
    CHECK(fg.support() == 1);
    CHECK_THROWS_AS(brace(f, {g, g}), ArityUnderflow);
}

TEST_CASE("brace insertion slots and Koszul signs") {
    auto V = two_one();
    SpaceRef W{V, 0};
    // f arity 2 with odd-degree arity-1 g: f{g} = f(g x id) + sign f(id x g)
    GradedMap f(W, W, 2, -1), g(W, W, 1, 1);
    f.add_entry({2, 2}, 2, Rational(1));  // f(z,z) = z on the degree-1 basis vector
    g.add_entry({0}, 2, Rational(1));     // g(x) = z
    auto fg = brace(f, {g});
    // slot 0: f(g(x), z): inputs (0, 2)
    CHECK(fg.entry({0, 2}, 2) == Rational(1));
    // slot 1: f(z, g(x)) crosses the degree-1 input: sign -1
    CHECK(fg.entry({2, 0}, 2) == Rational(-1));
    // insert_at picks a single slot
    CHECK(insert_at(f, 0, g).entry({0, 2}, 2) == Rational(1));
    CHECK(insert_at(f, 1, g).entry({2, 0}, 2) == Rational(-1));
    CHECK(insert_at(f, 0, g).support() == 1);
}

TEST_CASE("pre-Jacobi pins the brace convention (randomized)") {
    CorpusGenerator gen(2024);
    auto V = two_one();
    SpaceRef W{V, 0};
    auto brace_or_zero = [](const GradedMap& f, const std::vector<GradedMap>& args) {
        int arity = f.arity(), degree = f.degree();
        for (const auto& g : args) {
            arity += g.arity() - 1;
            degree += g.degree();
        }
        if (static_cast<int>(args.size()) > f.arity())
            return GradedMap(f.domain(), f.codomain(), arity, degree);
        return brace(f, args);
    };
    int tested = 0;
    while (tested < 40) {
        GradedMap f = gen.random_graded_map(W, W, gen.small_int(2, 3), gen.small_int(-1, 1));
        GradedMap g1 = gen.random_graded_map(W, W, gen.small_int(1, 2), gen.small_int(-1, 1));
        GradedMap h1 = gen.random_graded_map(W, W, gen.small_int(1, 2), gen.small_int(-1, 1));
        // (f{g1}){h1} = f{g1, h1} + f{g1{h1}} + (-1)^{|g1||h1|} f{h1, g1}  (m = n = 1)
        GradedMap lhs = brace_or_zero(brace(f, {g1}), {h1});
        GradedMap rhs = brace_or_zero(f, {g1, h1});
        rhs += brace_or_zero(f, {brace_or_zero(g1, {h1})});
        rhs += brace_or_zero(f, {h1, g1}).scaled(pow_sign(static_cast<long>(g1.degree()) * h1.degree()));
        CHECK(lhs == rhs);
        ++tested;
    }
}

TEST_CASE("gerstenhaber bracket: antisymmetry and b{b} for odd b") {
    CorpusGenerator gen(11);
    auto V = two_one();
    SpaceRef W{V, 0};
    for (int t = 0; t < 30; ++t) {
        GradedMap f = gen.random_graded_map(W, W, gen.small_int(1, 2), gen.small_int(-1, 1));
        GradedMap h = gen.random_graded_map(W, W, gen.small_int(1, 2), gen.small_int(-1, 1));
        GradedMap fh = gerstenhaber(f, h);
        GradedMap hf = gerstenhaber(h, f);
        CHECK((fh + hf.scaled(pow_sign(static_cast<long>(f.degree()) * h.degree()))).is_zero());
        // arity-1 commutator: [f,h] = f o h - (-1)^{|f||h|} h o f
        if (f.arity() == 1 && h.arity() == 1) {
            GradedMap want = brace(f, {h}) +
                             brace(h, {f}).scaled(pow_sign(static_cast<long>(f.degree()) * h.degree() + 1));
            CHECK(fh == want);
        }
    }
    // [b,b]_G = 2 b{b} for odd-degree b
    GradedMap b = gen.random_graded_map(W, W, 2, -1);
    CHECK(gerstenhaber(b, b) == brace(b, {b}).scaled(Rational(2)));
}

TEST_CASE("suspension isomorphisms round-trip") {
    CorpusGenerator gen(5);
    auto V = two_one();
    SpaceRef W{V, 0}, sW{V, 1};
    // identity on V (arity 1) maps to the identity on sV
    GradedMap idv(W, W, 1, 0);
    for (int i = 0; i < 3; ++i) idv.add_entry({i}, i, Rational(1));
    GradedMap ids = tilde_inv(idv);
    for (int i = 0; i < 3; ++i) CHECK(ids.entry({i}, i) == Rational(1));
    CHECK(ids.support() == 3);

    for (int t = 0; t < 30; ++t) {
        int ar = gen.small_int(1, 3);
        GradedMap f = gen.random_graded_map(W, W, ar, gen.small_int(-1, 1));
        CHECK(tilde(tilde_inv(f)) == f);
        CHECK(hat(hat_inv(f)) == f);
        GradedMap g = gen.random_graded_map(sW, sW, ar, gen.small_int(-1, 1));
        CHECK(tilde_inv(tilde(g)) == g);
        GradedMap r = gen.random_graded_map(sW, W, ar, gen.small_int(-1, 1));
        CHECK(hat_inv(hat(r)) == r);
    }
}

TEST_CASE("suspending an ungraded product gives the degree -1 arity-2 map") {
    auto V = std::make_shared<const GradedSpace>(GradedSpace::ungraded(2));
    SpaceRef W{V, 0};
    GradedMap m(W, W, 2, 0);
    m.add_entry({0, 0}, 0, Rational(1));
    GradedMap b = tilde_inv(m);
    CHECK(b.degree() == -1);
    CHECK(b.arity() == 2);
    CHECK(b.domain().shift == 1);
    // the coefficients transport without sign for n = 2 on an ungraded carrier
    CHECK(b.entry({0, 0}, 0) == Rational(1));
}
