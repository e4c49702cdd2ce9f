#include <doctest.h>

#include <nlohmann/json.hpp>

#include "njcalc/io.hpp"
#include "njcalc/linf.hpp"

using namespace njcalc;
using nlohmann::json;

TEST_CASE("algebra files round-trip") {
    json j = json::parse(R"({
        "basis": ["u", "x"],
        "mult": [[0,0,0,"1"], [0,1,1,"1"], [1,0,1,"1"]],
        "operator": [["0","0"],["0","2/3"]],
        "module": {"dim": 1, "left": [], "right": [], "operator": [["1"]]}
    })");
    auto file = load_algebra(j);
    CHECK(file.N.algebra.dim == 2);
    CHECK(file.N.algebra.basis_labels[1] == "x");
    CHECK(file.N.algebra.mu(0, 1, 1) == Rational(1));
    CHECK(file.N.operator_P.at(1, 1) == Rational(2, 3));
    REQUIRE(file.M.has_value());
    CHECK(file.M->module.dim == 1);
    CHECK(file.M->operator_PM.at(0, 0) == Rational(1));

    json back = algebra_to_json(file.N, &*file.M);
    auto file2 = load_algebra(back);
    CHECK(file2.N.algebra.mult == file.N.algebra.mult);
    CHECK(file2.N.operator_P == file.N.operator_P);
    CHECK(file2.M->module.left == file.M->module.left);
}

TEST_CASE("malformed algebra files are rejected with the structural error") {
    CHECK_THROWS_AS(load_algebra(json::parse("{}")), MalformedInput);
    CHECK_THROWS_AS(load_algebra(json::parse(R"({"basis": []})")), MalformedInput);
    CHECK_THROWS_AS(load_algebra(json::parse(R"({"basis": ["e"], "mult": [[0,0,5,"1"]]})")),
                    MalformedInput);
    CHECK_THROWS_AS(load_algebra(json::parse(R"({"basis": ["e"], "mult": [[0,0,0,"x"]]})")),
                    MalformedInput);
    CHECK_THROWS_AS(load_algebra(json::parse(R"({"basis": ["e"], "operator": [["1","2"]]})")),
                    MalformedInput);
}

TEST_CASE("graded structure files: carrier-level and suspended spellings agree") {
    json jv = json::parse(R"({
        "degrees": {"0": 2},
        "maps": [
            {"name": "m2", "arity": 2, "entries": [[0,0,0,"1"],[1,1,1,"1"]]},
            {"name": "P1", "arity": 1, "entries": [[0,0,"1"]]}
        ]
    })");
    auto a = load_graded_structure(jv);
    json jb = graded_structure_to_json(a.alpha);
    auto b = load_graded_structure(jb);
    CHECK(a.alpha.alg.at(2) == b.alpha.alg.at(2));
    CHECK(a.alpha.njo.at(1) == b.alpha.njo.at(1));
    // the loaded structure is the Maurer-Cartan element of the strict pair
    for (int n = 1; n <= 4; ++n) {
        auto [x, y] = mc_residual(a.alpha, n);
        CHECK(x.is_zero());
        CHECK(y.is_zero());
    }
}

TEST_CASE("graded structure files reject inconsistent maps") {
    CHECK_THROWS_AS(load_graded_structure(json::parse(R"({"maps": []})")), MalformedInput);
    CHECK_THROWS_AS(
        load_graded_structure(json::parse(
            R"({"degrees": {"0": 1}, "maps": [{"name": "q1", "entries": []}]})")),
        MalformedInput);
    // entry arity mismatch
    CHECK_THROWS_AS(
        load_graded_structure(json::parse(
            R"({"degrees": {"0": 1}, "maps": [{"name": "m2", "entries": [[0,0,"1"]]}]})")),
        MalformedInput);
    // duplicate component
    CHECK_THROWS_AS(load_graded_structure(json::parse(R"({
            "degrees": {"0": 1},
            "maps": [{"name": "m2", "entries": []}, {"name": "b2", "entries": []}]
        })")),
                    MalformedInput);
    // homogeneity violation: a degree-carrying entry that cannot exist
    CHECK_THROWS_AS(load_graded_structure(json::parse(R"({
            "degrees": {"0": 1, "1": 1},
            "maps": [{"name": "b1", "entries": [[1,0,"1"]]}]
        })")),
                    MalformedInput);
}

TEST_CASE("rb lift input assembles onto the sum carrier") {
    json aj = json::parse(R"({
        "degrees": {"0": 1},
        "maps": [{"name": "m2", "arity": 2, "entries": [[0,0,0,"1"]]}]
    })");
    json mj = json::parse(R"({
        "degrees": {"-1": 1, "0": 1},
        "maps": [{"name": "rho1", "arity": 1, "slot": 1, "entries": [[0,1,"1"]]}]
    })");
    json bj = json::parse(R"({
        "maps": [{"name": "B1", "arity": 1, "entries": [[0,1,"1"]]},
                 {"name": "B2", "arity": 2, "entries": [[0,1,0,"-1"]]}]
    })");
    auto input = load_rb_input(aj, mj, bj);
    CHECK(input.data.sum.total->total_dim() == 3);
    CHECK(input.data.mfrak.count(2) == 1);
    CHECK(input.data.rho.count(1) == 1);
    CHECK(input.B.B.count(1) == 1);
    input.data.validate();
    CHECK(check_homotopy_rb(input.data, input.B, 2).pass());
    // without the correcting component the identity fails at arity 2
    HomotopyRBOperator b1_only;
    b1_only.B.emplace(1, input.B.B.at(1));
    CHECK(check_homotopy_rb(input.data, b1_only, 2).first_failure() == 2);
}

TEST_CASE("matrix serialization") {
    SparseMatrix m(2, 3);
    m.set(0, 1, Rational(1, 2));
    m.set(1, 2, Rational(-3));
    json j = matrix_to_json(m);
    CHECK(j["rows"] == 2);
    CHECK(j["cols"] == 3);
    CHECK(j["entries"].size() == 2);
}
