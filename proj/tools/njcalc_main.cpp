#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "njcalc/acceptance.hpp"
#include "njcalc/cohomology.hpp"
#include "njcalc/forest.hpp"
#include "njcalc/io.hpp"
#include "njcalc/linf.hpp"
#include "njcalc/parallel.hpp"

namespace {

using njcalc::Rational;

constexpr int kExitOk = 0;
constexpr int kExitMathFail = 1;
constexpr int kExitBadInput = 2;

int run_check_nijenhuis(const std::string& path, bool json_out) {
    auto file = njcalc::load_algebra_file(path);
    auto assoc = njcalc::check_associativity(file.N.algebra);
    auto nij = njcalc::check_nijenhuis(file.N.algebra, file.N.operator_P);
    bool ok = assoc.pass() && nij.pass();
    nlohmann::json j{{"associativity", assoc.pass()}, {"nijenhuis", nij.pass()}};
    if (file.M) {
        auto bm = njcalc::check_bimodule(file.N.algebra, file.M->module);
        auto nbm = njcalc::check_nijenhuis_bimodule(file.N, *file.M);
        ok = ok && bm.pass() && nbm.pass();
        j["bimodule"] = bm.pass();
        j["nijenhuis_bimodule"] = nbm.pass();
        if (!json_out) {
            std::cout << assoc.describe() << "\n" << nij.describe() << "\n"
                      << bm.describe() << "\n" << nbm.describe() << "\n";
        }
    } else if (!json_out) {
        std::cout << assoc.describe() << "\n" << nij.describe() << "\n";
    }
    if (json_out) std::cout << j.dump() << "\n";
    return ok ? kExitOk : kExitMathFail;
}

int run_check_hnja(const std::string& path, int max_arity, bool json_out) {
    auto gs = njcalc::load_graded_structure_file(path);
    auto H = njcalc::HomotopyNijenhuisAlgebra::from_deformation(gs.alpha);
    auto st = njcalc::check_stasheff(H, max_arity);
    auto hn = njcalc::check_homotopy_nijenhuis(H, max_arity);
    nlohmann::json arities = nlohmann::json::array();
    bool ok = st.pass() && hn.pass();
    for (std::size_t i = 0; i < st.residuals.size(); ++i) {
        auto& [n, r1] = st.residuals[i];
        auto& r2 = hn.residuals[i].second;
        if (json_out) {
            arities.push_back({{"arity", n},
                               {"stasheff_support", r1.support()},
                               {"operator_support", r2.support()}});
        } else {
            std::cout << "arity " << n << ": stasheff " << (r1.is_zero() ? "PASS" : "FAIL")
                      << " (support " << r1.support() << "), operator "
                      << (r2.is_zero() ? "PASS" : "FAIL") << " (support " << r2.support() << ")\n";
        }
    }
    if (json_out) std::cout << nlohmann::json{{"pass", ok}, {"arities", arities}}.dump() << "\n";
    return ok ? kExitOk : kExitMathFail;
}

int run_cohomology(const std::string& path, int max_degree, const std::string& module_path,
                   const std::string& emit_dir, bool json_out) {
    auto file = njcalc::load_algebra_file(path);
    if (!njcalc::check_associativity(file.N.algebra).pass() ||
        !njcalc::check_nijenhuis(file.N.algebra, file.N.operator_P).pass()) {
        std::cerr << "input is not a verified Nijenhuis algebra\n";
        return kExitMathFail;
    }
    njcalc::NijenhuisBimodule M =
        file.M ? *file.M
               : njcalc::NijenhuisBimodule{njcalc::BimodulePresentation::regular(file.N.algebra),
                                           file.N.operator_P};
    if (!module_path.empty())
        M = njcalc::load_module(njcalc::load_json_file(module_path), file.N.algebra.dim);
    if (!njcalc::check_bimodule(file.N.algebra, M.module).pass() ||
        !njcalc::check_nijenhuis_bimodule(file.N, M).pass()) {
        std::cerr << "module is not a verified Nijenhuis bimodule\n";
        return kExitMathFail;
    }
    auto tab = njcalc::cohomology_table(file.N, M, max_degree);
    if (json_out) {
        nlohmann::json rows = nlohmann::json::array();
        for (auto& r : tab.rows)
            rows.push_back({{"n", r.n}, {"alg", r.h_alg}, {"njo", r.h_njo}, {"nja", r.h_nja}});
        std::cout << nlohmann::json{{"rows", rows}, {"euler_consistent", tab.euler_consistent}}.dump()
                  << "\n";
    } else {
        std::cout << "  n   dim H_Alg   dim H_NjO   dim H_NjA\n";
        for (auto& r : tab.rows)
            std::cout << "  " << r.n << "   " << r.h_alg << "           " << r.h_njo << "           "
                      << r.h_nja << "\n";
        std::cout << "Euler consistency (cone dimension count): "
                  << (tab.euler_consistent ? "ok" : "VIOLATED") << "\n";
    }
    if (!emit_dir.empty()) {
        std::filesystem::create_directories(emit_dir);
        for (int n = 0; n <= max_degree; ++n) {
            njcalc::write_json_file(emit_dir + "/d_alg_" + std::to_string(n) + ".json",
                                    njcalc::matrix_to_json(njcalc::hochschild_d(file.N.algebra, M.module, n)));
            njcalc::write_json_file(emit_dir + "/d_njo_" + std::to_string(n) + ".json",
                                    njcalc::matrix_to_json(njcalc::njo_d(file.N, M, n)));
        }
        auto slices = njcalc::nja_complex(file.N, M, max_degree);
        for (auto& s : slices)
            njcalc::write_json_file(emit_dir + "/d_nja_" + std::to_string(s.degree) + ".json",
                                    njcalc::matrix_to_json(s.d));
    }
    return tab.euler_consistent ? kExitOk : kExitMathFail;
}

int run_cobar_d2(int max_arity, const std::string& pres, bool json_out) {
    njcalc::Presentation p;
    if (pres == "mp")
        p = njcalc::Presentation::MP;
    else if (pres == "xy")
        p = njcalc::Presentation::XY;
    else {
        std::cerr << "presentation must be mp or xy\n";
        return kExitBadInput;
    }
    auto rep = njcalc::d_squared_report(max_arity, p);
    for (auto& e : rep.entries) {
        if (json_out)
            std::cout << nlohmann::json{{"generator", e.gen.name()},
                                        {"pass", e.leftover.is_zero()},
                                        {"surviving", e.leftover.size()}}
                             .dump()
                      << "\n";
        else
            std::cout << "d^2(" << e.gen.name() << ") = 0: "
                      << (e.leftover.is_zero() ? "PASS" : "FAIL (" + std::to_string(e.leftover.size()) +
                                                              " monomials survive)")
                      << "\n";
    }
    return rep.pass() ? kExitOk : kExitMathFail;
}

njcalc::Generator parse_generator(const std::string& s) {
    if (s.size() < 2) throw njcalc::MalformedInput("generator names look like m3, P2, x4, y1");
    njcalc::Family f;
    switch (s[0]) {
        case 'm': f = njcalc::Family::M; break;
        case 'P': f = njcalc::Family::P; break;
        case 'x': f = njcalc::Family::X; break;
        case 'y': f = njcalc::Family::Y; break;
        default: throw njcalc::MalformedInput("unknown generator family in '" + s + "'");
    }
    int ar;
    try {
        ar = std::stoi(s.substr(1));
    } catch (const std::exception&) {
        throw njcalc::MalformedInput("bad arity in generator '" + s + "'");
    }
    return {f, ar};
}

int run_cobar_show(const std::string& gen) {
    auto g = parse_generator(gen);
    std::cout << njcalc::cobar_d(g).str() << "\n";
    return kExitOk;
}

int run_order_compare(const std::string& a, const std::string& b) {
    auto ta = njcalc::parse_term(a);
    auto tb = njcalc::parse_term(b);
    switch (njcalc::compare_Xi(ta, tb)) {
        case njcalc::Ordering::LT: std::cout << "LT\n"; break;
        case njcalc::Ordering::EQ: std::cout << "EQ\n"; break;
        case njcalc::Ordering::GT: std::cout << "GT\n"; break;
    }
    return kExitOk;
}

int run_mc_check(const std::string& path, int max_arity, bool json_out) {
    auto gs = njcalc::load_graded_structure_file(path);
    bool ok = true;
    for (int n = 1; n <= max_arity; ++n) {
        auto [a, o] = njcalc::mc_residual(gs.alpha, n);
        bool zero = a.is_zero() && o.is_zero();
        ok = ok && zero;
        if (json_out)
            std::cout << nlohmann::json{{"arity", n},
                                        {"alg_support", a.support()},
                                        {"njo_support", o.support()},
                                        {"pass", zero}}
                             .dump()
                      << "\n";
        else
            std::cout << "arity " << n << ": alg residual support " << a.support()
                      << ", operator residual support " << o.support() << " -> "
                      << (zero ? "PASS" : "FAIL") << "\n";
    }
    if (!json_out)
        std::cout << (ok ? "Maurer-Cartan up to arity " : "NOT Maurer-Cartan within arity ")
                  << max_arity << "\n";
    return ok ? kExitOk : kExitMathFail;
}

int run_twist_cohomology(const std::string& path, int max_degree, bool json_out) {
    auto file = njcalc::load_algebra_file(path);
    auto dims = njcalc::twisted_cohomology_dims(file.N, max_degree);
    if (json_out) {
        nlohmann::json rows = nlohmann::json::array();
        for (int n = static_cast<int>(dims.first_comparable); n <= max_degree; ++n)
            rows.push_back({{"n", n}, {"dim", dims.dims[static_cast<std::size_t>(n)]}});
        std::cout << nlohmann::json{{"rows", rows}}.dump() << "\n";
    } else {
        std::cout << "twisted deformation-complex cohomology (degrees below "
                  << dims.first_comparable << " carry the reduced-coalgebra boundary and are omitted)\n";
        for (int n = static_cast<int>(dims.first_comparable); n <= max_degree; ++n)
            std::cout << "  n=" << n << "  dim " << dims.dims[static_cast<std::size_t>(n)] << "\n";
    }
    return kExitOk;
}

int run_rb_lift(const std::string& a_path, const std::string& m_path, const std::string& b_path,
                int max_arity, const std::string& out_path) {
    auto input = njcalc::load_rb_input(njcalc::load_json_file(a_path), njcalc::load_json_file(m_path),
                                       njcalc::load_json_file(b_path));
    auto rep = njcalc::check_homotopy_rb(input.data, input.B, max_arity);
    if (!rep.pass()) {
        std::cerr << "operator fails the weight-0 identity at arity " << rep.first_failure() << "\n";
        return kExitMathFail;
    }
    auto alpha = njcalc::rb_to_nijenhuis(input.data, input.B, max_arity);
    nlohmann::json j = njcalc::graded_structure_to_json(alpha);
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        njcalc::write_json_file(out_path, j);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic for Nijenhuis associative algebras: structure checks, cohomology, "
                 "cobar differentials and homotopy lifts"};
    app.require_subcommand(1);

    bool json_out = false;
    std::uint64_t seed = 20240903;
    bool no_parallel = false;
    app.add_flag("--json", json_out, "machine-readable output");
    app.add_option("--seed", seed, "seed for randomized suites");
    app.add_flag("--no-parallel", no_parallel, "disable the OpenMP kernel paths");

    // check
    auto* check = app.add_subcommand("check", "structure checks");
    check->require_subcommand(1);
    std::string check_file;
    auto* check_nij = check->add_subcommand("nijenhuis", "associativity + Nijenhuis relation");
    check_nij->add_option("file", check_file)->required();
    std::string hnja_file;
    int hnja_max = 5;
    auto* check_hnja = check->add_subcommand("hnja", "homotopy Nijenhuis identities");
    check_hnja->add_option("file", hnja_file)->required();
    check_hnja->add_option("--max-arity", hnja_max);

    // cohomology
    std::string coh_file, coh_module, coh_emit;
    int coh_max = 4;
    auto* coh = app.add_subcommand("cohomology", "cohomology table of a Nijenhuis algebra");
    coh->add_option("file", coh_file)->required();
    coh->add_option("--max-degree", coh_max);
    coh->add_option("--module", coh_module);
    coh->add_option("--emit-matrices", coh_emit);

    // cobar
    auto* cobar = app.add_subcommand("cobar", "free-operad differentials");
    cobar->require_subcommand(1);
    int cobar_max = 4;
    std::string cobar_pres = "mp";
    auto* cobar_d2 = cobar->add_subcommand("d2", "verify d^2 = 0 on generators");
    cobar_d2->add_option("--max-arity", cobar_max);
    cobar_d2->add_option("--presentation", cobar_pres);
    std::string show_gen;
    auto* cobar_show = cobar->add_subcommand("show", "print d(generator)");
    cobar_show->add_option("generator", show_gen)->required();

    // order
    auto* order = app.add_subcommand("order", "tree-monomial order");
    order->require_subcommand(1);
    std::string ta, tb;
    auto* order_cmp = order->add_subcommand("compare", "compare two tree monomials");
    order_cmp->add_option("first", ta)->required();
    order_cmp->add_option("second", tb)->required();

    // mc
    auto* mc = app.add_subcommand("mc", "Maurer-Cartan residuals");
    mc->require_subcommand(1);
    std::string mc_file;
    int mc_max = 4;
    auto* mc_check = mc->add_subcommand("check", "residuals of a graded structure");
    mc_check->add_option("file", mc_file)->required();
    mc_check->add_option("--max-arity", mc_max);

    // twist
    auto* twist = app.add_subcommand("twist", "twisted deformation complex");
    twist->require_subcommand(1);
    std::string tw_file;
    int tw_max = 4;
    auto* tw_coh = twist->add_subcommand("cohomology", "cohomology of the twisted complex");
    tw_coh->add_option("file", tw_file)->required();
    tw_coh->add_option("--max-degree", tw_max);

    // rb
    auto* rb = app.add_subcommand("rb", "relative Rota-Baxter operators");
    rb->require_subcommand(1);
    std::string rb_a, rb_m, rb_b, rb_out;
    int rb_max = 5;
    auto* rb_lift = rb->add_subcommand("lift", "lift to a homotopy Nijenhuis structure");
    rb_lift->add_option("algebra", rb_a)->required();
    rb_lift->add_option("module", rb_m)->required();
    rb_lift->add_option("operator", rb_b)->required();
    rb_lift->add_option("--max-arity", rb_max);
    rb_lift->add_option("--out", rb_out);

    // acceptance
    std::string only;
    bool inject_defect = false;
    auto* acc = app.add_subcommand("acceptance", "run the acceptance criteria");
    acc->add_option("--only", only, "substring filter on criterion names");
    acc->add_flag("--inject-sign-defect", inject_defect,
                  "corrupt one cobar sign to demonstrate the d^2 criteria catch it");

    CLI11_PARSE(app, argc, argv);
    if (no_parallel) njcalc::set_parallel(false);

    try {
        if (*check_nij) return run_check_nijenhuis(check_file, json_out);
        if (*check_hnja) return run_check_hnja(hnja_file, hnja_max, json_out);
        if (*coh) return run_cohomology(coh_file, coh_max, coh_module, coh_emit, json_out);
        if (*cobar_d2) return run_cobar_d2(cobar_max, cobar_pres, json_out);
        if (*cobar_show) return run_cobar_show(show_gen);
        if (*order_cmp) return run_order_compare(ta, tb);
        if (*mc_check) return run_mc_check(mc_file, mc_max, json_out);
        if (*tw_coh) return run_twist_cohomology(tw_file, tw_max, json_out);
        if (*rb_lift) return run_rb_lift(rb_a, rb_m, rb_b, rb_max, rb_out);
        if (*acc) {
            if (inject_defect) njcalc::set_sign_defect(true);
            auto rep = njcalc::run_acceptance(seed, only);
            njcalc::print_report(rep, std::cout, json_out);
            return rep.all_pass() ? kExitOk : kExitMathFail;
        }
    } catch (const njcalc::MalformedInput& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const njcalc::CompositionNotZero& e) {
        std::cerr << "mathematical check failed: " << e.what() << "\n";
        return kExitMathFail;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::runtime_error& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return kExitMathFail;
    }
    return kExitBadInput;
}
