// Compares the serial reference kernels against the production assembly,
// serial and OpenMP-parallel.

#include <chrono>
#include <functional>
#include <iostream>

#include "njcalc/cohomology.hpp"
#include "njcalc/forest.hpp"
#include "njcalc/parallel.hpp"

using namespace njcalc;

namespace {

double seconds(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

NijenhuisAlgebra bench_algebra() {
    AlgebraPresentation A(3);  // k[x]/(x^3)
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i + j < 3) A.mu(i, j, i + j) = Rational(1);
    LinearOperator P(3);  // multiplication by 1 + x
    for (std::size_t i = 0; i < 3; ++i) P.at(i, i) = Rational(1);
    P.at(1, 0) = Rational(1);
    P.at(2, 1) = Rational(1);
    return {A, P};
}

}  // namespace

int main() {
    auto N = bench_algebra();
    NijenhuisBimodule M{BimodulePresentation::regular(N.algebra), N.operator_P};
    std::cout << "threads available: " << worker_count() << "\n\n";

    std::cout << "cochain differential assembly, dim 3 regular bimodule\n";
    for (int n = 3; n <= 5; ++n) {
        SparseMatrix ref, fast_serial, fast_parallel;
        double t_ref = seconds([&] { ref = hochschild_d_reference(N.algebra, M.module, n); });
        set_parallel(false);
        double t_serial = seconds([&] { fast_serial = hochschild_d(N.algebra, M.module, n); });
        set_parallel(true);
        double t_par = seconds([&] { fast_parallel = hochschild_d(N.algebra, M.module, n); });
        bool same = ref == fast_serial && fast_serial == fast_parallel;
        std::cout << "  degree " << n << ": reference " << t_ref << " s, serial " << t_serial
                  << " s, parallel " << t_par << " s, identical: " << (same ? "yes" : "NO") << "\n";
    }

    std::cout << "\ncobar d^2 expansion\n";
    for (int arity : {5, 6}) {
        DSquaredReport r1, r2;
        set_parallel(false);
        double t_serial = seconds([&] { r1 = d_squared_report(arity, Presentation::MP); });
        set_parallel(true);
        double t_par = seconds([&] { r2 = d_squared_report(arity, Presentation::MP); });
        bool same = r1.pass() == r2.pass() && r1.entries.size() == r2.entries.size();
        std::cout << "  max arity " << arity << ": serial " << t_serial << " s, parallel " << t_par
                  << " s, agree: " << (same ? "yes" : "NO") << "\n";
    }

    std::cout << "\ntwisted block assembly (phi path), degree 4\n";
    {
        SparseMatrix a, b;
        set_parallel(false);
        double t_serial = seconds([&] { a = phi(N, M, 4); });
        set_parallel(true);
        double t_par = seconds([&] { b = phi(N, M, 4); });
        std::cout << "  serial " << t_serial << " s, parallel " << t_par
                  << " s, identical: " << ((a == b) ? "yes" : "NO") << "\n";
    }
    return 0;
}
