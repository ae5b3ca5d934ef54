#include <doctest.h>

#include <cmath>
#include <random>

#include "qaos/oracle.hpp"
#include "qaos/wavefunction.hpp"

using namespace qaos;

namespace {

WavefunctionSpec n0_spec(double b2, double b3) {
    QESSolution sol = make_solution({0, Parity::Even, 0.0, b3}, 0.0, b2);
    return WavefunctionSpec::from_solution(sol, 0.0, b3);
}

WavefunctionSpec n1_even_spec(double b1, double b3) {
    const ClosedForm cf = closed_form_n1_even(b1, b3);
    QESSolution sol = make_solution({1, Parity::Even, b1, b3}, cf.energy, cf.beta2);
    return WavefunctionSpec::from_solution(sol, b1, b3);
}

WavefunctionSpec n1_odd_spec(double b2, double b3) {
    const ClosedForm cf = closed_form_n1_odd(b2);
    QESSolution sol = make_solution({1, Parity::Odd, 0.0, b3}, cf.energy, cf.beta2);
    return WavefunctionSpec::from_solution(sol, 0.0, b3);
}

}  // namespace

TEST_CASE("ground-form evaluation matches the bare exponential") {
    const double b1 = 0.4, b2 = 0.3, b3 = 0.6;
    QESSolution sol;
    sol.coeffs = {1.0};
    sol.beta2 = b2;
    sol.parity = Parity::Even;
    const WavefunctionSpec w = WavefunctionSpec::from_solution(sol, b1, b3);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> xs(-4.0, 4.0);
    for (int k = 0; k < 50; ++k) {
        const double x = xs(rng);
        const double ax = std::abs(x);
        const double expect =
            std::exp(-(b1 * ax + 0.5 * b2 * x * x + b3 * ax * ax * ax / 6.0));
        CHECK(eval_psi(w, x) == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("parity is exact by construction") {
    const WavefunctionSpec even = n1_even_spec(-0.7, 0.1);
    const WavefunctionSpec odd = n1_odd_spec(0.3, 0.6);
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> xs(0.01, 6.0);
    for (int k = 0; k < 100; ++k) {
        const double x = xs(rng);
        CHECK(eval_psi(even, x) == eval_psi(even, -x));
        CHECK(eval_psi(odd, x) == -eval_psi(odd, -x));
    }
    CHECK(eval_psi(odd, 0.0) == 0.0);

    // An odd spec is the sign function times the even-assembled shape.
    WavefunctionSpec evenized = odd;
    evenized.solution.parity = Parity::Even;
    for (int k = 0; k < 20; ++k) {
        const double x = xs(rng);
        CHECK(eval_psi(odd, x) == eval_psi(evenized, x));
        CHECK(eval_psi(odd, -x) == -eval_psi(evenized, -x));
    }
}

TEST_CASE("ODE residual vanishes for solved levels") {
    {
        const WavefunctionSpec w = n0_spec(0.3, 0.6);
        for (double x : {0.5, 1.0, 2.0, -0.5, -1.0, -2.0})
            CHECK(schrodinger_residual(w, x) <= 1e-14);
    }
    {
        const WavefunctionSpec w = n1_even_spec(-0.7, 0.1);
        for (int k = 0; k < 100; ++k) {
            const double x = 0.05 + 0.0495 * k;
            CHECK(schrodinger_residual_relative(w, x) <= 1e-10);
            CHECK(schrodinger_residual_relative(w, -x) <= 1e-10);
        }
    }
    CHECK_THROWS_AS(schrodinger_residual(n0_spec(0.3, 0.6), 0.0), std::invalid_argument);
}

TEST_CASE("ODE residual is linear in an energy perturbation") {
    WavefunctionSpec w = n1_even_spec(-0.7, 0.1);
    const double delta = 1e-3;
    w.solution.energy += delta;
    for (double x : {0.5, 1.0, 1.7}) {
        const double expect = 2.0 * delta * std::abs(eval_psi(w, x));
        CHECK(schrodinger_residual(w, x) == doctest::Approx(expect).epsilon(1e-6));
    }
}

TEST_CASE("even matching makes the two-sided derivative vanish at 0") {
    const WavefunctionSpec w = n1_even_spec(-0.7, 0.1);
    const double h = 1e-6;
    const double scale = std::abs(eval_psi(w, 0.0)) + 1.0;
    const double fd = (eval_psi(w, h) - eval_psi(w, -h)) / (2.0 * h);
    CHECK(std::abs(fd) <= 1e-7 * scale);
    CHECK(std::abs(eval_psi_deriv(w, 0.0)) <= 1e-10 * scale);
}

TEST_CASE("node counts of the survey wavefunctions") {
    CHECK(count_nodes(n0_spec(0.3, 0.6), 12.0, 4000).nodes == 0);
    CHECK(count_nodes(n1_even_spec(-0.7, 0.1), 12.0, 4000).nodes == 2);
    CHECK(count_nodes(n1_even_spec(0.7, 0.1), 12.0, 4000).nodes == 0);
    CHECK(count_nodes(n1_odd_spec(0.3, 0.6), 12.0, 4000).nodes == 1);
    CHECK_THROWS_AS(count_nodes(n0_spec(0.3, 0.6), 12.0, 10), std::invalid_argument);
}

TEST_CASE("tangential zeros are flagged, not counted") {
    // p(T) = (T - t0)^2 touches zero without crossing; pick t0 inside the
    // reachable range T = b2 + b3|x|.
    const double b2 = 0.2, b3 = 0.5, t0 = 1.0;
    QESSolution sol;
    sol.coeffs = {t0 * t0, -2.0 * t0, 1.0};
    sol.beta2 = b2;
    sol.parity = Parity::Even;
    const WavefunctionSpec w = WavefunctionSpec::from_solution(sol, 0.0, b3);
    const NodeCount nc = count_nodes(w, 10.0, 20000);
    CHECK(nc.nodes == 0);
    CHECK(nc.tangential_flag);
}

TEST_CASE("arctan normalization") {
    WavefunctionSpec w = n0_spec(0.3, 0.6);
    const double kappa = normalize_arctan(w, 10000);
    CHECK(kappa == doctest::Approx(0.7856135063706).epsilon(1e-10));
    CHECK(w.normalization == kappa);

    // Quadrature stability between 1e3 and 1e4 panels.
    WavefunctionSpec coarse = n0_spec(0.3, 0.6);
    const double kappa_coarse = normalize_arctan(coarse, 1000);
    CHECK(std::abs(kappa - kappa_coarse) <= 1e-8);

    // Doubling the coefficients halves the constant.
    WavefunctionSpec doubled = n0_spec(0.3, 0.6);
    for (double& a : doubled.solution.coeffs) a *= 2.0;
    CHECK(normalize_arctan(doubled, 10000) == doctest::Approx(0.5 * kappa).epsilon(1e-12));

    WavefunctionSpec zero = n0_spec(0.3, 0.6);
    zero.solution.coeffs = {0.0};
    CHECK_THROWS_AS(normalize_arctan(zero, 1000), std::invalid_argument);
    CHECK_THROWS_AS(normalize_arctan(w, 10), std::invalid_argument);
}

TEST_CASE("residuals stay small across every solved sector") {
    std::vector<WavefunctionSpec> specs;
    specs.push_back(n0_spec(0.3, 0.6));
    specs.push_back(n1_even_spec(-0.7, 0.1));
    specs.push_back(n1_even_spec(0.7, 0.1));
    specs.push_back(n1_odd_spec(0.3, 0.6));
    {
        const double b3 = simultaneous_n2_beta3(0.4);
        const ClosedForm even = closed_form_n2_even(0.4, b3, Branch::Minus);
        const ClosedForm odd = closed_form_n2_odd(0.4, b3);
        specs.push_back(WavefunctionSpec::from_solution(
            make_solution({2, Parity::Even, 0.4, b3}, even.energy, even.beta2), 0.4, b3));
        specs.push_back(WavefunctionSpec::from_solution(
            make_solution({2, Parity::Odd, 0.4, b3}, odd.energy, odd.beta2), 0.4, b3));
    }
    for (int n : {3, 4, 6, 7}) {
        for (Parity parity : {Parity::Even, Parity::Odd}) {
            for (const QESSolution& sol : czero_solutions(n, 0.5, parity)) {
                specs.push_back(WavefunctionSpec::from_solution(
                    sol, 0.5, sol.beta2 * sol.beta2));  // beta3 = beta2^2/(2*0.5)
            }
        }
    }
    for (const WavefunctionSpec& w : specs) {
        for (double x = 0.1; x <= 5.0; x += 0.35) {
            CHECK(schrodinger_residual_relative(w, x) <= 1e-10);
            CHECK(schrodinger_residual_relative(w, -x) <= 1e-10);
        }
    }
}

TEST_CASE("node count equals the spectral index of the level") {
    // Double well: the level-matched even state sits two levels up.
    const double b1 = -0.7, b3 = 0.1;
    const ClosedForm cf = closed_form_n1_even(b1, b3);
    const WavefunctionSpec w = n1_even_spec(b1, b3);
    OracleConfig cfg;
    cfg.grid_points = 1001;
    cfg.refinement_levels = 2;
    const SpectrumResult spec = lowest_eigenvalues({-2.0, {b1, cf.beta2, b3}}, cfg);
    const int rank = rank_of_energy(spec, cf.energy, 1e-4);
    CHECK(rank == count_nodes(w, 12.0, 4000).nodes);
}
