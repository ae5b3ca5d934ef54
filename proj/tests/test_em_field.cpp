#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "qaos/em_field.hpp"

using namespace qaos;

TEST_CASE("field components of the reducible sector") {
    const EMFieldSpec spec{-2.0, 0.3, 0.6};
    const FieldComponents at0 = field_components(spec, 0.0);
    CHECK(at0.phi == doctest::Approx(-0.6));
    CHECK(at0.a_y == doctest::Approx(0.3));
    CHECK(at0.e_x == doctest::Approx(0.6));
    CHECK(at0.b_z == doctest::Approx(0.3));

    // Electric field constant in x; magnetic field affine with slope beta3.
    CHECK(field_components(spec, 2.5).e_x == field_components(spec, -4.0).e_x);
    CHECK(field_components(spec, 1.0).b_z - field_components(spec, 0.0).b_z ==
          doctest::Approx(0.6));

    // Finite-difference cross-checks of the gauge content.
    const double h = 1e-6;
    const double dphi = (field_components(spec, h).phi - field_components(spec, -h).phi) / (2 * h);
    CHECK(std::abs(-dphi - (-spec.alpha * spec.beta3)) <= 1e-10);
    const double da = (field_components(spec, h).a_y - field_components(spec, -h).a_y) / (2 * h);
    CHECK(std::abs(da - spec.beta3) <= 1e-10);
}

namespace {

Grid2D make_grid(size_t nx, size_t ny, double x_half, double y_span) {
    Grid2D g;
    g.x.resize(nx);
    g.y.resize(ny);
    for (size_t i = 0; i < nx; ++i)
        g.x[i] = -x_half + 2.0 * x_half * static_cast<double>(i) / (nx - 1);
    for (size_t j = 0; j < ny; ++j)
        g.y[j] = y_span * static_cast<double>(j) / ny;  // periodic, endpoint open
    g.values.assign(nx * ny, {0.0, 0.0});
    return g;
}

}  // namespace

TEST_CASE("y-independent data reduces to the 1D operator at beta1 = 0") {
    const EMFieldSpec spec{-2.0, 0.4, 0.8};
    Grid2D f = make_grid(41, 8, 3.0, 2.0 * std::acos(-1.0));
    auto g1d = [](double x) { return std::exp(-x * x); };
    for (size_t j = 0; j < f.y.size(); ++j)
        for (size_t i = 0; i < f.x.size(); ++i) f.at(i, j) = g1d(f.x[i]);

    const Grid2D out = reducible_hamiltonian_apply(spec, f);
    const double hx = f.x[1] - f.x[0];
    for (size_t i = 1; i + 1 < f.x.size(); ++i) {
        const double x = f.x[i];
        const double lap = (g1d(x + hx) - 2.0 * g1d(x) + g1d(x - hx)) / (hx * hx);
        const double m = spec.beta2 * x + 0.5 * spec.beta3 * x * x;
        const double expect = -lap + m * m * g1d(x) +
                              spec.alpha * (spec.beta2 + spec.beta3 * x) * g1d(x);
        for (size_t j = 0; j < f.y.size(); ++j) {
            CHECK(out.at(i, j).real() == doctest::Approx(expect).epsilon(1e-10));
            CHECK(std::abs(out.at(i, j).imag()) <= 1e-12);
        }
    }
}

TEST_CASE("mismatched grids are rejected") {
    Grid2D bad = make_grid(5, 4, 1.0, 2.0);
    bad.values.pop_back();
    CHECK_THROWS_AS(reducible_hamiltonian_apply({0.0, 0.1, 0.2}, bad),
                    std::invalid_argument);
}

TEST_CASE("Fourier mode maps to the 1D problem at the matching labels") {
    // e^{-i b1 y} g(x) turns i d/dy into +b1, i.e. the (b1, b2, b3) labels.
    const double b1 = 1.0;  // integer: exactly periodic on [0, 2pi)
    const double b3 = 0.1;
    const ClosedForm cf = closed_form_n1_even(b1, b3);
    const EMFieldSpec spec{-2.0, cf.beta2, b3};
    QESSolution sol = make_solution({1, Parity::Even, b1, b3}, cf.energy, cf.beta2);
    const WavefunctionSpec w = WavefunctionSpec::from_solution(sol, b1, b3);

    auto defect_at = [&](size_t nx, size_t ny) {
        Grid2D f = make_grid(nx, ny, 6.0, 2.0 * std::acos(-1.0));
        for (size_t j = 0; j < f.y.size(); ++j)
            for (size_t i = 0; i < f.x.size(); ++i) {
                const std::complex<double> phase{std::cos(-b1 * f.y[j]),
                                                 std::sin(-b1 * f.y[j])};
                f.at(i, j) = phase * eval_psi(w, f.x[i]);
            }
        const Grid2D out = reducible_hamiltonian_apply(spec, f);
        // Against 2E * f away from the x boundary; the per-mode operator has
        // the extra (b1 + M)^2 - M^2 - 2 b1 M ... already included: compare
        // against the full 1D operator applied discretely.
        double worst = 0.0;
        const double hx = f.x[1] - f.x[0];
        for (size_t i = 1; i + 1 < f.x.size(); ++i) {
            const double x = f.x[i];
            const double lap = (eval_psi(w, x + hx) - 2.0 * eval_psi(w, x) +
                                eval_psi(w, x - hx)) /
                               (hx * hx);
            const double x1 = b1 + spec.beta2 * x + 0.5 * spec.beta3 * x * x;
            const double expect1d = -lap + x1 * x1 * eval_psi(w, x) +
                                    spec.alpha * (spec.beta2 + spec.beta3 * x) *
                                        eval_psi(w, x);
            for (size_t j = 0; j < f.y.size(); ++j) {
                const std::complex<double> phase{std::cos(-b1 * f.y[j]),
                                                 std::sin(-b1 * f.y[j])};
                worst = std::max(worst, std::abs(out.at(i, j) - phase * expect1d));
            }
        }
        return worst;
    };

    // The only mismatch is the O(h^2) discrete d/dy; halving hy shrinks it ~4x.
    const double coarse = defect_at(41, 16);
    const double fine = defect_at(41, 32);
    CHECK(coarse / fine > 3.0);
    CHECK(coarse / fine < 5.0);
}

TEST_CASE("single-mode synthesis is the phase times the 1D level") {
    const double b1 = -0.7, b3 = 0.1;
    const ClosedForm cf = closed_form_n1_even(b1, b3);
    QESSolution sol = make_solution({1, Parity::Even, b1, b3}, cf.energy, cf.beta2);

    SynthesisSpec spec;
    spec.alpha = -2.0;
    spec.beta3 = b3;
    for (int i = 0; i < 21; ++i) spec.x_grid.push_back(-3.0 + 0.3 * i);
    for (int j = 0; j < 9; ++j) spec.y_grid.push_back(-2.0 + 0.5 * j);
    SynthesisMode mode;
    mode.beta1 = b1;
    mode.weight = 1.0;
    mode.wf = WavefunctionSpec::from_solution(sol, b1, b3);
    spec.modes.push_back(mode);

    const SynthesisResult res = synthesize_psi(spec);
    REQUIRE(res.mode_energies.size() == 1);
    CHECK(res.energy_min == res.energy_max);
    for (size_t j = 0; j < spec.y_grid.size(); ++j)
        for (size_t i = 0; i < spec.x_grid.size(); ++i) {
            const std::complex<double> expect =
                std::exp(std::complex<double>{0.0, b1 * spec.y_grid[j]}) *
                eval_psi(mode.wf, spec.x_grid[i]);
            CHECK(std::abs(res.psi.at(i, j) - expect) <= 1e-14);
        }
}

TEST_CASE("conjugate-symmetrized sampling yields a real superposition") {
    const double b3 = 0.1;
    SynthesisSpec spec;
    spec.alpha = -2.0;
    spec.beta3 = b3;
    spec.conjugate_symmetrize = true;
    for (int i = 0; i < 31; ++i) spec.x_grid.push_back(-3.0 + 0.2 * i);
    for (int j = 0; j < 17; ++j) spec.y_grid.push_back(-4.0 + 0.5 * j);
    for (double b1 : {-0.9, -0.7, -0.5}) {
        const ClosedForm cf = closed_form_n1_even(b1, b3);
        QESSolution sol = make_solution({1, Parity::Even, b1, b3}, cf.energy, cf.beta2);
        SynthesisMode mode;
        mode.beta1 = b1;
        mode.weight = 0.2;
        mode.wf = WavefunctionSpec::from_solution(sol, b1, b3);
        spec.modes.push_back(mode);
    }
    const SynthesisResult res = synthesize_psi(spec);
    for (const auto& v : res.psi.values) CHECK(std::abs(v.imag()) <= 1e-12);
}

TEST_CASE("eleven-mode family synthesizes with certified members") {
    std::vector<double> xs, ys;
    for (int i = 0; i < 41; ++i) xs.push_back(-4.0 + 0.2 * i);
    for (int j = 0; j < 11; ++j) ys.push_back(-1.0 + 0.2 * j);
    SynthesisSpec spec = make_n1_even_family(-0.9, -0.5, 11, 0.1, xs, ys);
    REQUIRE(spec.modes.size() == 11);
    for (const SynthesisMode& mode : spec.modes) {
        double worst = 0.0;
        for (double x = 0.2; x < 4.0; x += 0.4)
            worst = std::max(worst, schrodinger_residual_relative(mode.wf, x));
        CHECK(worst <= 1e-8);
    }
    const SynthesisResult res = synthesize_psi(spec);
    CHECK(res.mode_energies.size() == 11);
    CHECK(res.energy_max > res.energy_min);  // energies vary along the family

    // Corrupting a member's energy must abort with the offending beta1.
    SynthesisSpec broken = spec;
    broken.modes[4].wf.solution.energy += 1e-3;
    CHECK_THROWS_AS(synthesize_psi(broken), InvalidModeError);
    try {
        synthesize_psi(broken);
    } catch (const InvalidModeError& err) {
        CHECK(err.beta1 == doctest::Approx(broken.modes[4].beta1));
    }

    // Optional level-set restriction keeps only matching modes.
    SynthesisSpec restricted = spec;
    restricted.level_energy = spec.modes.front().wf.solution.energy;
    restricted.level_epsilon = 1e-12;
    const SynthesisResult r2 = synthesize_psi(restricted);
    CHECK(r2.mode_energies.size() == 1);
}

TEST_CASE("grid exports") {
    std::vector<double> xs{-1.0, 0.0, 1.0}, ys{0.0, 0.5};
    SynthesisSpec spec = make_n1_even_family(-0.8, -0.6, 3, 0.1, xs, ys);
    const SynthesisResult res = synthesize_psi(spec);

    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "qaos_em_test";
    fs::create_directories(dir);
    const std::string csv = (dir / "psi.csv").string();
    const std::string json = (dir / "psi.json").string();
    write_synthesis_csv(csv, res);
    write_synthesis_json(json, spec, res);

    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,y,re_psi,im_psi");
    size_t rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == xs.size() * ys.size());

    std::ifstream jin(json);
    nlohmann::json parsed = nlohmann::json::parse(jin);
    CHECK(parsed["modes"].size() == 3);
    CHECK(parsed.contains("energy_spread"));
    fs::remove_all(dir);
}
