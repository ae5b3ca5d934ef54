#include "qaos/em_field.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>

#include <json.hpp>

namespace qaos {

FieldComponents field_components(const EMFieldSpec& spec, double x) {
    const double line = spec.beta2 + spec.beta3 * x;
    return {spec.alpha * line, line, spec.beta3, line};
}

Grid2D reducible_hamiltonian_apply(const EMFieldSpec& spec, const Grid2D& f) {
    const size_t nx = f.x.size(), ny = f.y.size();
    if (nx < 3 || ny < 3 || f.values.size() != nx * ny)
        throw std::invalid_argument("reducible_hamiltonian_apply: grid mismatch");
    const double hx = f.x[1] - f.x[0];
    const double hy = f.y[1] - f.y[0];

    // 2H f = -f_xx - f_yy + 2 i M f_y + M^2 f + alpha (b2 + b3 x) f,
    // with M(x) = b2 x + b3 x^2 / 2 (an x-dependent multiplication operator).
    Grid2D out;
    out.x = f.x;
    out.y = f.y;
    out.values.assign(nx * ny, {0.0, 0.0});
    const std::complex<double> two_i{0.0, 2.0};
    for (size_t iy = 0; iy < ny; ++iy) {
        const size_t yp = (iy + 1) % ny;         // periodic wrap in y
        const size_t ym = (iy + ny - 1) % ny;
        for (size_t ix = 0; ix < nx; ++ix) {
            const double x = f.x[ix];
            const double m = spec.beta2 * x + 0.5 * spec.beta3 * x * x;
            const std::complex<double> c = f.at(ix, iy);
            const std::complex<double> xm = ix > 0 ? f.at(ix - 1, iy) : 0.0;  // Dirichlet
            const std::complex<double> xp = ix + 1 < nx ? f.at(ix + 1, iy) : 0.0;
            const std::complex<double> fxx = (xp - 2.0 * c + xm) / (hx * hx);
            const std::complex<double> fyy =
                (f.at(ix, yp) - 2.0 * c + f.at(ix, ym)) / (hy * hy);
            const std::complex<double> fy = (f.at(ix, yp) - f.at(ix, ym)) / (2.0 * hy);
            out.at(ix, iy) = -fxx - fyy + two_i * m * fy + m * m * c +
                             spec.alpha * (spec.beta2 + spec.beta3 * x) * c;
        }
    }
    return out;
}

SynthesisResult synthesize_psi(const SynthesisSpec& spec) {
    if (spec.modes.empty())
        throw std::invalid_argument("synthesize_psi: no modes");
    if (spec.x_grid.empty() || spec.y_grid.empty())
        throw std::invalid_argument("synthesize_psi: empty grid");

    // Validate every mode against its own 1D problem before summing.
    std::vector<const SynthesisMode*> retained;
    for (const SynthesisMode& mode : spec.modes) {
        if (spec.level_energy &&
            std::abs(mode.wf.solution.energy - *spec.level_energy) > spec.level_epsilon)
            continue;
        double worst = 0.0;
        for (double x : {0.31, 0.97, 1.73, 2.9, -0.61, -1.39}) {
            worst = std::max(worst, schrodinger_residual_relative(mode.wf, x));
        }
        if (worst > spec.mode_residual_tol)
            throw InvalidModeError(
                mode.beta1,
                fmt::format("synthesize_psi: mode at beta1={} fails its Schrodinger "
                            "residual check ({} > {})",
                            mode.beta1, worst, spec.mode_residual_tol));
        retained.push_back(&mode);
    }
    if (retained.empty())
        throw std::invalid_argument("synthesize_psi: level-set restriction removed all modes");

    SynthesisResult result;
    result.psi.x = spec.x_grid;
    result.psi.y = spec.y_grid;
    result.psi.values.assign(spec.x_grid.size() * spec.y_grid.size(), {0.0, 0.0});

    const size_t nx = spec.x_grid.size();
    for (const SynthesisMode* mode : retained) {
        result.mode_energies.push_back(mode->wf.solution.energy);
        result.mode_beta1.push_back(mode->beta1);
        std::vector<double> g(nx);
        for (size_t ix = 0; ix < nx; ++ix) g[ix] = eval_psi(mode->wf, spec.x_grid[ix]);
        for (size_t iy = 0; iy < spec.y_grid.size(); ++iy) {
            const double phase = mode->beta1 * spec.y_grid[iy];
            std::complex<double> factor{std::cos(phase), std::sin(phase)};
            if (spec.conjugate_symmetrize) factor = 2.0 * std::cos(phase);
            for (size_t ix = 0; ix < nx; ++ix)
                result.psi.values[iy * nx + ix] += mode->weight * factor * g[ix];
        }
    }
    const auto [lo, hi] = std::minmax_element(result.mode_energies.begin(),
                                              result.mode_energies.end());
    result.energy_min = *lo;
    result.energy_max = *hi;
    return result;
}

SynthesisSpec make_n1_even_family(double beta1_lo, double beta1_hi, int mode_count,
                                  double beta3, std::vector<double> x_grid,
                                  std::vector<double> y_grid) {
    if (mode_count < 1)
        throw std::invalid_argument("make_n1_even_family: mode_count >= 1");
    if (beta1_lo * beta1_hi <= 0.0)
        throw std::invalid_argument("make_n1_even_family: the interval must avoid beta1 = 0");
    SynthesisSpec spec;
    spec.alpha = -2.0;
    spec.beta3 = beta3;
    spec.x_grid = std::move(x_grid);
    spec.y_grid = std::move(y_grid);
    const double step = mode_count > 1 ? (beta1_hi - beta1_lo) / (mode_count - 1) : 0.0;
    for (int j = 0; j < mode_count; ++j) {
        const double b1 = beta1_lo + j * step;
        const ClosedForm cf = closed_form_n1_even(b1, beta3);
        QESSolution sol = make_solution({1, Parity::Even, b1, beta3}, cf.energy, cf.beta2);
        SynthesisMode mode;
        mode.beta1 = b1;
        // Trapezoid weights over the sampled interval.
        mode.weight = (mode_count > 1 && (j == 0 || j == mode_count - 1)) ? 0.5 * step
                      : (mode_count > 1 ? step : 1.0);
        mode.wf = WavefunctionSpec::from_solution(sol, b1, beta3);
        spec.modes.push_back(std::move(mode));
    }
    return spec;
}

void write_synthesis_csv(const std::string& path, const SynthesisResult& result) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_synthesis_csv: cannot open " + path);
    out << "x,y,re_psi,im_psi\n";
    const size_t nx = result.psi.x.size();
    for (size_t iy = 0; iy < result.psi.y.size(); ++iy)
        for (size_t ix = 0; ix < nx; ++ix)
            out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", result.psi.x[ix],
                               result.psi.y[iy], result.psi.values[iy * nx + ix].real(),
                               result.psi.values[iy * nx + ix].imag());
}

void write_synthesis_json(const std::string& path, const SynthesisSpec& spec,
                          const SynthesisResult& result) {
    nlohmann::json j;
    j["params"] = {{"alpha", spec.alpha},
                   {"beta3", spec.beta3},
                   {"conjugate_symmetrize", spec.conjugate_symmetrize},
                   {"x_points", spec.x_grid.size()},
                   {"y_points", spec.y_grid.size()}};
    j["modes"] = nlohmann::json::array();
    for (size_t k = 0; k < result.mode_beta1.size(); ++k)
        j["modes"].push_back({{"beta1", result.mode_beta1[k]},
                              {"energy", result.mode_energies[k]}});
    j["energy_spread"] = {{"min", result.energy_min}, {"max", result.energy_max}};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_synthesis_json: cannot open " + path);
    out << j.dump(2) << "\n";
}

}  // namespace qaos
