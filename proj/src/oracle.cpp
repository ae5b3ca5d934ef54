#include "qaos/oracle.hpp"

#include <lapacke.h>

#include <cmath>
#include <fmt/format.h>

namespace qaos {

namespace {

struct Tridiag {
    std::vector<double> diag;
    std::vector<double> off;
    std::vector<double> y;   // interior nodes
    double h = 0.0;
};

// Symmetrized compactified operator.  In y the pencil reads
//   -(w u')' + 2V(tan y) sec^2 y u = 2E sec^2 y u,  w = cos^2 y,
// and conjugating by the diagonal sec(y) absorbs the weight:
//   A_ii    = cos^2 y_i (w_{i-1/2} + w_{i+1/2}) / h^2 + 2 V(tan y_i)
//   A_i,i+1 = -cos y_i cos y_{i+1} w_{i+1/2} / h^2 .
Tridiag build_compactified(const PotentialParams& p, int grid_points, double y_min,
                           double y_max) {
    const int interior = grid_points - 2;
    Tridiag t;
    t.h = (y_max - y_min) / (grid_points - 1);
    t.diag.resize(static_cast<size_t>(interior));
    t.off.resize(interior > 1 ? static_cast<size_t>(interior) - 1 : 0);
    t.y.resize(static_cast<size_t>(interior));
    const double inv_h2 = 1.0 / (t.h * t.h);
    auto w_mid = [&](double y) {
        const double cm = std::cos(y);
        return cm * cm;
    };
    for (int i = 0; i < interior; ++i) {
        const double yi = y_min + (i + 1) * t.h;
        t.y[static_cast<size_t>(i)] = yi;
        const double ci = std::cos(yi);
        const double wl = w_mid(yi - 0.5 * t.h);
        const double wr = w_mid(yi + 0.5 * t.h);
        t.diag[static_cast<size_t>(i)] =
            ci * ci * (wl + wr) * inv_h2 + 2.0 * eval_potential(p, std::tan(yi));
        if (i + 1 < interior) {
            const double cn = std::cos(y_min + (i + 2) * t.h);
            t.off[static_cast<size_t>(i)] = -ci * cn * wr * inv_h2;
        }
    }
    return t;
}

Tridiag build_box(const PotentialParams& p, int grid_points, double box_half_width) {
    const int interior = grid_points - 2;
    Tridiag t;
    t.h = 2.0 * box_half_width / (grid_points - 1);
    t.diag.resize(static_cast<size_t>(interior));
    t.off.assign(interior > 1 ? static_cast<size_t>(interior) - 1 : 0,
                 -1.0 / (t.h * t.h));
    t.y.resize(static_cast<size_t>(interior));
    for (int i = 0; i < interior; ++i) {
        const double xi = -box_half_width + (i + 1) * t.h;
        t.y[static_cast<size_t>(i)] = xi;
        t.diag[static_cast<size_t>(i)] =
            2.0 / (t.h * t.h) + 2.0 * eval_potential(p, xi);
    }
    return t;
}

struct EigenPairs {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
};

EigenPairs lowest_pairs(const Tridiag& t, int k, bool want_vectors) {
    const auto n = static_cast<lapack_int>(t.diag.size());
    k = std::min<int>(k, static_cast<int>(n));
    std::vector<double> diag = t.diag;  // dstevr scribbles on its inputs
    std::vector<double> off = t.off;
    std::vector<double> w(static_cast<size_t>(n));
    std::vector<double> z(want_vectors ? static_cast<size_t>(n) * k : 1);
    std::vector<lapack_int> isuppz(2 * static_cast<size_t>(std::max(k, 1)));
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dstevr(
        LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', n, diag.data(),
        off.data(), 0.0, 0.0, 1, k, 0.0, &found, w.data(), z.data(), n,
        isuppz.data());
    if (info != 0)
        throw std::runtime_error(fmt::format("tridiagonal eigensolver failed: info={}", info));
    EigenPairs out;
    out.values.assign(w.begin(), w.begin() + found);
    if (want_vectors) {
        out.vectors.resize(static_cast<size_t>(found));
        for (lapack_int j = 0; j < found; ++j)
            out.vectors[static_cast<size_t>(j)].assign(
                z.begin() + static_cast<std::ptrdiff_t>(j) * n,
                z.begin() + static_cast<std::ptrdiff_t>(j + 1) * n);
    }
    return out;
}

// Neville extrapolation to h = 0 of a quantity with an even error series
// E(h) = E* + c1 h^2 + c2 h^4 + ...; works for any mesh-width sequence.
double extrapolate(const std::vector<double>& values, const std::vector<double>& widths) {
    const size_t n = values.size();
    std::vector<double> x(n), t = values;
    for (size_t l = 0; l < n; ++l) x[l] = widths[l] * widths[l];
    for (size_t m = 1; m < n; ++m)
        for (size_t l = n - 1; l >= m; --l)
            t[l] = (x[l - m] * t[l] - x[l] * t[l - 1]) / (x[l - m] - x[l]);
    return t[n - 1];
}

SpectrumResult run_levels(const PotentialParams& p, const OracleConfig& cfg,
                          bool box_mode, double box_half_width) {
    if (cfg.grid_points < 200)
        throw std::invalid_argument("oracle: need at least 200 grid points");
    if (!(cfg.y_max > cfg.y_min))
        throw std::invalid_argument("oracle: empty domain");
    if (cfg.eigen_count < 1 || cfg.refinement_levels < 1)
        throw std::invalid_argument("oracle: bad eigen_count / refinement_levels");

    SpectrumResult result;
    std::vector<std::vector<double>> levels;
    std::vector<double> widths;
    int n_pts = cfg.grid_points;
    for (int level = 0; level < cfg.refinement_levels; ++level) {
        const Tridiag t = box_mode ? build_box(p, n_pts, box_half_width)
                                   : build_compactified(p, n_pts, cfg.y_min, cfg.y_max);
        widths.push_back(t.h);
        const bool finest = level + 1 == cfg.refinement_levels;
        EigenPairs pairs = lowest_pairs(t, cfg.eigen_count, finest);
        std::vector<double> energies(pairs.values.size());
        for (size_t j = 0; j < pairs.values.size(); ++j) energies[j] = 0.5 * pairs.values[j];
        levels.push_back(energies);
        result.grid_points_per_level.push_back(n_pts);

        if (finest) {
            result.energies = energies;
            result.y_grid = t.y;
            const double h = t.h;
            for (auto& phi : pairs.vectors) {
                double norm2 = 0.0;
                for (double v : phi) norm2 += v * v;
                const double scale = 1.0 / std::sqrt(norm2 * h);
                std::vector<double> u(phi.size());
                double peak = 0.0;
                size_t peak_at = 0;
                for (size_t i = 0; i < phi.size(); ++i) {
                    phi[i] *= scale;
                    u[i] = phi[i] * (box_mode ? 1.0 : std::cos(t.y[i]));
                    if (std::abs(u[i]) > peak) {
                        peak = std::abs(u[i]);
                        peak_at = i;
                    }
                }
                double unorm2 = 0.0;
                for (double v : u) unorm2 += v * v;
                double uscale = unorm2 > 0.0 ? 1.0 / std::sqrt(unorm2 * h) : 1.0;
                if (u[peak_at] < 0.0) uscale = -uscale;
                for (size_t i = 0; i < u.size(); ++i) u[i] *= uscale;
                if (phi[peak_at] < 0.0)
                    for (auto& v : phi) v = -v;
                result.eigenvectors.push_back(std::move(phi));
                result.wavefunctions.push_back(std::move(u));
            }
        }
        n_pts = 2 * n_pts - 1;
    }

    // Richardson down the level list; convergence estimate per refinement.
    const size_t count = levels.back().size();
    result.extrapolated = levels.back();
    for (size_t j = 0; j < count; ++j) {
        std::vector<double> vals, ws;
        for (size_t l = 0; l < levels.size(); ++l) {
            if (levels[l].size() <= j) continue;
            vals.push_back(levels[l][j]);
            ws.push_back(widths[l]);
        }
        if (vals.size() > 1) result.extrapolated[j] = extrapolate(vals, ws);
    }
    for (size_t l = 1; l < levels.size(); ++l) {
        double shift = 0.0;
        for (size_t j = 0; j < std::min(levels[l].size(), levels[l - 1].size()); ++j)
            shift = std::max(shift, std::abs(levels[l][j] - levels[l - 1][j]));
        result.convergence_estimate.push_back(shift);
    }
    result.converged = result.convergence_estimate.empty() ||
                       result.convergence_estimate.back() <= 1e-3;
    return result;
}

}  // namespace

Eigen::MatrixXd discretize_hamiltonian(const PotentialParams& p, const OracleConfig& cfg) {
    if (cfg.grid_points < 200)
        throw std::invalid_argument("discretize_hamiltonian: need at least 200 grid points");
    if (!(cfg.y_max > cfg.y_min))
        throw std::invalid_argument("discretize_hamiltonian: empty domain");
    const Tridiag t = build_compactified(p, cfg.grid_points, cfg.y_min, cfg.y_max);
    const auto n = static_cast<Eigen::Index>(t.diag.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = t.diag[static_cast<size_t>(i)];
        if (i + 1 < n) {
            m(i, i + 1) = t.off[static_cast<size_t>(i)];
            m(i + 1, i) = t.off[static_cast<size_t>(i)];
        }
    }
    return m;
}

SpectrumResult lowest_eigenvalues(const PotentialParams& p, const OracleConfig& cfg) {
    return run_levels(p, cfg, /*box_mode=*/false, 0.0);
}

SpectrumResult lowest_eigenvalues_box(const PotentialParams& p, const OracleConfig& cfg) {
    // Estimate the highest requested level from a coarse compactified run,
    // then grow the box until the potential wall clears it comfortably.
    OracleConfig coarse = cfg;
    coarse.grid_points = 401;
    coarse.refinement_levels = 1;
    const SpectrumResult probe = run_levels(p, coarse, false, 0.0);
    const double e_max = probe.energies.empty() ? 0.0 : probe.energies.back();
    double half_width = 2.0;
    while (half_width < 1e6 &&
           (eval_potential(p, half_width) <= e_max + 50.0 ||
            eval_potential(p, -half_width) <= e_max + 50.0))
        half_width *= 1.3;
    return run_levels(p, cfg, /*box_mode=*/true, half_width);
}

int rank_of_energy(const SpectrumResult& result, double energy, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("rank_of_energy: tol must be positive");
    int match = -1;
    int hits = 0;
    for (size_t j = 0; j < result.extrapolated.size(); ++j) {
        if (std::abs(result.extrapolated[j] - energy) <= tol) {
            ++hits;
            if (match < 0) match = static_cast<int>(j);
        }
    }
    if (hits == 0)
        throw NoMatchError(fmt::format("rank_of_energy: no level within {} of {}", tol, energy));
    if (hits > 1)
        throw AmbiguousMatchError(
            fmt::format("rank_of_energy: {} levels within {} of {}", hits, tol, energy));
    return match;
}

}  // namespace qaos
