// qaos: analytic levels of the group-built quartic anharmonic oscillator,
// a finite-difference cross-check oracle, and reproducible data emission.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "qaos/em_field.hpp"
#include "qaos/oracle.hpp"
#include "qaos/potential.hpp"
#include "qaos/qes.hpp"
#include "qaos/report.hpp"
#include "qaos/wavefunction.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNoSolution = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitTableMismatch = 4;

struct CommonOpts {
    std::string format = "json";
    std::string out_dir;
    long seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--format", opts.format, "Output file format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opts.out_dir, "Directory for output files");
    cmd->add_option("--seed", opts.seed, "Recorded in outputs for reproducibility");
}

void write_text(const std::string& dir, const std::string& name, const std::string& body) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const fs::path path = fs::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << body;
}

nlohmann::json base_params(const std::string& command, const CommonOpts& opts) {
    return {{"command", command}, {"seed", opts.seed}, {"format", opts.format}};
}

void emit_report(const CommonOpts& opts, const std::string& stem,
                 const nlohmann::json& report, const std::string& csv_body) {
    if (opts.out_dir.empty()) return;
    if (opts.format == "json")
        write_text(opts.out_dir, stem + ".json", report.dump(2) + "\n");
    else
        write_text(opts.out_dir, stem + ".csv", csv_body);
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
    int n = 0;
    std::string parity = "even";
    double beta1 = 0.0;
    double beta3 = 1.0;
    bool simultaneous = false;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    bool has_bracket = false;
    int samples = 2000;
    CommonOpts common;
};

int run_solve(const SolveArgs& args) {
    using namespace qaos;
    std::vector<Parity> sectors;
    if (args.parity == "both") {
        sectors = {Parity::Even, Parity::Odd};
    } else {
        sectors = {parity_from_name(args.parity)};
    }

    double beta3 = args.beta3;
    if (args.simultaneous) {
        if (args.n != 2) {
            std::cerr << "--simultaneous applies to the N=2 problem only\n";
            return kExitUsage;
        }
        beta3 = simultaneous_n2_beta3(args.beta1);
        std::cout << fmt::format("simultaneous beta3 = {}\n", format_double(beta3));
    }

    nlohmann::json report;
    report["params"] = base_params("solve", args.common);
    report["params"]["n"] = args.n;
    report["params"]["parity"] = args.parity;
    report["params"]["beta1"] = args.beta1;
    report["params"]["beta3"] = beta3;
    report["params"]["alpha"] = alpha_for(args.n);
    report["solutions"] = nlohmann::json::array();
    report["checks"] = nlohmann::json::object();

    std::string csv = "parity," + solution_csv_header() + "\n";
    bool any = false, family = false;
    for (Parity parity : sectors) {
        QESProblem prob{args.n, parity, args.beta1, beta3};
        SolveOptions opts;
        opts.samples = args.samples;
        if (args.has_bracket) {
            opts.bracket_override = true;
            opts.beta2_min = args.bracket_lo;
            opts.beta2_max = args.bracket_hi;
        }
        const SolveResult res = solve_qes(prob, opts);
        family = family || res.family_detected;
        for (const QESSolution& sol : res.solutions) {
            any = true;
            report["solutions"].push_back(solution_to_json(sol, args.beta1, beta3));
            csv += parity_name(parity) + "," + solution_csv_row(sol, args.beta1, beta3) + "\n";
            std::cout << fmt::format(
                "{}  E = {:.7f}  beta2 = {:.7f}  c = {:.7f}  (matrix {:.2e}, "
                "continuity {:.2e}, ode {:.2e})\n",
                parity_name(parity), sol.energy, sol.beta2, sol.casimir,
                sol.matrix_residual, std::abs(sol.continuity),
                sol.recursion_residual);
        }
        if (res.family_detected)
            std::cout << parity_name(parity)
                      << ": one-parameter family (every beta2 in the bracket solves "
                         "this sector); representative members listed\n";
    }
    report["checks"]["family_detected"] = family;
    report["checks"]["solution_count"] = report["solutions"].size();
    emit_report(args.common, "solve", report, csv);

    if (!any) {
        std::cout << "no solution in bracket\n";
        return kExitNoSolution;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// oracle

struct OracleArgs {
    std::optional<double> alpha;
    std::optional<double> beta2;
    std::optional<int> n;
    std::string parity = "even";
    double beta1 = 0.0;
    double beta3 = 1.0;
    int grid = 2001;
    int levels = 3;
    int eigen_count = 6;
    bool box_check = false;
    CommonOpts common;
};

int run_oracle(const OracleArgs& args) {
    using namespace qaos;

    std::vector<QESSolution> analytic;
    double alpha = 0.0, beta2 = 0.0;
    if (args.n) {
        const QESProblem prob{*args.n, parity_from_name(args.parity), args.beta1,
                              args.beta3};
        const SolveResult res = solve_qes(prob);
        if (res.solutions.empty()) {
            std::cout << "no analytic solution at these parameters\n";
            return kExitNoSolution;
        }
        analytic = res.solutions;
        alpha = alpha_for(*args.n);
        beta2 = analytic.front().beta2;  // sweep shares the potential only if unique
        if (analytic.size() > 1)
            std::cout << "note: multiple analytic solutions; oracle uses the first beta2\n";
    } else if (args.alpha && args.beta2) {
        alpha = *args.alpha;
        beta2 = *args.beta2;
    } else {
        std::cerr << "oracle needs either --n/--parity or --alpha/--beta2\n";
        return kExitUsage;
    }

    const PotentialParams pot{alpha, {args.beta1, beta2, args.beta3}};
    OracleConfig cfg;
    cfg.grid_points = args.grid;
    cfg.refinement_levels = args.levels;
    cfg.eigen_count = args.eigen_count;
    const SpectrumResult spectrum = lowest_eigenvalues(pot, cfg);

    nlohmann::json report;
    report["params"] = base_params("oracle", args.common);
    report["params"]["alpha"] = alpha;
    report["params"]["beta1"] = args.beta1;
    report["params"]["beta2"] = beta2;
    report["params"]["beta3"] = args.beta3;
    report["params"]["grid"] = args.grid;
    report["params"]["levels"] = args.levels;
    report["solutions"] = nlohmann::json::array();
    report["checks"] = {{"spectrum", spectrum_to_json(spectrum)}};

    std::string csv = "rank,energy,extrapolated\n";
    for (size_t k = 0; k < spectrum.extrapolated.size(); ++k) {
        csv += fmt::format("{},{},{}\n", k, format_double(spectrum.energies[k]),
                           format_double(spectrum.extrapolated[k]));
        std::cout << fmt::format("level {}: {:.8f} (extrapolated {:.8f})\n", k,
                                 spectrum.energies[k], spectrum.extrapolated[k]);
    }
    if (!spectrum.converged)
        std::cout << fmt::format("warning: level disagreement {:.3e} above 1e-3\n",
                                 spectrum.convergence_estimate.back());

    for (const QESSolution& sol : analytic) {
        nlohmann::json item = solution_to_json(sol, args.beta1, args.beta3);
        double best = std::numeric_limits<double>::infinity();
        int rank = -1;
        for (size_t k = 0; k < spectrum.extrapolated.size(); ++k) {
            const double d = std::abs(spectrum.extrapolated[k] - sol.energy);
            if (d < best) {
                best = d;
                rank = static_cast<int>(k);
            }
        }
        item["checks"]["oracle_rank"] = rank;
        item["checks"]["oracle_deviation"] = best;
        report["solutions"].push_back(item);
        std::cout << fmt::format("analytic E = {:.8f}: oracle rank {} deviation {:.2e}\n",
                                 sol.energy, rank, best);
    }

    if (args.box_check) {
        const SpectrumResult box = lowest_eigenvalues_box(pot, cfg);
        double worst = 0.0;
        for (size_t k = 0;
             k < std::min(box.extrapolated.size(), spectrum.extrapolated.size()); ++k)
            worst = std::max(worst,
                             std::abs(box.extrapolated[k] - spectrum.extrapolated[k]));
        report["checks"]["box_agreement"] = worst;
        std::cout << fmt::format("box-mode agreement: {:.3e}\n", worst);
    }

    emit_report(args.common, "oracle", report, csv);
    return spectrum.converged ? 0 : kExitNotConverged;
}

// ---------------------------------------------------------------------------
// table1

struct TableArgs {
    double beta1 = 0.5;
    CommonOpts common;
};

int run_table1(const TableArgs& args) {
    using namespace qaos;
    const double b1sq = args.beta1 * args.beta1;
    const double s7 = std::sqrt(7.0), s51 = std::sqrt(51.0), s15 = std::sqrt(15.0),
                 s21 = std::sqrt(21.0);
    // Reference ratios beta2 / beta1^2 for the zero-energy branch.
    const std::map<std::pair<int, std::string>, std::vector<double>> expected = {
        {{1, "even"}, {2.0}},
        {{1, "odd"}, {}},
        {{3, "even"}, {0.5}},
        {{3, "odd"}, {2.0}},
        {{4, "even"}, {3.0 - s7, 3.0 + s7}},
        {{4, "odd"}, {1.0}},
        {{6, "even"}, {(2.0 / 35.0) * (11.0 - s51), (2.0 / 35.0) * (11.0 + s51)}},
        {{6, "odd"}, {(2.0 / 5.0) * (5.0 - s15), (2.0 / 5.0) * (5.0 + s15)}},
        {{7, "even"}, {}},
        {{7, "odd"}, {(7.0 - s21) / 7.0, (7.0 + s21) / 7.0}},
    };

    nlohmann::json report;
    report["params"] = base_params("table1", args.common);
    report["params"]["beta1"] = args.beta1;
    report["solutions"] = nlohmann::json::array();
    report["checks"] = nlohmann::json::object();

    std::string csv = "n,parity,ratio,reference,deviation\n";
    double worst = 0.0;
    bool mismatch = false;
    std::vector<std::string> extras;
    for (const auto& [key, refs] : expected) {
        const auto& [n, parity] = key;
        std::vector<double> ratios;
        for (const QESSolution& sol : czero_solutions(n, args.beta1, parity_from_name(parity)))
            ratios.push_back(sol.beta2 / b1sq);
        // Greedy pairing of computed against reference entries.
        std::vector<bool> used(ratios.size(), false);
        for (double ref : refs) {
            double best = std::numeric_limits<double>::infinity();
            int at = -1;
            for (size_t k = 0; k < ratios.size(); ++k) {
                if (used[k]) continue;
                if (std::abs(ratios[k] - ref) < best) {
                    best = std::abs(ratios[k] - ref);
                    at = static_cast<int>(k);
                }
            }
            if (at < 0 || best > 1e-8) {
                mismatch = true;
                std::cout << fmt::format("N={} {}: reference ratio {:.10f} NOT reproduced\n",
                                         n, parity, ref);
                continue;
            }
            used[static_cast<size_t>(at)] = true;
            worst = std::max(worst, best);
            csv += fmt::format("{},{},{},{},{}\n", n, parity,
                               format_double(ratios[static_cast<size_t>(at)]),
                               format_double(ref), format_double(best));
            std::cout << fmt::format("N={} {}: beta2/beta1^2 = {:.10f} (reference {:.10f})\n",
                                     n, parity, ratios[static_cast<size_t>(at)], ref);
        }
        for (size_t k = 0; k < ratios.size(); ++k) {
            if (used[k]) continue;
            extras.push_back(fmt::format("N={} {}: extra zero-energy root beta2/beta1^2 = {:.10f}",
                                         n, parity, ratios[k]));
            report["solutions"].push_back(
                {{"n", n}, {"parity", parity}, {"ratio", ratios[k]}, {"beyond_reference", true}});
        }
    }

    // The reference table expects nothing beyond beta2 = 0 for N = 9, 10; the
    // matching conditions do have real positive roots there (and for N=7
    // even); they are listed as findings rather than silently dropped.
    for (int n : {9, 10}) {
        for (const std::string parity : {"even", "odd"}) {
            for (const QESSolution& sol :
                 czero_solutions(n, args.beta1, parity_from_name(parity)))
                extras.push_back(fmt::format(
                    "N={} {}: zero-energy root beta2/beta1^2 = {:.10f} (reference "
                    "expects none)",
                    n, parity, sol.beta2 / b1sq));
        }
    }
    for (const std::string& line : extras) std::cout << line << "\n";
    if (!extras.empty())
        std::cout << "note: roots beyond the reference table are genuine zero-energy "
                     "levels (verified against the numerical spectrum); see README\n";

    report["checks"]["max_deviation"] = worst;
    report["checks"]["mismatch"] = mismatch;
    report["checks"]["extra_roots"] = extras;
    emit_report(args.common, "table1", report, csv);
    std::cout << fmt::format("max deviation from reference entries: {:.3e}\n", worst);
    return mismatch ? kExitTableMismatch : 0;
}

// ---------------------------------------------------------------------------
// figure-data

struct FigureArgs {
    int id = 1;
    int grid = 2001;
    CommonOpts common;
};

std::string figure_csv(const qaos::PotentialParams& pot,
                       std::vector<std::pair<std::string, qaos::WavefunctionSpec>> funcs,
                       int grid) {
    using namespace qaos;
    std::string head = "y,potential";
    for (auto& [name, wf] : funcs) {
        normalize_arctan(wf, 10000);
        head += "," + name;
    }
    std::string body = head + "\n";
    const double half_pi = std::asin(1.0);
    for (int i = 0; i < grid; ++i) {
        const double y = -half_pi + (2.0 * half_pi) * i / (grid - 1);
        const double x = std::tan(y);
        body += fmt::format("{},{}", format_double(y),
                            format_double(eval_potential(pot, x)));
        for (const auto& [name, wf] : funcs) body += "," + format_double(eval_psi(wf, x));
        body += "\n";
    }
    return body;
}

int run_figure(const FigureArgs& args) {
    using namespace qaos;
    if (args.common.out_dir.empty()) {
        std::cerr << "figure-data requires --out\n";
        return kExitUsage;
    }

    auto n0_spec = [&](double beta2, double beta3) {
        QESSolution sol = make_solution({0, Parity::Even, 0.0, beta3}, 0.0, beta2);
        return WavefunctionSpec::from_solution(sol, 0.0, beta3);
    };
    auto n1_even_spec = [&](double beta1, double beta3) {
        const ClosedForm cf = closed_form_n1_even(beta1, beta3);
        QESSolution sol = make_solution({1, Parity::Even, beta1, beta3}, cf.energy, cf.beta2);
        return WavefunctionSpec::from_solution(sol, beta1, beta3);
    };
    auto n1_odd_spec = [&](double beta2, double beta3) {
        const ClosedForm cf = closed_form_n1_odd(beta2);
        QESSolution sol = make_solution({1, Parity::Odd, 0.0, beta3}, cf.energy, cf.beta2);
        return WavefunctionSpec::from_solution(sol, 0.0, beta3);
    };

    switch (args.id) {
        case 1: {
            write_text(args.common.out_dir, "figure1_left.csv",
                       figure_csv({-1.0, {0.0, 0.3, 0.6}}, {{"psi0", n0_spec(0.3, 0.6)}},
                                  args.grid));
            write_text(args.common.out_dir, "figure1_right.csv",
                       figure_csv({-1.0, {0.0, -1.5, 1.0}}, {{"psi0", n0_spec(-1.5, 1.0)}},
                                  args.grid));
            break;
        }
        case 2: {
            for (double b1 : {0.7, -0.7}) {
                const ClosedForm cf = closed_form_n1_even(b1, 0.1);
                const std::string name =
                    b1 > 0 ? "figure2_left.csv" : "figure2_right.csv";
                write_text(args.common.out_dir, name,
                           figure_csv({-2.0, {b1, cf.beta2, 0.1}},
                                      {{"psi1_even", n1_even_spec(b1, 0.1)}}, args.grid));
            }
            break;
        }
        case 3: {
            write_text(args.common.out_dir, "figure3_left.csv",
                       figure_csv({-2.0, {0.0, 0.3, 0.6}},
                                  {{"psi1_odd", n1_odd_spec(0.3, 0.6)}}, args.grid));
            write_text(args.common.out_dir, "figure3_right.csv",
                       figure_csv({-2.0, {0.0, -1.5, 1.0}},
                                  {{"psi1_odd", n1_odd_spec(-1.5, 1.0)}}, args.grid));
            break;
        }
        case 4: {
            const double b1 = 0.4;
            const double b3 = simultaneous_n2_beta3(b1);
            const ClosedForm even = closed_form_n2_even(b1, b3, Branch::Minus);
            const ClosedForm odd = closed_form_n2_odd(b1, b3);
            QESSolution se = make_solution({2, Parity::Even, b1, b3}, even.energy, even.beta2);
            QESSolution so = make_solution({2, Parity::Odd, b1, b3}, odd.energy, odd.beta2);
            write_text(args.common.out_dir, "figure4.csv",
                       figure_csv({-3.0, {b1, even.beta2, b3}},
                                  {{"psi2_even", WavefunctionSpec::from_solution(se, b1, b3)},
                                   {"psi2_odd", WavefunctionSpec::from_solution(so, b1, b3)}},
                                  args.grid));
            break;
        }
        case 5: {
            // Zero-energy even-parity branch, smaller matching root per sector.
            const double b1 = 0.5;
            std::string body;
            std::vector<std::pair<int, WavefunctionSpec>> specs;
            for (int n : {1, 3, 4, 6}) {
                auto sols = czero_solutions(n, b1, Parity::Even);
                if (sols.empty()) continue;
                const QESSolution& sol = sols.front();
                specs.emplace_back(
                    n, WavefunctionSpec::from_solution(sol, b1,
                                                       sol.beta2 * sol.beta2 / (2.0 * b1)));
            }
            std::string head = "y";
            for (auto& [n, wf] : specs) {
                normalize_arctan(wf, 10000);
                head += fmt::format(",v_n{},psi_n{}", n, n);
            }
            body = head + "\n";
            const double half_pi = std::asin(1.0);
            for (int i = 0; i < args.grid; ++i) {
                const double y = -half_pi + (2.0 * half_pi) * i / (args.grid - 1);
                const double x = std::tan(y);
                body += format_double(y);
                for (const auto& [n, wf] : specs) {
                    const PotentialParams pot{alpha_for(n), wf.beta};
                    body += "," + format_double(eval_potential(pot, x));
                    body += "," + format_double(eval_psi(wf, x));
                }
                body += "\n";
            }
            write_text(args.common.out_dir, "figure5.csv", body);
            break;
        }
        default:
            std::cerr << "unknown figure id (1..5)\n";
            return kExitUsage;
    }
    std::cout << "figure " << args.id << " data written to " << args.common.out_dir << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// scan

struct ScanArgs {
    int n = 1;
    std::string parity = "even";
    double beta1_min = 0.3, beta1_max = 1.0;
    int steps = 8;
    double beta3 = 0.1;
    double scale_t = 0.0;  // 0: no scaling companion column
    CommonOpts common;
};

int run_scan(const ScanArgs& args) {
    using namespace qaos;
    if (args.steps < 1 || !(args.beta1_max >= args.beta1_min)) {
        std::cerr << "empty scan range\n";
        return kExitUsage;
    }
    const Parity parity = parity_from_name(args.parity);
    std::string csv = "beta1,beta3,energy,beta2,casimir,scale_defect,status\n";
    nlohmann::json rows = nlohmann::json::array();
    int succeeded = 0;
    for (int i = 0; i < args.steps; ++i) {
        const double b1 = args.steps > 1
                              ? args.beta1_min + (args.beta1_max - args.beta1_min) * i /
                                                     (args.steps - 1)
                              : args.beta1_min;
        try {
            const QESProblem prob{args.n, parity, b1, args.beta3};
            const SolveResult res = solve_qes(prob);
            if (res.solutions.empty()) {
                csv += fmt::format("{},{},,,,,no_solution\n", format_double(b1),
                                   format_double(args.beta3));
                rows.push_back({{"beta1", b1}, {"status", "no_solution"}});
                continue;
            }
            double defect = std::numeric_limits<double>::quiet_NaN();
            if (args.scale_t > 0.0) defect = scaled_energy_check(prob, args.scale_t);
            for (const QESSolution& sol : res.solutions) {
                csv += fmt::format("{},{},{},{},{},{},ok\n", format_double(b1),
                                   format_double(args.beta3), format_double(sol.energy),
                                   format_double(sol.beta2), format_double(sol.casimir),
                                   std::isnan(defect) ? "" : format_double(defect));
                rows.push_back({{"beta1", b1},
                                {"beta3", args.beta3},
                                {"energy", sol.energy},
                                {"beta2", sol.beta2},
                                {"casimir", sol.casimir},
                                {"status", "ok"}});
            }
            ++succeeded;
        } catch (const std::exception& err) {
            csv += fmt::format("{},{},,,,,error\n", format_double(b1),
                               format_double(args.beta3));
            rows.push_back({{"beta1", b1}, {"status", std::string("error: ") + err.what()}});
        }
    }

    nlohmann::json report;
    report["params"] = base_params("scan", args.common);
    report["params"]["n"] = args.n;
    report["params"]["parity"] = args.parity;
    report["params"]["beta3"] = args.beta3;
    report["params"]["beta1_range"] = {args.beta1_min, args.beta1_max};
    report["params"]["steps"] = args.steps;
    report["solutions"] = rows;
    report["checks"] = {{"rows_succeeded", succeeded}};
    if (!args.common.out_dir.empty()) {
        write_text(args.common.out_dir, "scan.csv", csv);
        if (args.common.format == "json")
            write_text(args.common.out_dir, "scan.json", report.dump(2) + "\n");
    }
    std::cout << fmt::format("scan: {} of {} rows succeeded\n", succeeded, args.steps);
    return succeeded > 0 ? 0 : kExitNoSolution;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quartic-group quasi-exactly-solvable oscillator toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Key-value file mirroring the flags, one [section] per subcommand");

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Analytic levels at (N, parity, beta1, beta3)");
    solve->add_option("--n", solve_args.n, "Polynomial order N")->required();
    solve->add_option("--parity", solve_args.parity, "even | odd | both")
        ->check(CLI::IsMember({"even", "odd", "both"}));
    solve->add_option("--beta1", solve_args.beta1, "Label beta1");
    solve->add_option("--beta3", solve_args.beta3, "Label beta3 (> 0)");
    solve->add_flag("--simultaneous", solve_args.simultaneous,
                    "Use the N=2 shared-beta2 point (sets beta3 from beta1)");
    auto* blo = solve->add_option("--bracket-lo", solve_args.bracket_lo, "beta2 bracket lower end");
    solve->add_option("--bracket-hi", solve_args.bracket_hi, "beta2 bracket upper end")
        ->needs(blo);
    solve->add_option("--samples", solve_args.samples, "beta2 scan samples");
    add_common(solve, solve_args.common);

    OracleArgs oracle_args;
    auto* oracle = app.add_subcommand("oracle", "Finite-difference spectrum cross-check");
    oracle->add_option("--alpha", oracle_args.alpha, "Potential alpha (with --beta2)");
    oracle->add_option("--beta2", oracle_args.beta2, "Label beta2 (with --alpha)");
    oracle->add_option("--n", oracle_args.n, "Solve this N first, then compare");
    oracle->add_option("--parity", oracle_args.parity, "even | odd")
        ->check(CLI::IsMember({"even", "odd"}));
    oracle->add_option("--beta1", oracle_args.beta1, "Label beta1")->required();
    oracle->add_option("--beta3", oracle_args.beta3, "Label beta3 (> 0)")->required();
    oracle->add_option("--grid", oracle_args.grid, "Base grid points (total)");
    oracle->add_option("--levels", oracle_args.levels, "Refinement levels");
    oracle->add_option("--eigen-count", oracle_args.eigen_count, "Levels to compute");
    oracle->add_flag("--box-check", oracle_args.box_check,
                     "Also run the uniform-box mode and report agreement");
    add_common(oracle, oracle_args.common);

    TableArgs table_args;
    auto* table = app.add_subcommand("table1", "Zero-energy beta2/beta1^2 ratio table");
    table->add_option("--beta1", table_args.beta1, "beta1 > 0");
    add_common(table, table_args.common);

    FigureArgs figure_args;
    auto* figure = app.add_subcommand("figure-data", "CSV data behind the survey figures");
    figure->add_option("--id", figure_args.id, "Figure id (1..5)")->required();
    figure->add_option("--grid", figure_args.grid, "Output rows");
    add_common(figure, figure_args.common);

    ScanArgs scan_args;
    auto* scan = app.add_subcommand("scan", "Parameter sweep over beta1");
    scan->add_option("--n", scan_args.n, "Polynomial order N")->required();
    scan->add_option("--parity", scan_args.parity, "even | odd")
        ->check(CLI::IsMember({"even", "odd"}));
    scan->add_option("--beta1-min", scan_args.beta1_min, "Sweep start")->required();
    scan->add_option("--beta1-max", scan_args.beta1_max, "Sweep end")->required();
    scan->add_option("--steps", scan_args.steps, "Sweep points");
    scan->add_option("--beta3", scan_args.beta3, "Label beta3 (> 0)");
    scan->add_option("--scale-t", scan_args.scale_t,
                     "Also verify the scaling law at this dilation factor");
    add_common(scan, scan_args.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (solve->parsed()) {
            solve_args.has_bracket = blo->count() > 0;
            return run_solve(solve_args);
        }
        if (oracle->parsed()) return run_oracle(oracle_args);
        if (table->parsed()) return run_table1(table_args);
        if (figure->parsed()) return run_figure(figure_args);
        if (scan->parsed()) return run_scan(scan_args);
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitNoSolution;
    }
    return kExitUsage;
}
