#include "eigencurve/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "eigencurve/curve.hpp"
#include "eigencurve/errors.hpp"
#include "eigencurve/logistic.hpp"
#include "eigencurve/runio.hpp"
#include "eigencurve/verify.hpp"

namespace eigencurve {

namespace {

SpectralContext context_from_config(const RunConfig& cfg) {
    Mesh mesh = build_mesh(cfg.domain);
    EigenOptions opts;
    opts.tol_eig = cfg.tol_eig;
    try {
        return make_context(mesh, cfg.m1.build(mesh, 1), cfg.m2.build(mesh, 2), cfg.gamma1,
                            cfg.gamma2, opts);
    } catch (const AllZero& e) {
        // a vanishing weight is a configuration mistake, not a solver failure
        throw ConfigError(e.what());
    }
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

void print_row(std::ostream& out, int n, double value, double residual, double margin,
               std::optional<double> order) {
    char buf[160];
    if (order)
        std::snprintf(buf, sizeof(buf), "  %6d  %20.12e  %9.2e  %9.2e  %6.2f\n", n, value,
                      residual, margin, *order);
    else
        std::snprintf(buf, sizeof(buf), "  %6d  %20.12e  %9.2e  %9.2e       -\n", n, value,
                      residual, margin);
    out << buf;
}

} // namespace

int cmd_eigen(const RunConfig& cfg, std::ostream& out) {
    EigenOptions opts;
    opts.tol_eig = cfg.tol_eig;

    auto solve_at = [&](int n1, int n2) -> EigenResult {
        DomainSpec d = cfg.domain;
        d.n1 = n1;
        d.n2 = n2;
        Mesh mesh = build_mesh(d);
        if (cfg.eigen_mode == "interface") {
            auto c1 = cfg.c1 ? cfg.c1->build(mesh, 1) : field_constant(mesh, 1, 0.0);
            auto c2 = cfg.c2 ? cfg.c2->build(mesh, 2) : field_constant(mesh, 2, 0.0);
            auto op = assemble_interface(mesh, c1, c2, cfg.gamma1, cfg.gamma2);
            if (cfg.dump_matrix && n1 == cfg.domain.n1) {
                std::string dump;
                const auto dense = op.matrix.dense();
                const std::size_t N = op.size();
                for (std::size_t i = 0; i < N; ++i) {
                    for (std::size_t j = 0; j < N; ++j) {
                        if (j) dump += ' ';
                        dump += format_double(dense[i * N + j]);
                    }
                    dump += '\n';
                }
                write_file(out_path(cfg, "matrix.txt"), dump);
            }
            return principal_interface(op, opts);
        }
        const int sub = cfg.eigen_mode == "scalar1" ? 1 : 2;
        const auto& fspec = sub == 1 ? cfg.c1 : cfg.c2;
        auto c = fspec ? fspec->build(mesh, sub) : field_constant(mesh, sub, 0.0);
        ScalarBoundary robin{BoundaryKind::robin_interface, sub == 1 ? cfg.gamma1 : cfg.gamma2};
        ScalarBoundary neumann{BoundaryKind::neumann, 0.0};
        auto op = sub == 1 ? assemble_scalar(c, neumann, robin) : assemble_scalar(c, robin, neumann);
        return principal_scalar(op, opts);
    };

    out << (cfg.eigen_mode == "interface" ? "principal interface eigenvalue Lambda1(c1,c2)\n"
                                          : "principal scalar eigenvalue sigma1\n");
    out << "       n                 value   residual     margin   order\n";
    std::vector<double> values;
    for (int r = 0; r < std::max(1, cfg.eigen_refine); ++r) {
        const int n1 = cfg.domain.n1 << r, n2 = cfg.domain.n2 << r;
        EigenResult res = solve_at(n1, n2);
        values.push_back(res.value);
        std::optional<double> order;
        if (r >= 2) {
            const double e1 = values[r - 1] - values[r - 2];
            const double e2 = values[r] - values[r - 1];
            if (e2 != 0.0 && std::isfinite(e1 / e2)) order = std::log2(std::abs(e1 / e2));
        }
        print_row(out, n1, res.value, res.residual, res.positivity_margin, order);
    }
    return kExitOk;
}

int cmd_curve(const RunConfig& cfg, std::ostream& out) {
    auto ctx = context_from_config(cfg);
    TraceOptions topt;
    topt.n_rays = cfg.rays;
    topt.tol_curve = cfg.tol_curve;
    auto trace = trace_curve(ctx, topt);

    write_trace_csv(trace, out_path(cfg, "trace.csv"));
    write_file(out_path(cfg, "landmarks.txt"), landmarks_text(trace));
    SvgOptions svg;
    svg.width = cfg.svg_width;
    svg.height = cfg.svg_height;
    svg.grid_n1 = cfg.sign_grid_n1;
    svg.grid_n2 = cfg.sign_grid_n2;
    write_file(out_path(cfg, "curve.svg"), curve_svg(trace, ctx, svg));

    out << "case " << to_string(trace.classification.tag) << ", " << trace.points.size()
        << " points, closed = " << (trace.closed ? "yes" : "no") << "\n";
    out << "wrote " << out_path(cfg, "trace.csv") << ", landmarks.txt, curve.svg\n";
    return kExitOk;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    auto ctx = context_from_config(cfg);
    auto cls = classify(ctx);
    out << "case = " << to_string(cls.tag) << "\n";
    out << "int m1 = " << format_double(ctx.int_m1) << " (sign " << cls.int_sign_m1 << ")\n";
    out << "int m2 = " << format_double(ctx.int_m2) << " (sign " << cls.int_sign_m2 << ")\n";
    out << "closed expected = " << (cls.closed_expected ? "yes" : "no") << "\n";

    TraceOptions topt;
    topt.n_rays = cfg.rays;
    topt.tol_curve = cfg.tol_curve;
    auto trace = trace_curve(ctx, topt);

    auto measured = [&](const std::string& name) -> double {
        if (name == "lambda1_max") return trace.lambda1_max;
        if (name == "lambda1_min") return trace.lambda1_min;
        if (name == "lambda2_bar") return trace.lambda2_bar;
        if (name == "lambda2_max") return trace.lambda2_max;
        if (name == "lambda1_at_lambda2_max") return trace.lambda1_at_lambda2_max;
        return std::nan("");
    };
    bool all_agree = true;
    const double zero_band = 1e-4;
    for (const auto& p : cls.predictions) {
        const double v = measured(p.name);
        const int sgn = v > zero_band ? 1 : (v < -zero_band ? -1 : 0);
        const bool agree = sgn == p.expected_sign;
        all_agree = all_agree && agree;
        out << "  " << p.name << ": predicted sign " << p.expected_sign << ", measured "
            << format_double(v) << " -> " << (agree ? "agree" : "DISAGREE") << "\n";
    }
    const bool topo_agree = trace.closed == cls.closed_expected;
    all_agree = all_agree && topo_agree;
    out << "  topology: " << (topo_agree ? "agree" : "DISAGREE") << "\n";
    return all_agree ? kExitOk : kExitVerifyFailed;
}

int cmd_logistic(const RunConfig& cfg, std::ostream& out) {
    auto ctx = context_from_config(cfg);

    struct Cell {
        double l1, l2, F = 0.0, sup_u = std::nan("");
        Existence ex = Existence::indeterminate;
        bool error = false;
        std::vector<double> profile;
    };
    const int N1 = cfg.grid_n1, N2 = cfg.grid_n2;
    std::vector<Cell> cells(static_cast<std::size_t>(N1) * N2);
    parallel_for_index(cells.size(), ParallelMode::openmp, [&](std::size_t idx) {
        const int i = int(idx % N1), j = int(idx / N1);
        Cell c;
        c.l1 = cfg.l1_min + (cfg.l1_max - cfg.l1_min) * i / double(N1 - 1);
        c.l2 = cfg.l2_min + (cfg.l2_max - cfg.l2_min) * j / double(N2 - 1);
        LogisticProblem prob;
        prob.ctx = ctx;
        prob.l1 = c.l1;
        prob.l2 = c.l2;
        prob.p1 = cfg.p1;
        prob.p2 = cfg.p2;
        prob.tol_margin = 10.0 * cfg.tol_curve;
        c.ex = existence_classify(prob, &c.F);
        if (c.ex == Existence::exists) {
            try {
                auto sol = solve(prob);
                double mx = 0.0;
                for (double u : sol.u) mx = std::max(mx, u);
                c.sup_u = mx;
                c.profile = std::move(sol.u);
            } catch (const Error&) {
                c.error = true;
            }
        }
        cells[idx] = std::move(c);
    });

    CsvWriter csv({"lambda1", "lambda2", "F", "exists", "sup_u"});
    int errors = 0, solved = 0;
    for (const auto& c : cells) {
        const char* tag = c.error ? "err"
                          : c.ex == Existence::exists ? "1"
                          : c.ex == Existence::not_exists ? "0"
                                                          : "indet";
        csv.row_mixed({format_double(c.l1), format_double(c.l2), format_double(c.F), tag,
                       format_double(c.sup_u)});
        errors += c.error ? 1 : 0;
        solved += (c.ex == Existence::exists && !c.error) ? 1 : 0;
    }
    csv.write(out_path(cfg, "existence.csv"));

    // evenly spread solution profiles over the solved cells
    int written = 0;
    if (cfg.profile_count > 0 && solved > 0) {
        std::vector<const Cell*> ok;
        for (const auto& c : cells)
            if (!c.profile.empty()) ok.push_back(&c);
        const int count = std::min<int>(cfg.profile_count, int(ok.size()));
        for (int k = 0; k < count; ++k) {
            const Cell& c = *ok[std::size_t(k) * (ok.size() - 1) / std::max(1, count - 1)];
            CsvWriter pcsv({"x", "subdomain", "u"});
            pcsv.comment("lambda1", format_double(c.l1));
            pcsv.comment("lambda2", format_double(c.l2));
            const std::size_t n1 = ctx.mesh.size1();
            for (std::size_t g = 0; g < c.profile.size(); ++g) {
                const int sub = g < n1 ? 1 : 2;
                pcsv.row({ctx.mesh.coord(g), double(sub), c.profile[g]});
            }
            pcsv.write(out_path(cfg, "profile_" + std::to_string(written++) + ".csv"));
        }
    }

    out << "existence map " << N1 << "x" << N2 << ": " << solved << " solved, " << errors
        << " failed cells -> " << out_path(cfg, "existence.csv") << "\n";
    out << written << " solution profiles written\n";
    return errors == 0 ? kExitOk : kExitNumerical;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    auto ctx = context_from_config(cfg);
    auto rep = run_verification(ctx, cfg.seed, cfg.verify_trials);
    for (const auto& c : rep.checks) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-26s %s  margin %+.3e  %s\n", c.name.c_str(),
                      c.pass ? "PASS" : "FAIL", c.margin, c.note.c_str());
        out << buf;
    }
    for (const auto& w : rep.warnings) out << "warning: " << w << "\n";
    out << (rep.all_passed() ? "verification passed" : "verification FAILED") << "\n";
    return rep.all_passed() ? kExitOk : kExitVerifyFailed;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"principal eigenvalue curves for two-membrane interface problems"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string grid;
    int rays = 0;
    long seed = -1;
    double tol_eig = 0.0, tol_curve = 0.0;
    bool dump_matrix = false;

    app.add_option("--config", config_path, "configuration file")->required();
    app.add_option("--out", out_dir, "output directory (overrides [run] out)");
    app.add_option("--rays", rays, "ray count for curve tracing");
    app.add_option("--grid", grid, "logistic grid, e.g. 11x11");
    app.add_option("--seed", seed, "seed for randomized property suites");
    app.add_option("--tol-eig", tol_eig, "eigenvalue residual tolerance");
    app.add_option("--tol-curve", tol_curve, "curve tolerance for |F|");
    app.add_flag("--dump-matrix", dump_matrix, "write the assembled dense matrix");

    auto* c_eigen = app.add_subcommand("eigen", "principal eigenvalues with a refinement table");
    auto* c_curve = app.add_subcommand("curve", "trace the eigenvalue curve, write CSV/SVG");
    auto* c_classify = app.add_subcommand("classify", "case classification vs measured landmarks");
    auto* c_logistic = app.add_subcommand("logistic", "existence map and solution profiles");
    auto* c_verify = app.add_subcommand("verify", "run the property suite");
    for (auto* sub : {c_eigen, c_curve, c_classify, c_logistic, c_verify}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfigError;
    }

    try {
        RunConfig cfg = parse_config_file(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (rays > 0) cfg.rays = rays;
        if (seed >= 0) cfg.seed = static_cast<unsigned long>(seed);
        if (tol_eig > 0) cfg.tol_eig = tol_eig;
        if (tol_curve > 0) cfg.tol_curve = tol_curve;
        if (dump_matrix) cfg.dump_matrix = true;
        if (!grid.empty()) {
            const auto x = grid.find('x');
            if (x == std::string::npos) throw ConfigError("--grid must look like 11x11");
            cfg.grid_n1 = std::stoi(grid.substr(0, x));
            cfg.grid_n2 = std::stoi(grid.substr(x + 1));
        }

        if (c_eigen->parsed()) return cmd_eigen(cfg, std::cout);
        if (c_curve->parsed()) return cmd_curve(cfg, std::cout);
        if (c_classify->parsed()) return cmd_classify(cfg, std::cout);
        if (c_logistic->parsed()) return cmd_logistic(cfg, std::cout);
        if (c_verify->parsed()) return cmd_verify(cfg, std::cout);
        return kExitConfigError;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

} // namespace eigencurve
