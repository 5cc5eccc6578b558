// Benchmark of the parallel sweep kernels against the serial reference:
// the curve ray sweep and an existence-map grid sweep.
#include <chrono>
#include <cstdio>
#include <string>

#include "eigencurve/curve.hpp"
#include "eigencurve/logistic.hpp"
#include "eigencurve/parallel.hpp"

using namespace eigencurve;

namespace {

template <typename F>
double time_once(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    int n = 48, rays = 512, grid = 17;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string key = argv[i];
        const int v = std::atoi(argv[i + 1]);
        if (key == "--n") n = v;
        else if (key == "--rays") rays = v;
        else if (key == "--grid") grid = v;
    }
    DomainSpec d;
    d.n1 = d.n2 = n;
    Mesh mesh = build_mesh(d);
    auto m1 = field_piecewise(mesh, 1, {0.0, 0.2, 0.5}, {1.0, -1.0});
    auto m2 = field_piecewise(mesh, 2, {0.5, 0.75, 1.0}, {-1.0, 0.8});
    auto ctx = make_context(mesh, m1, m2, 0.8, 0.6);

    std::printf("threads available: %d\n", hardware_threads());
    std::printf("%-28s %10s %10s %8s\n", "kernel", "serial[s]", "openmp[s]", "speedup");

    TraceOptions topt;
    topt.n_rays = rays;
    EigencurveTrace ts, tp;
    topt.parallel = ParallelMode::serial;
    const double t_ser = time_once([&] { ts = trace_curve(ctx, topt); });
    topt.parallel = ParallelMode::openmp;
    const double t_par = time_once([&] { tp = trace_curve(ctx, topt); });
    bool same = ts.points.size() == tp.points.size();
    if (same)
        for (std::size_t i = 0; i < ts.points.size(); ++i)
            same = same && ts.points[i].l1 == tp.points[i].l1 && ts.points[i].l2 == tp.points[i].l2;
    std::printf("%-28s %10.3f %10.3f %8.2f  (results %s)\n",
                ("ray sweep, " + std::to_string(rays) + " rays").c_str(), t_ser, t_par,
                t_ser / t_par, same ? "identical" : "DIFFER");

    auto grid_sweep = [&](ParallelMode mode) {
        std::vector<double> F(static_cast<std::size_t>(grid) * grid);
        parallel_for_index(F.size(), mode, [&](std::size_t idx) {
            const int i = int(idx % grid), j = int(idx / grid);
            const double l1 = -4.0 + 8.0 * i / (grid - 1);
            const double l2 = -6.0 + 12.0 * j / (grid - 1);
            F[idx] = eval_F(l1, l2, ctx);
        });
        return F;
    };
    std::vector<double> gs, gp;
    const double g_ser = time_once([&] { gs = grid_sweep(ParallelMode::serial); });
    const double g_par = time_once([&] { gp = grid_sweep(ParallelMode::openmp); });
    std::printf("%-28s %10.3f %10.3f %8.2f  (results %s)\n",
                ("F grid, " + std::to_string(grid) + "x" + std::to_string(grid)).c_str(), g_ser,
                g_par, g_ser / g_par, gs == gp ? "identical" : "DIFFER");
    return 0;
}
