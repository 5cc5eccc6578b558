// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances are pinned inline; every expected value is either a
// closed form, an independently computed oracle, or a sign/shape fact.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "eigencurve/curve.hpp"
#include "eigencurve/dense_eig.hpp"
#include "eigencurve/eigensolve.hpp"
#include "eigencurve/errors.hpp"
#include "eigencurve/logistic.hpp"
#include "eigencurve/spectral_maps.hpp"

using namespace eigencurve;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
    void require_le(double value, double bound, const std::string& what) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s: %.3e > %.3e", what.c_str(), value, bound);
        require(value <= bound, buf);
    }
};

Mesh flat_mesh(int n1, int n2) {
    DomainSpec d;
    d.n1 = n1;
    d.n2 = n2;
    return build_mesh(d);
}

double robin_neumann_root(double L, double gamma) {
    auto g = [&](double s) { return std::sqrt(s) * std::tan(std::sqrt(s) * L) - gamma; };
    double lo = 1e-14, hi = (M_PI / (2.0 * L)) * (M_PI / (2.0 * L)) * (1.0 - 1e-12);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

// root of the concave slice l2 -> F(l1, l2) inside (lo, hi); assumes one
// sign change on the bracket
double slice_root(const SpectralContext& ctx, double l1, double lo, double hi) {
    double flo = eval_F(l1, lo, ctx);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((eval_F(l1, mid, ctx) > 0.0) == (flo > 0.0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

int winding(const std::vector<CurvePoint>& poly, double x, double y) {
    int wn = 0;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        const auto &a = poly[i], &b = poly[i + 1];
        const double cross = (b.l1 - a.l1) * (y - a.l2) - (x - a.l1) * (b.l2 - a.l2);
        if (a.l2 <= y) {
            if (b.l2 > y && cross > 0) ++wn;
        } else {
            if (b.l2 <= y && cross < 0) --wn;
        }
    }
    return wn;
}

CoefficientField random_piecewise(const Mesh& mesh, int sub, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    const double a = sub == 1 ? mesh.x0() : mesh.xs();
    const double b = sub == 1 ? mesh.xs() : mesh.xL();
    std::vector<double> bp = {a, a + 0.25 * (b - a), a + 0.5 * (b - a), a + 0.75 * (b - a), b};
    std::vector<double> vs = {val(rng), val(rng), val(rng), val(rng)};
    return field_piecewise(mesh, sub, bp, vs);
}

// ---------------------------------------------------------------- criteria

void criterion_1(Check& c) { // exactness at the origin
    struct Case {
        int n1, n2, k;
    } cases[] = {{48, 48, 0}, {96, 128, 0}, {64, 64, 2}};
    for (const auto& cs : cases) {
        DomainSpec d;
        d.n1 = cs.n1;
        d.n2 = cs.n2;
        d.radial_power = cs.k;
        Mesh mesh = build_mesh(d);
        auto ctx = make_context(mesh, field_constant(mesh, 1, 1.0), field_constant(mesh, 2, 1.0),
                                1.0, 1.7);
        auto r = eval_F_full(0.0, 0.0, ctx);
        c.require_le(std::abs(r.value), 1e-10, "|F(0,0)|");
        c.require(r.positivity_margin >= 0.99, "constant eigenfunction margin >= 0.99");
    }
}

void criterion_2(Check& c) { // shift identity
    Mesh mesh = flat_mesh(48, 48);
    auto ctx = make_context(mesh, field_constant(mesh, 1, 1.0), field_constant(mesh, 2, 1.0),
                            0.9, 2.1);
    for (double l : {-2.0, -1.0, 0.5, 1.0, 3.0})
        c.require_le(std::abs(eval_F(l, l, ctx) + l), 1e-9,
                     "|F(l,l)+l| at l=" + std::to_string(l));
}

void criterion_3(Check& c) { // dense oracle equivalence
    Mesh mesh = flat_mesh(16, 16);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> pot(-5.0, 5.0), gam(0.3, 2.5);
    for (int t = 0; t < 20; ++t) {
        std::vector<double> v1(mesh.size1()), v2(mesh.size2());
        for (auto& x : v1) x = pot(rng);
        for (auto& x : v2) x = pot(rng);
        const double g1 = t % 3 == 0 ? 1.0 : gam(rng);
        const double g2 = t % 3 == 0 ? 1.0 : gam(rng);
        auto op = assemble_interface(mesh, field_from_samples(mesh, 1, v1),
                                     field_from_samples(mesh, 2, v2), g1, g2);
        const double mine = principal_interface(op).value;
        const double oracle = dense_oracle(op).principal_value;
        c.require_le(std::abs(mine - oracle), 1e-8, "trial " + std::to_string(t));
    }
}

void criterion_4(Check& c) { // scalar convergence order
    const double gamma = 1.3, L = 0.5;
    const double exact = robin_neumann_root(L, gamma);
    std::vector<double> errs;
    for (int n : {32, 64, 128, 256}) {
        Mesh mesh = flat_mesh(32, n);
        auto op = assemble_scalar(field_constant(mesh, 2, 0.0),
                                  {BoundaryKind::robin_interface, gamma},
                                  {BoundaryKind::neumann, 0.0});
        errs.push_back(std::abs(principal_scalar(op).value - exact));
    }
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
        const double order = std::log2(errs[i] / errs[i + 1]);
        c.require(order >= 1.8 && order <= 2.2,
                  "order " + std::to_string(order) + " outside 2.0 +- 0.2");
    }
}

void criterion_5(Check& c) { // scalar-minimum and averaged upper bounds
    Mesh mesh = flat_mesh(32, 32);
    std::vector<SpectralContext> ctxs;
    ctxs.push_back(make_context(mesh, field_constant(mesh, 1, 1.0),
                                field_constant(mesh, 2, 1.0), 1.0, 1.5));
    ctxs.push_back(make_context(
        mesh, field_from_function(mesh, 1, [](double x) { return 1.0 + 0.5 * std::sin(5 * x); }),
        field_from_function(mesh, 2, [](double x) { return x - 0.7; }), 0.9, 2.2));
    ctxs.push_back(make_context(mesh, field_piecewise(mesh, 1, {0.0, 0.2, 0.5}, {1.0, -1.0}),
                                field_piecewise(mesh, 2, {0.5, 0.75, 1.0}, {-1.0, 0.8}), 0.8,
                                0.6));
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> ls(-8.0, 8.0);
    for (const auto& ctx : ctxs) {
        ScalarProblem p1 = ctx.problem1(), p2 = ctx.problem2();
        for (int t = 0; t < 50; ++t) {
            const double l1 = ls(rng), l2 = ls(rng);
            const double F = eval_F(l1, l2, ctx);
            const double bound1 = std::min(scalar_mu(l1, p1), scalar_mu(l2, p2));
            c.require(bound1 - F >= -1e-8, "scalar-min bound margin " + std::to_string(bound1 - F));
            const double bound2 = (-l1 * ctx.int_m1 - l2 * ctx.int_m2 +
                                   (ctx.gamma1 + ctx.gamma2) * mesh.sigma_measure) /
                                  (mesh.measure1 + mesh.measure2);
            c.require(bound2 - F >= -1e-8, "averaged bound margin " + std::to_string(bound2 - F));
        }
    }
}

void criterion_6(Check& c) { // concavity + the two-root property
    Mesh mesh = flat_mesh(24, 24);
    auto ctx = make_context(mesh, field_constant(mesh, 1, 1.0),
                            field_piecewise(mesh, 2, {0.5, 0.75, 1.0}, {-1.0, 0.8}), 0.8, 0.6);
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ls(-7.0, 7.0);
    for (int t = 0; t < 100; ++t) {
        const double a1 = ls(rng), a2 = ls(rng), b1 = ls(rng), b2 = ls(rng);
        const double mid = eval_F(0.5 * (a1 + b1), 0.5 * (a2 + b2), ctx);
        const double avg = 0.5 * (eval_F(a1, a2, ctx) + eval_F(b1, b2, ctx));
        c.require(mid >= avg - 1e-9, "midpoint concavity violated by " + std::to_string(avg - mid));
    }
    TraceOptions topt;
    topt.n_rays = 256;
    auto tr = trace_curve(ctx, topt);
    for (int k = 0; k < 12; ++k) {
        const double l1 = tr.lambda1_min + (tr.lambda1_max - tr.lambda1_min) * (k + 0.5) / 12.0;
        int crossings = 0;
        for (std::size_t i = 0; i + 1 < tr.points.size(); ++i) {
            const double a = tr.points[i].l1 - l1, b = tr.points[i + 1].l1 - l1;
            if ((a <= 0 && b > 0) || (a >= 0 && b < 0)) ++crossings;
        }
        c.require(crossings <= 2, "vertical line crossed " + std::to_string(crossings) + " times");
    }
}

void criterion_7(Check& c) { // both weights nonnegative
    Mesh mesh = flat_mesh(64, 64);
    auto ctx = make_context(mesh, field_constant(mesh, 1, 25.0), field_constant(mesh, 2, 1.0),
                            0.2, 0.2);
    TraceOptions topt;
    topt.n_rays = 256;
    auto tr = trace_curve(ctx, topt);
    auto bm = H_maps(tr);
    c.require(!bm.two_branches, "expected a single branch");
    c.require_le(bm.upper_decrease_violation, 1e-9, "H not decreasing");
    // H(0) = 0 within 1e-6
    const double H0 = slice_root(ctx, 0.0, -1.0, std::min(1.0, ctx.Lambda2_plus * 0.9));
    c.require_le(std::abs(H0), 1e-6, "|H(0)|");
    // asymptote: H(-50) within 5e-3 of Lambda2+
    const double H50 = slice_root(ctx, -50.0, 0.0, ctx.Lambda2_plus * (1.0 - 1e-12));
    c.require_le(std::abs(H50 - ctx.Lambda2_plus), 5e-3, "|H(-50) - Lambda2+|");
    // beyond Lambda1+: F < 0 for every sampled lambda2
    const double l1 = ctx.Lambda1_plus + 0.1;
    for (int k = 0; k <= 32; ++k) {
        const double l2 = -20.0 + k * (ctx.Lambda2_plus + 25.0) / 32.0;
        c.require(eval_F(l1, l2, ctx) < 0.0, "F >= 0 right of Lambda1+");
    }
}

void criterion_8(Check& c) { // m1 nonnegative, m2 sign-changing
    Mesh mesh = flat_mesh(64, 64);
    auto m1 = field_constant(mesh, 1, 25.0);
    TraceOptions topt;
    topt.n_rays = 256;

    auto check_limits = [&](const SpectralContext& ctx, const std::string& name) {
        const double Hp = slice_root(ctx, -100.0, 0.0, ctx.Lambda2_plus * (1.0 - 1e-12));
        const double Hm = slice_root(ctx, -100.0, ctx.Lambda2_minus * (1.0 - 1e-12), 0.0);
        c.require_le(std::abs(Hp - ctx.Lambda2_plus), 1e-2, name + ": |H+(-100) - Lambda2+|");
        c.require_le(std::abs(Hm - ctx.Lambda2_minus), 1e-2, name + ": |H-(-100) - Lambda2-|");
    };

    { // int m2 < 0: lambda1_max > 0 and lambda2_bar > 0
        auto ctx = make_context(mesh, m1, field_piecewise(mesh, 2, {0.5, 0.72, 1.0}, {-1.0, 0.7}),
                                0.15, 0.15);
        auto tr = trace_curve(ctx, topt);
        c.require(tr.lambda1_max > 0.0, "neg-int: lambda1_max not positive");
        c.require(tr.lambda2_bar > 0.0, "neg-int: lambda2_bar not positive");
        check_limits(ctx, "neg-int");
    }
    { // int m2 > 0: lambda1_max > 0 and lambda2_bar < 0
        auto ctx = make_context(mesh, m1, field_piecewise(mesh, 2, {0.5, 0.72, 1.0}, {1.0, -0.7}),
                                0.15, 0.15);
        auto tr = trace_curve(ctx, topt);
        c.require(tr.lambda1_max > 0.0, "pos-int: lambda1_max not positive");
        c.require(tr.lambda2_bar < 0.0, "pos-int: lambda2_bar not negative");
        check_limits(ctx, "pos-int");
    }
    { // int m2 = 0 (constructed exactly): both extremes pinned at the origin
        auto m2 = field_from_function(mesh, 2, [](double x) { return 6.0 * (x - 0.75); });
        auto ctx = make_context(mesh, m1, m2, 0.15, 0.15);
        c.require(std::abs(ctx.int_m2) <= 1e-10, "constructed integral not zero");
        auto tr = trace_curve(ctx, topt);
        c.require_le(std::abs(tr.lambda1_max), 1e-4, "zero-int: |lambda1_max|");
        c.require_le(std::abs(tr.lambda2_bar), 1e-4, "zero-int: |lambda2_bar|");
        check_limits(ctx, "zero-int");
    }
}

void criterion_9(Check& c) { // both weights sign-changing
    Mesh mesh = flat_mesh(48, 48);
    auto ctx = make_context(mesh, field_piecewise(mesh, 1, {0.0, 0.2, 0.5}, {1.0, -1.0}),
                            field_piecewise(mesh, 2, {0.5, 0.75, 1.0}, {-1.0, 0.8}), 0.8, 0.6);
    c.require(ctx.integral_sign(ctx.int_m1) < 0 && ctx.integral_sign(ctx.int_m2) < 0,
              "config must have both integrals negative");
    TraceOptions topt;
    topt.n_rays = 512;
    auto tr = trace_curve(ctx, topt);
    c.require(tr.closed, "trace not closed");
    const auto& first = tr.points.front();
    const auto& last = tr.points.back();
    c.require_le(std::hypot(first.l1 - last.l1, first.l2 - last.l2), 1e-9,
                 "first/last arc distance");
    double origin_dist = 1e300;
    for (const auto& p : tr.points) origin_dist = std::min(origin_dist, std::hypot(p.l1, p.l2));
    c.require_le(origin_dist, 1e-6, "(0,0) distance to the polyline");
    c.require(tr.lambda1_min < 0.0 && tr.lambda1_max > 0.0, "lambda1 extremes must straddle 0");

    double cx = 0.0, cy = 0.0;
    for (const auto& p : tr.points) {
        cx += p.l1;
        cy += p.l2;
    }
    cx /= double(tr.points.size());
    cy /= double(tr.points.size());
    c.require(winding(tr.points, cx, cy) != 0, "centroid not interior");
    c.require(eval_F(cx, cy, ctx) > 0.0, "interior sample has F <= 0");
    const double ex = tr.lambda1_max + 1.0;
    c.require(winding(tr.points, ex, cy) == 0, "exterior sample not exterior");
    c.require(eval_F(ex, cy, ctx) < 0.0, "exterior sample has F >= 0");
}

void criterion_10(Check& c) { // derivative-sign formulas
    Mesh mesh = flat_mesh(32, 32);
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> gam(0.3, 2.0), mus(-4.0, 4.0);
    const double step = 1e-4, dead_band = 1e-3;
    int done = 0;
    while (done < 20) {
        auto m1 = random_piecewise(mesh, 1, rng);
        auto m2 = random_piecewise(mesh, 2, rng);
        if (classify_sign(m1) == SignClass::zero || classify_sign(m2) == SignClass::zero) continue;
        const double g1 = gam(rng), g2 = gam(rng);
        const double mu = mus(rng);
        auto ctx = make_context(mesh, m1, m2, g1, g2);
        const double expect_g = -ctx.int_m2;
        const double expect_f = -(g2 * ctx.int_m1 + mu * g1 * ctx.int_m2);
        if (std::abs(expect_g) < dead_band || std::abs(expect_f) < dead_band) continue;
        const double gp = (eval_g(step, ctx) - eval_g(-step, ctx)) / (2 * step);
        const double fp = (eval_f_mu(mu, step, ctx) - eval_f_mu(mu, -step, ctx)) / (2 * step);
        c.require(gp * expect_g > 0.0, "sign g'(0) mismatch at combo " + std::to_string(done));
        c.require(fp * expect_f > 0.0, "sign f_mu'(0) mismatch at combo " + std::to_string(done));
        ++done;
    }
}

void criterion_11(Check& c) { // degenerate limit
    Mesh mesh = flat_mesh(40, 40);
    auto m2 = field_from_function(mesh, 2, [](double x) { return (x >= 0.6 && x <= 0.8) ? 0.0 : 1.0; });
    auto ctx = make_context(mesh, field_constant(mesh, 1, 1.0), m2, 0.4, 0.4);
    const double a_star = 0.5;
    const double limit = degenerate_limit(ctx, a_star);
    double prev = 1e300;
    double final_gap = 1e300;
    for (double b : {-1e2, -1e3, -1e4}) {
        const double gap = std::abs(eval_F(a_star, b, ctx) - limit);
        c.require(gap < prev, "distances to the limit must decrease");
        prev = gap;
        final_gap = gap;
    }
    c.require_le(final_gap, 5e-3, "final gap at b = -1e4");
}

void criterion_12(Check& c) { // logistic criterion on grids straddling the curve
    Mesh mesh = flat_mesh(24, 24);
    struct Regime {
        SpectralContext ctx;
        double a0, a1, b0, b1;
        const char* name;
    };
    std::vector<Regime> regimes;
    regimes.push_back({make_context(mesh, field_constant(mesh, 1, 1.0),
                                    field_constant(mesh, 2, 1.0), 1.0, 1.5),
                       -2, 2, -3, 3, "both_nonneg"});
    regimes.push_back({make_context(mesh, field_constant(mesh, 1, 1.0),
                                    field_piecewise(mesh, 2, {0.5, 0.75, 1.0}, {-1.0, 0.8}), 0.8,
                                    0.6),
                       -4, 2, -14, 14, "m2_sign"});
    regimes.push_back({make_context(mesh, field_piecewise(mesh, 1, {0.0, 0.2, 0.5}, {1.0, -1.0}),
                                    field_piecewise(mesh, 2, {0.5, 0.75, 1.0}, {-1.0, 0.8}), 0.8,
                                    0.6),
                       -4, 12, -6, 10, "both_sign"});

    for (const auto& reg : regimes) {
        for (int i = 0; i < 11; ++i) {
            for (int j = 0; j < 11; ++j) {
                LogisticProblem prob;
                prob.ctx = reg.ctx;
                prob.l1 = reg.a0 + (reg.a1 - reg.a0) * i / 10.0;
                prob.l2 = reg.b0 + (reg.b1 - reg.b0) * j / 10.0;
                double F = 0.0;
                const Existence ex = existence_classify(prob, &F);
                if (ex == Existence::exists) {
                    auto sol = solve(prob);
                    double umin = 1e300;
                    for (double u : sol.u) umin = std::min(umin, u);
                    c.require(umin > 0.0, std::string(reg.name) + ": solution not positive");
                    c.require_le(sol.two_sided_gap, 1e-8,
                                 std::string(reg.name) + ": two-sided gap");
                    c.require_le(sol.residual, 1e-9, std::string(reg.name) + ": residual");
                } else if (ex == Existence::not_exists) {
                    bool refused = false;
                    try {
                        (void)solve(prob);
                    } catch (const NotSubcritical&) {
                        refused = true;
                    }
                    c.require(refused, std::string(reg.name) + ": solve accepted F > 0");
                    auto trail = decay_probe(prob, 3.0, 120000, 3.0e-3);
                    c.require(trail.back() <= 1e-3 * trail.front(),
                              std::string(reg.name) + ": iterates did not decay (F=" +
                                  std::to_string(F) + ")");
                }
            }
        }
    }
    // exact constant solution in the homogeneous case
    LogisticProblem prob;
    prob.ctx = make_context(mesh, field_constant(mesh, 1, 1.0), field_constant(mesh, 2, 1.0),
                            1.3, 1.3);
    prob.l1 = prob.l2 = 2.0;
    auto sol = solve(prob);
    double worst = 0.0;
    for (double u : sol.u) worst = std::max(worst, std::abs(u - 2.0));
    c.require_le(worst, 1e-9, "constant solution error");
}

struct Criterion {
    int id;
    const char* title;
    std::function<void(Check&)> run;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "exactness at the origin", criterion_1},
        {2, "diagonal shift identity", criterion_2},
        {3, "dense-oracle equivalence", criterion_3},
        {4, "scalar convergence order 2", criterion_4},
        {5, "eigenvalue upper bounds", criterion_5},
        {6, "concavity and two-root property", criterion_6},
        {7, "both-nonneg regime shape", criterion_7},
        {8, "m2 sign-changing regime shape", criterion_8},
        {9, "closed-curve regime", criterion_9},
        {10, "derivative-sign formulas", criterion_10},
        {11, "degenerate limit", criterion_11},
        {12, "logistic existence criterion", criterion_12},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (const auto& cr : criteria) {
        if (only && cr.id != only) continue;
        Check check;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            cr.run(check);
        } catch (const std::exception& e) {
            check.ok = false;
            check.detail = std::string("exception: ") + e.what();
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %2d (%5.1fs): %s%s%s\n", check.ok ? "PASS" : "FAIL", cr.id,
                    dt, cr.title, check.ok ? "" : " -- ", check.detail.c_str());
        std::fflush(stdout);
        failures += check.ok ? 0 : 1;
    }
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all criteria passed\n");
    return failures == 0 ? 0 : 1;
}
