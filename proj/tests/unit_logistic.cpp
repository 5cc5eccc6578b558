#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "eigencurve/errors.hpp"
#include "eigencurve/logistic.hpp"
#include "support.hpp"

using namespace eigencurve;

namespace {

LogisticProblem ones_problem(double l1, double l2, double g1 = 1.0, double g2 = 1.0, int n = 24) {
    Mesh m = build_mesh(testsupport::unit_domain(n, n));
    LogisticProblem p;
    p.ctx = make_context(m, field_constant(m, 1, 1.0), field_constant(m, 2, 1.0), g1, g2);
    p.l1 = l1;
    p.l2 = l2;
    return p;
}

} // namespace

TEST_CASE("existence decisions around the curve") {
    auto yes = ones_problem(1.0, 1.0);
    CHECK(existence_check(yes)); // F = -1 < 0
    auto no = ones_problem(-1.0, -1.0);
    CHECK_FALSE(existence_check(no)); // F = +1 > 0
    auto edge = ones_problem(0.0, 0.0);
    CHECK(existence_classify(edge) == Existence::indeterminate);
    CHECK_THROWS_AS(existence_check(edge), Indeterminate);
    edge.p1 = 0.9;
    CHECK_THROWS(existence_classify(edge));
}

TEST_CASE("bracket: defining inequalities and discrete sub/supersolution signs") {
    auto prob = ones_problem(1.0, 1.0);
    auto br = bracket(prob);
    CHECK(br.K >= 1.0);
    CHECK(br.eps <= 1.0);
    CHECK(br.eps > 0.0);
    CHECK(br.F == doctest::Approx(-1.0).epsilon(1e-9));

    // residual of the subsolution has the correct sign at every node:
    // A0(eps phi) - lam m (eps phi) + (eps phi)^p = eps phi (F + (eps phi)^{p-1}) < 0
    const auto& ctx = prob.ctx;
    auto A0 = assemble_interface(ctx.mesh, field_constant(ctx.mesh, 1, 0.0),
                                 field_constant(ctx.mesh, 2, 0.0), ctx.gamma1, ctx.gamma2);
    const std::size_t n1 = ctx.mesh.size1();
    std::vector<double> sub(br.phi.size());
    for (std::size_t i = 0; i < sub.size(); ++i) sub[i] = br.eps * br.phi[i];
    auto As = A0.matrix.mul(sub);
    for (std::size_t i = 0; i < sub.size(); ++i) {
        const double lm = i < n1 ? prob.l1 * ctx.m1.values[i] : prob.l2 * ctx.m2.values[i - n1];
        const double p = i < n1 ? prob.p1 : prob.p2;
        const double r = As[i] - lm * sub[i] + std::pow(sub[i], p);
        CHECK(r <= 1e-8);
    }
    // constant K is a supersolution
    std::vector<double> sup(br.phi.size(), br.K);
    auto Ak = A0.matrix.mul(sup);
    for (std::size_t i = 0; i < sup.size(); ++i) {
        const double lm = i < n1 ? prob.l1 * ctx.m1.values[i] : prob.l2 * ctx.m2.values[i - n1];
        const double p = i < n1 ? prob.p1 : prob.p2;
        const double r = Ak[i] - lm * sup[i] + std::pow(sup[i], p);
        CHECK(r >= -1e-8);
    }
    auto bad = ones_problem(-1.0, -1.0);
    CHECK_THROWS_AS(bracket(bad), NotSubcritical);
}

TEST_CASE("solve: the homogeneous constant solution is reproduced") {
    for (double lam : {0.5, 1.0, 2.5}) {
        auto prob = ones_problem(lam, lam, 1.3, 1.3);
        auto sol = solve(prob);
        for (double u : sol.u) CHECK(std::abs(u - lam) <= 1e-9);
        CHECK(sol.residual <= prob.tol_nl);
        CHECK(sol.two_sided_gap <= prob.tol_uniq);
        CHECK(sol.monotone_violation <= 1e-10);
        CHECK(sol.ordering_violation <= 1e-10);
    }
}

TEST_CASE("solve: two-sided limits agree on random admissible points") {
    Mesh m = build_mesh(testsupport::unit_domain(20, 20));
    auto m1 = field_from_function(m, 1, [](double x) { return 1.0 + 0.4 * std::sin(3 * x); });
    auto m2 = field_from_function(m, 2, [](double x) { return x - 0.7; });
    auto ctx = make_context(m, m1, m2, 0.9, 1.4);
    std::mt19937_64 rng(63);
    std::uniform_real_distribution<double> l1s(-6.0, 6.0), l2s(-8.0, 8.0);
    int solved = 0;
    for (int t = 0; t < 30 && solved < 6; ++t) {
        LogisticProblem prob;
        prob.ctx = ctx;
        prob.l1 = l1s(rng);
        prob.l2 = l2s(rng);
        prob.p1 = 2.0;
        prob.p2 = 3.0;
        if (existence_classify(prob) != Existence::exists) continue;
        auto sol = solve(prob);
        ++solved;
        CHECK(sol.two_sided_gap <= 1e-8);
        CHECK(sol.residual <= prob.tol_nl);
        for (double u : sol.u) CHECK(u > 0.0);
        CHECK(sol.ordering_violation <= 1e-9);
        // linearized stability consistency at the solution
        CHECK(std::abs(linearized_principal(prob, sol.u)) <= 1e-6);
    }
    CHECK(solved >= 6);
}

TEST_CASE("supercritical side: solve refuses and iterates decay toward zero") {
    auto prob = ones_problem(-0.6, -0.8); // F = min... > 0 region
    REQUIRE(existence_classify(prob) == Existence::not_exists);
    CHECK_THROWS_AS(solve(prob), NotSubcritical);
    auto trail = decay_probe(prob, 2.0, 4000);
    CHECK(trail.back() < 1e-3 * trail.front());
    // monotone decay
    for (std::size_t i = 1; i < trail.size(); ++i) CHECK(trail[i] <= trail[i - 1] + 1e-12);
}

TEST_CASE("existence map flips exactly across the traced curve") {
    auto prob0 = ones_problem(0.0, 0.0);
    const auto& ctx = prob0.ctx;
    // the curve through this configuration: F(l, H(l)) = 0 with H decreasing
    for (double l1 : {-2.0, -0.5, 0.5, 1.2}) {
        if (l1 >= ctx.Lambda1_plus) continue;
        // find H(l1) by bisection in l2
        double lo = -20.0, hi = ctx.Lambda2_plus - 1e-6;
        double flo = eval_F(l1, lo, ctx);
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            ((eval_F(l1, mid, ctx) > 0) == (flo > 0) ? lo : hi) = mid;
        }
        const double H = 0.5 * (lo + hi);
        LogisticProblem above = prob0;
        above.l1 = l1;
        above.l2 = H + 0.3;
        LogisticProblem below = prob0;
        below.l1 = l1;
        below.l2 = H - 0.3;
        CHECK(existence_classify(above) == Existence::exists);     // F < 0 above H
        CHECK(existence_classify(below) == Existence::not_exists); // F > 0 below H
    }
}

TEST_CASE("beyond Lambda1+ a positive solution exists for every lambda2") {
    auto prob = ones_problem(0.0, 0.0);
    prob.l1 = prob.ctx.Lambda1_plus + 0.1;
    for (double l2 = -30.0; l2 <= 30.0; l2 += 6.0) {
        prob.l2 = l2;
        CHECK(existence_classify(prob) == Existence::exists);
    }
}
