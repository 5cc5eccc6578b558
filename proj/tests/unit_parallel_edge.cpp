#include <doctest.h>

#include <atomic>
#include <cmath>
#include <fstream>

#include "eigencurve/cli.hpp"
#include "eigencurve/curve.hpp"
#include "eigencurve/dense_eig.hpp"
#include "eigencurve/errors.hpp"
#include "eigencurve/parallel.hpp"
#include "support.hpp"

using namespace eigencurve;

TEST_CASE("parallel_for_index: slot writes match the serial reference") {
    std::vector<double> a(500), b(500);
    parallel_for_index(a.size(), ParallelMode::serial,
                       [&](std::size_t i) { a[i] = std::sin(0.1 * double(i)); });
    parallel_for_index(b.size(), ParallelMode::openmp,
                       [&](std::size_t i) { b[i] = std::sin(0.1 * double(i)); });
    CHECK(a == b);
}

TEST_CASE("parallel_for_index: exceptions propagate out of the loop") {
    auto boom = [&](ParallelMode mode) {
        parallel_for_index(64, mode, [&](std::size_t i) {
            if (i == 37) throw Error("worker failure");
        });
    };
    CHECK_THROWS_AS(boom(ParallelMode::serial), Error);
    CHECK_THROWS_AS(boom(ParallelMode::openmp), Error);
}

TEST_CASE("dense oracle rejects spectra with no positive eigenvector") {
    // pure rotation block: complex pair only
    Tridiag A(2);
    A.diag = {1.0, 1.0};
    A.lower = {0.8};
    A.upper = {-0.8};
    CHECK_THROWS_AS(dense_oracle(A), NoPositivityCertificate);
}

TEST_CASE("scalar_roots: Neumann-Neumann with a zero-integral weight is the tangent case") {
    Mesh m = build_mesh(testsupport::unit_domain(32, 32));
    ScalarProblem p{field_from_function(m, 2, [](double x) { return x - 0.75; }),
                    {BoundaryKind::neumann, 0.0},
                    {BoundaryKind::neumann, 0.0}};
    auto r = scalar_roots(p);
    CHECK(r.kind == ScalarRoots::Kind::double_root);
    // the tangency location is ill-conditioned (mu is flat to second order),
    // so only its rough position and the near-zero maximum are meaningful
    CHECK(std::abs(r.lambda_plus) <= 1e-3);
    CHECK(std::abs(r.mu_max) <= 1e-6);
}

TEST_CASE("root_on_ray statuses in the both-nonneg configuration") {
    Mesh m = build_mesh(testsupport::unit_domain(24, 24));
    auto ctx = make_context(m, field_constant(m, 1, 1.0), field_constant(m, 2, 1.0), 1.0, 1.5);
    // anti-diagonal: lambda1 = -lambda2 has a root
    auto up = root_on_ray(3.0 * M_PI / 4.0, ctx);
    CHECK(up.status == RayRoot::Status::root);
    CHECK(up.r > 0.0);
    CHECK(up.f_abs <= 1e-6);
    // diagonal into the third quadrant: F grows positive, no root up to the cap
    auto diag = root_on_ray(5.0 * M_PI / 4.0, ctx);
    CHECK(diag.status == RayRoot::Status::unbounded);
    // diagonal into the first quadrant: F immediately negative
    auto neg = root_on_ray(M_PI / 4.0, ctx);
    CHECK(neg.status == RayRoot::Status::no_root);
    // tangent direction (1, mu*)
    REQUIRE(ctx.mu_star_value.has_value());
    auto tan = root_on_ray(std::atan2(*ctx.mu_star_value, 1.0), ctx);
    CHECK(tan.status == RayRoot::Status::tangent);
}

TEST_CASE("cotaraiz: F stays negative right of Lambda1+") {
    Mesh m = build_mesh(testsupport::unit_domain(24, 24));
    auto ctx = make_context(m, field_constant(m, 1, 1.0),
                            field_piecewise(m, 2, {0.5, 0.75, 1.0}, {-1.0, 0.8}), 0.8, 0.6);
    REQUIRE(std::isfinite(ctx.Lambda1_plus));
    for (double l2 = -12.0; l2 <= 12.0; l2 += 3.0)
        CHECK(eval_F(ctx.Lambda1_plus + 1e-3, l2, ctx) < 0.0);
}

TEST_CASE("h2 limit at large |mu| approaches the lambda2-axis crossing") {
    Mesh m = build_mesh(testsupport::unit_domain(24, 24));
    auto ctx = make_context(m, field_constant(m, 1, 1.0),
                            field_piecewise(m, 2, {0.5, 0.75, 1.0}, {-1.0, 0.8}), 0.8, 0.6);
    TraceOptions topt;
    topt.n_rays = 128;
    auto tr = trace_curve(ctx, topt);
    REQUIRE(tr.lambda2_star.has_value());
    double prev = 1e300;
    for (double mu : {60.0, 400.0, 2500.0}) {
        auto h2 = h2_of_mu(mu, ctx);
        REQUIRE(h2.has_value());
        const double gap = std::abs(*h2 - *tr.lambda2_star);
        CHECK(gap < prev); // monotone approach to the axis crossing
        prev = gap;
    }
    CHECK(prev < 0.05 * (1.0 + std::abs(*tr.lambda2_star)));
    auto h2neg = h2_of_mu(-2500.0, ctx);
    REQUIRE(h2neg.has_value());
    CHECK(std::abs(*h2neg - *tr.lambda2_star) < 0.05 * (1.0 + std::abs(*tr.lambda2_star)));
}

TEST_CASE("H_maps rejects traces that are too thin") {
    EigencurveTrace tr;
    tr.points.resize(2);
    CHECK_THROWS_AS(H_maps(tr), BranchSplitFailed);
}

TEST_CASE("cli: an identically zero weight is reported as a config error") {
    std::ofstream cfg("out/zero_weight.cfg");
    cfg << "[m1]\nkind = constant\nvalue = 0\n[m2]\nkind = constant\nvalue = 1\n";
    cfg.close();
    std::vector<const char*> argv = {"eigencurve", "curve", "--config", "out/zero_weight.cfg"};
    CHECK(run_cli(int(argv.size()), argv.data()) == kExitConfigError);
}
