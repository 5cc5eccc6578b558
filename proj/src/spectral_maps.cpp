#include "eigencurve/spectral_maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eigencurve/errors.hpp"

namespace eigencurve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CoefficientField scaled(const CoefficientField& f, double factor) {
    CoefficientField g = f;
    for (double& v : g.values) v *= factor;
    return g;
}

// Locates a bracket [a,b] with mu(a) > 0 > mu(b) (or the mirrored order) by
// geometric expansion from 0 in the given direction, then bisects.
double bisect_root(const std::function<double(double)>& mu, double a, double fa, double b,
                   double f_tol, double width_tol_rel) {
    // orientation-free bisection on the sign change between a and b
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = mu(mid);
        if ((fm > 0.0) == (fa > 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
        if (std::abs(fm) <= f_tol && std::abs(b - a) <= width_tol_rel * (1.0 + std::abs(mid)))
            return mid;
    }
    return 0.5 * (a + b);
}

// Golden-section maximization of a concave function given a bracket
// a < b < c with f(b) >= max(f(a), f(c)).
double golden_max(const std::function<double(double)>& f, double a, double b, double c,
                  double x_tol_rel) {
    const double phi = 0.5 * (3.0 - std::sqrt(5.0)); // ~0.382
    double f1 = f(b);
    for (int it = 0; it < 120; ++it) {
        if (c - b > b - a) {
            const double x2 = b + phi * (c - b);
            const double f2 = f(x2);
            if (f2 > f1) {
                a = b;
                b = x2;
                f1 = f2;
            } else {
                c = x2;
            }
        } else {
            const double x2 = b - phi * (b - a);
            const double f2 = f(x2);
            if (f2 > f1) {
                c = b;
                b = x2;
                f1 = f2;
            } else {
                a = x2;
            }
        }
        if (c - a <= x_tol_rel * (1.0 + std::abs(b))) break;
    }
    return b;
}

} // namespace

double scalar_mu(double lambda, const ScalarProblem& prob, const EigenOptions& opts) {
    auto op = assemble_scalar_on(prob.c.node_coords, prob.c.h, prob.c.radial_power,
                                 scaled(prob.c, -lambda).values, prob.left, prob.right);
    return principal_scalar(op, opts).value;
}

ScalarRoots scalar_roots(const ScalarProblem& prob, const EigenOptions& opts) {
    const SignClass sc = classify_sign(prob.c, true);
    auto mu = [&](double l) { return scalar_mu(l, prob, opts); };
    const double f_tol = 1e-8;
    const double w_tol = 1e-8;

    ScalarRoots out;
    if (sc == SignClass::nonpos_nontrivial) {
        // reflection lambda -> -lambda with -c
        ScalarProblem refl = prob;
        for (double& v : refl.c.values) v = -v;
        ScalarRoots r = scalar_roots(refl, opts);
        out.kind = r.kind;
        out.lambda_minus = -r.lambda_plus;
        out.lambda_plus = -r.lambda_minus;
        out.lambda_max = -r.lambda_max;
        out.mu_max = r.mu_max;
        if (r.kind == ScalarRoots::Kind::double_root) {
            out.lambda_minus = out.lambda_plus = -r.lambda_plus;
        }
        return out;
    }

    if (sc == SignClass::nonneg_nontrivial) {
        // mu is decreasing; the unique root sits on the side where mu changes sign
        out.kind = ScalarRoots::Kind::single;
        out.lambda_minus = -kInf;
        const double mu0 = mu(0.0);
        double a = 0.0, fa = mu0, b, fb;
        double step = 1.0;
        const double dir = mu0 > 0.0 ? 1.0 : -1.0;
        for (int it = 0;; ++it) {
            if (it > 60) throw NoConvergence("scalar_roots: no sign change found for mu");
            b = dir * step;
            fb = mu(b);
            if ((fb > 0.0) != (fa > 0.0)) break;
            a = b;
            fa = fb;
            step *= 2.0;
        }
        out.lambda_plus = bisect_root(mu, a, fa, b, f_tol, w_tol);
        return out;
    }

    // sign-changing weight: concave mu with mu -> -inf both ways.
    // bracket the maximum: expand until both ends are below some interior value
    double span = 1.0;
    double best_x = 0.0, best_f = mu(0.0);
    double la, lc, fa, fc;
    for (int it = 0;; ++it) {
        if (it > 60) throw NoConvergence("scalar_roots: cannot bracket the maximum of mu");
        la = -span;
        lc = span;
        fa = mu(la);
        fc = mu(lc);
        if (fa > best_f) {
            best_f = fa;
            best_x = la;
        }
        if (fc > best_f) {
            best_f = fc;
            best_x = lc;
        }
        if (best_f > fa && best_f > fc && std::abs(best_x) < span) break;
        span *= 2.0;
    }
    const double l0 = golden_max(mu, la, best_x, lc, 1e-6);
    const double mu0 = mu(l0);
    out.lambda_max = l0;
    out.mu_max = mu0;
    if (mu0 < -1e-6) {
        out.kind = ScalarRoots::Kind::no_roots;
        return out;
    }
    if (mu0 <= 1e-6) {
        out.kind = ScalarRoots::Kind::double_root;
        out.lambda_minus = out.lambda_plus = l0;
        return out;
    }
    out.kind = ScalarRoots::Kind::two_roots;
    // right root
    {
        double a = l0, fa2 = mu0, b = l0 + span, fb;
        while ((fb = mu(b)) > 0.0) {
            a = b;
            fa2 = fb;
            b += (b - l0);
        }
        out.lambda_plus = bisect_root(mu, a, fa2, b, f_tol, w_tol);
    }
    // left root
    {
        double a = l0, fa2 = mu0, b = l0 - span, fb;
        while ((fb = mu(b)) > 0.0) {
            a = b;
            fa2 = fb;
            b -= (l0 - b);
        }
        out.lambda_minus = bisect_root(mu, a, fa2, b, f_tol, w_tol);
    }
    return out;
}

ScalarProblem SpectralContext::problem1() const {
    return {m1, {BoundaryKind::neumann, 0.0}, {BoundaryKind::robin_interface, gamma1}};
}

ScalarProblem SpectralContext::problem2() const {
    return {m2, {BoundaryKind::robin_interface, gamma2}, {BoundaryKind::neumann, 0.0}};
}

int SpectralContext::integral_sign(double integral) const {
    const double tau = 1e-10;
    if (integral > tau) return 1;
    if (integral < -tau) return -1;
    return 0;
}

SpectralContext make_context(const Mesh& mesh, const CoefficientField& m1,
                             const CoefficientField& m2, double gamma1, double gamma2,
                             const EigenOptions& opts) {
    if (!(gamma1 > 0.0) || !(gamma2 > 0.0)) throw InvalidCoupling("gammas must be positive");
    SpectralContext ctx;
    ctx.mesh = mesh;
    ctx.m1 = m1;
    ctx.m2 = m2;
    ctx.gamma1 = gamma1;
    ctx.gamma2 = gamma2;
    ctx.eig_opts = opts;
    ctx.sign1 = classify_sign(m1, true);
    ctx.sign2 = classify_sign(m2, true);
    ctx.int_m1 = integrate(m1);
    ctx.int_m2 = integrate(m2);

    auto roots1 = scalar_roots(ctx.problem1(), opts);
    auto roots2 = scalar_roots(ctx.problem2(), opts);
    if (roots1.kind == ScalarRoots::Kind::single) {
        ctx.Lambda1_minus = ctx.sign1 == SignClass::nonneg_nontrivial ? -kInf : roots1.lambda_minus;
        ctx.Lambda1_plus = ctx.sign1 == SignClass::nonneg_nontrivial ? roots1.lambda_plus : kInf;
    } else if (roots1.kind == ScalarRoots::Kind::no_roots) {
        throw InconsistentCase("mu1 has no zeros although mu1(0) > 0 should hold");
    } else {
        ctx.Lambda1_minus = roots1.lambda_minus;
        ctx.Lambda1_plus = roots1.lambda_plus;
    }
    if (roots2.kind == ScalarRoots::Kind::single) {
        ctx.Lambda2_minus = ctx.sign2 == SignClass::nonneg_nontrivial ? -kInf : roots2.lambda_minus;
        ctx.Lambda2_plus = ctx.sign2 == SignClass::nonneg_nontrivial ? roots2.lambda_plus : kInf;
    } else if (roots2.kind == ScalarRoots::Kind::no_roots) {
        throw InconsistentCase("mu2 has no zeros although mu2(0) > 0 should hold");
    } else {
        ctx.Lambda2_minus = roots2.lambda_minus;
        ctx.Lambda2_plus = roots2.lambda_plus;
    }

    if (ctx.integral_sign(ctx.int_m2) != 0)
        ctx.mu_star_value = -(gamma2 * ctx.int_m1) / (gamma1 * ctx.int_m2);

    if (ctx.sign2 == SignClass::nonneg_nontrivial) {
        const auto zs = zero_set(ctx.m2);
        bool has_interior = false;
        for (const auto& iv : zs.intervals) has_interior = has_interior || iv.interior;
        if (has_interior) {
            const auto& iv = zs.largest_interior();
            if (iv.last_node - iv.first_node >= 2) {
                const std::vector<double> coords(ctx.m2.node_coords.begin() + iv.first_node,
                                                 ctx.m2.node_coords.begin() + iv.last_node + 1);
                auto opd = assemble_scalar_on(coords, ctx.m2.h, ctx.m2.radial_power,
                                              std::vector<double>(coords.size(), 0.0),
                                              {BoundaryKind::dirichlet, 0.0},
                                              {BoundaryKind::dirichlet, 0.0});
                ctx.dirichlet_zero_set_value = principal_scalar(opd, opts).value;
            }
        }
    }
    return ctx;
}

InterfaceOperator assemble_weighted(const SpectralContext& ctx, double l1, double l2) {
    return assemble_interface(ctx.mesh, scaled(ctx.m1, -l1), scaled(ctx.m2, -l2), ctx.gamma1,
                              ctx.gamma2);
}

EigenResult eval_F_full(double l1, double l2, const SpectralContext& ctx) {
    return principal_interface(assemble_weighted(ctx, l1, l2), ctx.eig_opts);
}

double eval_F(double l1, double l2, const SpectralContext& ctx) {
    return eval_F_full(l1, l2, ctx).value;
}

double eval_f_mu(double mu, double l1, const SpectralContext& ctx) {
    return eval_F(l1, mu * l1, ctx);
}

double eval_g(double l2, const SpectralContext& ctx) { return eval_F(0.0, l2, ctx); }

std::optional<double> mu_star(const SpectralContext& ctx) { return ctx.mu_star_value; }

double degenerate_limit(const SpectralContext& ctx, double a_star) {
    if (classify_sign(ctx.m2) != SignClass::nonneg_nontrivial)
        throw EmptyZeroSet("degenerate limit needs m2 >= 0 with an interior zero set");
    const auto zs = zero_set(ctx.m2);
    const auto& iv = zs.largest_interior(); // throws EmptyZeroSet when absent

    // sigma1 on Omega1 with potential -a* m1
    ScalarProblem p1 = ctx.problem1();
    for (double& v : p1.c.values) v *= -a_star;
    auto op1 = assemble_scalar_on(p1.c.node_coords, p1.c.h, p1.c.radial_power, p1.c.values,
                                  p1.left, p1.right);
    const double s1 = principal_scalar(op1, ctx.eig_opts).value;

    // Dirichlet problem on the zero-set interval (cached at construction)
    double s2;
    if (ctx.dirichlet_zero_set_value) {
        s2 = *ctx.dirichlet_zero_set_value;
    } else {
        const std::vector<double> coords(ctx.m2.node_coords.begin() + iv.first_node,
                                         ctx.m2.node_coords.begin() + iv.last_node + 1);
        if (coords.size() < 3)
            throw EmptyZeroSet("zero-set interval too thin for a Dirichlet eigenvalue");
        auto opd = assemble_scalar_on(coords, ctx.m2.h, ctx.m2.radial_power,
                                      std::vector<double>(coords.size(), 0.0),
                                      {BoundaryKind::dirichlet, 0.0},
                                      {BoundaryKind::dirichlet, 0.0});
        s2 = principal_scalar(opd, ctx.eig_opts).value;
    }
    return std::min(s1, s2);
}

RayRoot ray_root(const std::function<double(double)>& phi, double r_max, double f_tol,
                 double width_tol_rel) {
    RayRoot out;
    // tangency dead-band: |phi(delta)| below slope_tol*delta reads as a
    // vanishing directional derivative (curvature contributes O(delta^2))
    const double slope_tol = 1e-4;
    auto band = [&](double d) { return std::max(1e-9, slope_tol * d); };
    double delta = std::min(1e-4, 1e-4 * r_max);
    double fd = phi(delta);
    for (int shrink = 0; std::abs(fd) <= band(delta) && shrink < 3; ++shrink) {
        delta *= 0.1;
        fd = phi(delta);
    }
    if (std::abs(fd) <= band(delta)) {
        out.status = RayRoot::Status::tangent;
        out.r = 0.0;
        out.f_abs = std::abs(fd);
        return out;
    }
    if (fd < 0.0) {
        out.status = RayRoot::Status::no_root;
        return out;
    }
    // expand geometrically until the sign flips or the cap is reached
    double a = delta;
    double b = std::min(r_max, delta * 4.0);
    for (;;) {
        const double fb = phi(b);
        if (fb < 0.0) break;
        if (b >= r_max) {
            out.status = RayRoot::Status::unbounded;
            out.r = r_max;
            out.f_abs = std::abs(fb);
            return out;
        }
        a = b;
        b = std::min(r_max, b * 4.0);
    }
    // bisect: phi(a) > 0 > phi(b)
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = phi(mid);
        if (fm > 0.0)
            a = mid;
        else
            b = mid;
        if (std::abs(fm) <= f_tol && (b - a) <= width_tol_rel * (1.0 + mid)) {
            out.status = RayRoot::Status::root;
            out.r = mid;
            out.f_abs = std::abs(fm);
            return out;
        }
    }
    out.status = RayRoot::Status::root;
    out.r = 0.5 * (a + b);
    out.f_abs = std::abs(phi(out.r));
    return out;
}

double ray_cap(const SpectralContext& ctx, double d1, double d2, double r_cap) {
    double cap = kInf;
    auto apply = [&cap](double bound, double component) {
        // component * r <= 2*bound (bound finite, same sign side)
        if (!std::isfinite(bound)) return;
        if (component > 1e-14 && bound > 0.0) cap = std::min(cap, 2.0 * bound / component);
        if (component < -1e-14 && bound < 0.0) cap = std::min(cap, 2.0 * bound / component);
    };
    apply(ctx.Lambda1_plus, d1);
    apply(ctx.Lambda1_minus, d1);
    apply(ctx.Lambda2_plus, d2);
    apply(ctx.Lambda2_minus, d2);
    return std::isfinite(cap) ? cap : r_cap;
}

} // namespace eigencurve
