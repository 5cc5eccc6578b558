#include "eigencurve/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eigencurve/errors.hpp"

namespace eigencurve {

namespace {

struct Workspace {
    std::vector<double> lam_m; // lambda_i m_i at every unknown
    std::vector<double> pexp;  // p_i at every unknown
    double K = 0.0;
    double theta = 0.0;
};

Workspace make_workspace(const LogisticProblem& prob, double K) {
    const auto& ctx = prob.ctx;
    const std::size_t n1 = ctx.mesh.size1(), n = n1 + ctx.mesh.size2();
    Workspace ws;
    ws.lam_m.resize(n);
    ws.pexp.resize(n);
    for (std::size_t i = 0; i < n1; ++i) {
        ws.lam_m[i] = prob.l1 * ctx.m1.values[i];
        ws.pexp[i] = prob.p1;
    }
    for (std::size_t j = 0; j < n - n1; ++j) {
        ws.lam_m[n1 + j] = prob.l2 * ctx.m2.values[j];
        ws.pexp[n1 + j] = prob.p2;
    }
    ws.K = K;
    double theta = 0.0;
    const double a1 = std::abs(prob.l1) * ctx.m1.max_abs();
    const double a2 = std::abs(prob.l2) * ctx.m2.max_abs();
    theta = std::max(prob.p1 * std::pow(K, prob.p1 - 1.0) + a1,
                     prob.p2 * std::pow(K, prob.p2 - 1.0) + a2);
    ws.theta = theta + 1.0;
    return ws;
}

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// nonlinear residual R(u) = A0 u - lam_m u + u^p
void residual(const Tridiag& A0, const Workspace& ws, const std::vector<double>& u,
              std::vector<double>& out) {
    A0.mul(u, out);
    for (std::size_t i = 0; i < u.size(); ++i)
        out[i] += -ws.lam_m[i] * u[i] + std::pow(u[i], ws.pexp[i]);
}

} // namespace

void LogisticProblem::validate() const {
    if (!(p1 > 1.0) || !(p2 > 1.0)) throw Error("logistic exponents must satisfy p > 1");
}

Existence existence_classify(const LogisticProblem& prob, double* F_out) {
    prob.validate();
    const double F = eval_F(prob.l1, prob.l2, prob.ctx);
    if (F_out) *F_out = F;
    if (F < -prob.tol_margin) return Existence::exists;
    if (F > prob.tol_margin) return Existence::not_exists;
    return Existence::indeterminate;
}

bool existence_check(const LogisticProblem& prob) {
    const Existence e = existence_classify(prob);
    if (e == Existence::indeterminate)
        throw Indeterminate("|F| within the existence dead-band at (" + std::to_string(prob.l1) +
                            ", " + std::to_string(prob.l2) + ")");
    return e == Existence::exists;
}

LogisticBracket bracket(const LogisticProblem& prob) {
    prob.validate();
    const EigenResult eig = eval_F_full(prob.l1, prob.l2, prob.ctx);
    const double F = eig.value;
    if (!(F < -prob.tol_margin))
        throw NotSubcritical("F = " + std::to_string(F) + " is not below -tol_margin");

    LogisticBracket br;
    br.F = F;
    br.phi = eig.eigenfunction;

    const double a1 = std::abs(prob.l1) * prob.ctx.m1.max_abs();
    const double a2 = std::abs(prob.l2) * prob.ctx.m2.max_abs();
    const double K1 = a1 > 0.0 ? std::pow(a1, 1.0 / (prob.p1 - 1.0)) : 0.0;
    const double K2 = a2 > 0.0 ? std::pow(a2, 1.0 / (prob.p2 - 1.0)) : 0.0;
    br.K = 1.1 * std::max({K1, K2, 1e-8});

    const double e1 = std::pow(-F, 1.0 / (prob.p1 - 1.0));
    const double e2 = std::pow(-F, 1.0 / (prob.p2 - 1.0));
    br.eps = 0.9 * std::min(e1, e2);
    br.eps = std::min(br.eps, br.K); // keep eps*phi <= K (phi has max 1)
    return br;
}

LogisticSolution solve(const LogisticProblem& prob) {
    const LogisticBracket br = bracket(prob);
    const auto A0 = assemble_interface(prob.ctx.mesh, field_constant(prob.ctx.mesh, 1, 0.0),
                                       field_constant(prob.ctx.mesh, 2, 0.0), prob.ctx.gamma1,
                                       prob.ctx.gamma2);
    const Workspace ws = make_workspace(prob, br.K);
    const std::size_t n = A0.size();

    std::vector<double> lower(n), upper(n, br.K);
    for (std::size_t i = 0; i < n; ++i) lower[i] = br.eps * br.phi[i];

    const Tridiag shifted = A0.matrix.shifted(ws.theta);
    const TridiagLU lu(shifted);

    LogisticSolution sol;
    sol.eps_bracket = br.eps;
    sol.K_bracket = br.K;

    auto picard_step = [&](const std::vector<double>& u, std::vector<double>& next) {
        next.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            next[i] = ws.theta * u[i] + ws.lam_m[i] * u[i] - std::pow(u[i], ws.pexp[i]);
        lu.solve(next);
    };

    // Near the curve the Jacobian is nearly singular, so a small residual
    // alone does not pin the iterate; require the Newton step (an error
    // estimate) to settle as well.
    auto newton_polish = [&](std::vector<double>& u, int& iters) {
        std::vector<double> R(n), delta(n), trial(n), Rt(n);
        const double step_tol = 0.1 * prob.tol_uniq;
        double prev_step = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 80; ++it) {
            residual(A0.matrix, ws, u, R);
            const double rn = sup_norm(R);
            Tridiag J = A0.matrix;
            for (std::size_t i = 0; i < n; ++i)
                J.diag[i] += -ws.lam_m[i] + ws.pexp[i] * std::pow(u[i], ws.pexp[i] - 1.0);
            TridiagLU jlu(J);
            delta = R;
            if (!jlu.solve(delta)) return false;
            const double step_norm = sup_norm(delta);
            if (rn <= prob.tol_nl && (step_norm <= step_tol || step_norm >= prev_step)) {
                if (step_norm <= prev_step)
                    for (std::size_t i = 0; i < n; ++i) u[i] -= delta[i];
                return true;
            }
            double step = 1.0;
            for (int damp = 0; damp < 25; ++damp, step *= 0.5) {
                for (std::size_t i = 0; i < n; ++i) trial[i] = u[i] - step * delta[i];
                residual(A0.matrix, ws, trial, Rt);
                if (sup_norm(Rt) < rn) break;
            }
            u = trial;
            prev_step = step_norm;
            ++iters;
        }
        residual(A0.matrix, ws, u, R);
        return sup_norm(R) <= prob.tol_nl;
    };

    auto run_monotone = [&](std::vector<double> u, bool from_below) {
        std::vector<double> next(n);
        int it = 0;
        const int picard_budget = std::min(prob.max_iter, 400);
        for (; it < picard_budget; ++it) {
            picard_step(u, next);
            double worst = 0.0, delta_norm = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = next[i] - u[i];
                worst = std::max(worst, from_below ? -d : d);
                delta_norm = std::max(delta_norm, std::abs(d));
                const double below = br.eps * br.phi[i] - next[i];
                const double above = next[i] - br.K;
                sol.ordering_violation =
                    std::max({sol.ordering_violation, below, above});
            }
            sol.monotone_violation = std::max(sol.monotone_violation, worst);
            u.swap(next);
            if (delta_norm <= 1e-6 * (1.0 + br.K)) break;
        }
        int iters = it;
        if (!newton_polish(u, iters))
            throw NonConvergence("logistic Newton polish stalled at (" +
                                 std::to_string(prob.l1) + ", " + std::to_string(prob.l2) + ")");
        sol.iterations += iters;
        return u;
    };

    std::vector<double> from_below = run_monotone(lower, true);
    std::vector<double> from_above = run_monotone(upper, false);

    double gap = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        gap = std::max(gap, std::abs(from_below[i] - from_above[i]));
    sol.two_sided_gap = gap;
    if (gap > prob.tol_uniq)
        throw UniquenessGap("two-sided limits differ by " + std::to_string(gap));

    sol.u = std::move(from_above);
    std::vector<double> R(n);
    residual(A0.matrix, ws, sol.u, R);
    sol.residual = sup_norm(R);
    for (double x : sol.u)
        if (!(x > 0.0)) throw NonConvergence("logistic solution lost positivity");
    return sol;
}

std::vector<double> decay_probe(const LogisticProblem& prob, double start, int iters,
                                double stop_below) {
    prob.validate();
    const auto A0 = assemble_interface(prob.ctx.mesh, field_constant(prob.ctx.mesh, 1, 0.0),
                                       field_constant(prob.ctx.mesh, 2, 0.0), prob.ctx.gamma1,
                                       prob.ctx.gamma2);
    const Workspace ws = make_workspace(prob, std::max(start, 1.0));
    const std::size_t n = A0.size();
    const TridiagLU lu(A0.matrix.shifted(ws.theta));

    std::vector<double> u(n, start), next(n), trail;
    trail.reserve(iters + 1);
    trail.push_back(sup_norm(u));
    for (int it = 0; it < iters; ++it) {
        for (std::size_t i = 0; i < n; ++i)
            next[i] = ws.theta * u[i] + ws.lam_m[i] * u[i] - std::pow(u[i], ws.pexp[i]);
        lu.solve(next);
        for (double& x : next) x = std::max(x, 0.0);
        u.swap(next);
        trail.push_back(sup_norm(u));
        if (stop_below > 0.0 && trail.back() <= stop_below) break;
    }
    return trail;
}

double linearized_principal(const LogisticProblem& prob, const std::vector<double>& u) {
    const auto& ctx = prob.ctx;
    const std::size_t n1 = ctx.mesh.size1();
    CoefficientField c1 = ctx.m1, c2 = ctx.m2;
    for (std::size_t i = 0; i < c1.values.size(); ++i)
        c1.values[i] = -prob.l1 * ctx.m1.values[i] + std::pow(u[i], prob.p1 - 1.0);
    for (std::size_t j = 0; j < c2.values.size(); ++j)
        c2.values[j] = -prob.l2 * ctx.m2.values[j] + std::pow(u[n1 + j], prob.p2 - 1.0);
    auto op = assemble_interface(ctx.mesh, c1, c2, ctx.gamma1, ctx.gamma2);
    return principal_interface(op, ctx.eig_opts).value;
}

} // namespace eigencurve
