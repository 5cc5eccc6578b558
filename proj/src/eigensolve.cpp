#include "eigencurve/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eigencurve/dense_eig.hpp"
#include "eigencurve/errors.hpp"

namespace eigencurve {

namespace {

// In-place max-norm normalization keeping the orientation of the largest
// entry; returns that signed entry.
double normalize_maxabs(std::vector<double>& v) {
    double big = 0.0;
    for (double x : v)
        if (std::abs(x) > std::abs(big)) big = x;
    if (big != 0.0)
        for (double& x : v) x /= big;
    return big;
}

double rayleigh(const Tridiag& A, const std::vector<double>& v, const std::vector<double>* w,
                std::vector<double>& scratch) {
    A.mul(v, scratch);
    double num = 0.0, den = 0.0;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = w ? (*w)[i] : 1.0;
        num += wi * v[i] * scratch[i];
        den += wi * v[i] * v[i];
    }
    return num / den;
}

double residual_inf(const Tridiag& A, const std::vector<double>& v, double lam,
                    std::vector<double>& scratch) {
    A.mul(v, scratch);
    double r = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) r = std::max(r, std::abs(scratch[i] - lam * v[i]));
    return r;
}

struct IterationOutcome {
    bool converged = false;
    double lam = 0.0;
    double residual = 0.0;
    int iterations = 0;
    std::vector<double> v;
};

IterationOutcome run_inverse_iteration(const Tridiag& A, const EigenOptions& opts,
                                       const std::vector<double>* rq_weights, bool accelerate,
                                       int iter_budget) {
    const std::size_t n = A.size();
    const double scale = A.max_abs_row_sum();
    const double tol = std::max(opts.tol_eig, 64.0 * std::numeric_limits<double>::epsilon() * scale);

    IterationOutcome out;
    out.v.assign(n, 1.0);
    std::vector<double> scratch(n), w(n);

    double sigma = A.gershgorin_lower() - 1.0;
    TridiagLU lu(A.shifted(-sigma));
    while (lu.singular()) {
        sigma -= 1e-8 * (1.0 + std::abs(sigma));
        lu = TridiagLU(A.shifted(-sigma));
    }

    double lam_prev = std::numeric_limits<double>::infinity();
    for (out.iterations = 1; out.iterations <= iter_budget; ++out.iterations) {
        w = out.v;
        lu.solve(w);
        if (normalize_maxabs(w) == 0.0) throw NoConvergence("inverse iteration produced zero");
        out.v = w;
        out.lam = rayleigh(A, out.v, rq_weights, scratch);
        out.residual = residual_inf(A, out.v, out.lam, scratch);
        if (out.residual <= tol) {
            out.converged = true;
            return out;
        }
        const double dlam = std::abs(out.lam - lam_prev);
        lam_prev = out.lam;
        if (accelerate && dlam <= 1e-3 * (1.0 + std::abs(out.lam))) {
            // move the shift next to the estimate; stay below it
            const double delta = std::max(10.0 * dlam, 1e-9 * (1.0 + std::abs(out.lam)));
            const double target = out.lam - delta;
            if (target > sigma + 0.1 * delta) {
                sigma = target;
                lu = TridiagLU(A.shifted(-sigma));
                while (lu.singular()) {
                    sigma -= std::max(1e-12 * (1.0 + std::abs(sigma)), delta * 0.5);
                    lu = TridiagLU(A.shifted(-sigma));
                }
            }
        }
    }
    return out;
}

} // namespace

EigenResult principal_eigen(const Tridiag& A, const EigenOptions& opts,
                            const std::vector<double>* rq_weights) {
    IterationOutcome out = run_inverse_iteration(A, opts, rq_weights, true, opts.max_iter);
    double margin = *std::min_element(out.v.begin(), out.v.end());
    // The accelerated shift can in rare cases land on a higher eigenvalue;
    // a plain run keeps the iterates inside the positive cone.
    if (!out.converged || margin <= -opts.positivity_tol) {
        IterationOutcome retry = run_inverse_iteration(A, opts, rq_weights, false, opts.max_iter);
        if (retry.converged) {
            out = retry;
            margin = *std::min_element(out.v.begin(), out.v.end());
        } else if (!out.converged) {
            throw NoConvergence("principal eigenpair did not reach tolerance: residual=" +
                                std::to_string(out.residual));
        }
    }
    if (margin <= -opts.positivity_tol)
        throw NoPositivityCertificate("converged eigenvector has component " +
                                      std::to_string(margin));
    EigenResult r;
    r.value = out.lam;
    r.eigenfunction = std::move(out.v);
    r.residual = out.residual;
    r.positivity_margin = margin;
    r.iterations = out.iterations;
    return r;
}

std::vector<double> symmetrizer_weights(const InterfaceOperator& op) {
    std::vector<double> w = op.cell_measures;
    const double ratio = op.gamma1 / op.gamma2;
    for (std::size_t g = op.mesh.size1(); g < w.size(); ++g) w[g] *= ratio;
    return w;
}

EigenResult principal_interface(const InterfaceOperator& op, const EigenOptions& opts) {
    const std::vector<double> w = symmetrizer_weights(op);
    return principal_eigen(op.matrix, opts, &w);
}

EigenResult principal_scalar(const ScalarOperator& op, const EigenOptions& opts) {
    return principal_eigen(op.matrix, opts, &op.cell_measures);
}

DenseSpectrum dense_oracle(const Tridiag& A) {
    const std::size_t n = A.size();
    if (n > 400) throw DimensionTooLarge("dense oracle capped at dimension 400, got " +
                                         std::to_string(n));
    DenseMatrix D(n);
    D.a = A.dense();

    DenseSpectrum spec;
    spec.eigenvalues = dense_eigenvalues(D);

    double scale = 0.0;
    for (const auto& z : spec.eigenvalues) scale = std::max(scale, std::abs(z));
    const double imag_tol = 1e-8 * (1.0 + scale);

    bool found = false;
    int extra_checked = 0;
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        const auto z = spec.eigenvalues[i];
        if (std::abs(z.imag()) > imag_tol) continue;
        // skip the twin of a just-analyzed near-degenerate value
        if (found && extra_checked >= 6) break;
        std::vector<double> v = dense_eigenvector(D, z.real());
        const double margin = *std::min_element(v.begin(), v.end());
        const bool positive = margin > -1e-6;
        if (positive && !found) {
            found = true;
            spec.principal_value = z.real();
            spec.principal_vector = std::move(v);
            spec.principal_index = i;
        } else if (positive && found &&
                   std::abs(z.real() - spec.principal_value) > 1e-7 * (1.0 + scale)) {
            throw NoPositivityCertificate("second positive-eigenvector eigenvalue found");
        } else if (found) {
            ++extra_checked;
        }
    }
    if (!found) throw NoPositivityCertificate("no real eigenvalue with positive eigenvector");
    return spec;
}

DenseSpectrum dense_oracle(const InterfaceOperator& op) { return dense_oracle(op.matrix); }
DenseSpectrum dense_oracle(const ScalarOperator& op) { return dense_oracle(op.matrix); }

} // namespace eigencurve
