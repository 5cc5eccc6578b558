#ifndef EIGENCURVE_LOGISTIC_HPP
#define EIGENCURVE_LOGISTIC_HPP

#include <vector>

#include "eigencurve/spectral_maps.hpp"

namespace eigencurve {

/// Semilinear interface problem -Delta u_i = lambda_i m_i u_i - u_i^{p_i}.
struct LogisticProblem {
    SpectralContext ctx;
    double l1 = 0.0, l2 = 0.0;
    double p1 = 2.0, p2 = 2.0;

    double tol_margin = 1e-5; // 10 * tol_curve: existence dead-band around the curve
    double tol_nl = 1e-9;     // sup-norm residual target
    double tol_uniq = 1e-8;   // two-sided agreement
    int max_iter = 20000;

    void validate() const; // p_i > 1
};

enum class Existence { exists, not_exists, indeterminate };

/// Three-way existence decision; also reports the computed F value.
Existence existence_classify(const LogisticProblem& prob, double* F_out = nullptr);

/// Existence criterion: true iff F < -tol_margin.  Throws Indeterminate
/// inside the dead-band |F| <= tol_margin.
bool existence_check(const LogisticProblem& prob);

/// Explicit sub/supersolution pair (eps*phi, K).
struct LogisticBracket {
    double eps = 0.0;
    double K = 0.0;
    std::vector<double> phi; // principal eigenfunction at (-l1 m1, -l2 m2), max-norm 1
    double F = 0.0;
};

/// Throws NotSubcritical when F >= -tol_margin.
LogisticBracket bracket(const LogisticProblem& prob);

struct LogisticSolution {
    std::vector<double> u;
    double residual = 0.0;
    int iterations = 0;
    double eps_bracket = 0.0, K_bracket = 0.0;
    double two_sided_gap = 0.0;       // |limit_up - limit_down|_inf
    double monotone_violation = 0.0;  // worst step-wise monotonicity defect
    double ordering_violation = 0.0;  // worst breach of eps*phi <= u <= K
};

/// Monotone (shifted Picard) iteration from both ends of the bracket with a
/// damped Newton polish; throws NonConvergence or UniquenessGap.
LogisticSolution solve(const LogisticProblem& prob);

/// Sup-norm trajectory of the monotone iteration from the constant start
/// value; used to watch iterates decay to zero when F > 0.  Stops early
/// once the sup norm falls below stop_below (0 disables the early exit).
std::vector<double> decay_probe(const LogisticProblem& prob, double start, int iters,
                                double stop_below = 0.0);

/// Lambda1(-l1 m1 + u1^{p1-1}, -l2 m2 + u2^{p2-1}): zero at a solution.
double linearized_principal(const LogisticProblem& prob, const std::vector<double>& u);

} // namespace eigencurve

#endif
