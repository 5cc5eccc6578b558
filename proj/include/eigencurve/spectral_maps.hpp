#ifndef EIGENCURVE_SPECTRAL_MAPS_HPP
#define EIGENCURVE_SPECTRAL_MAPS_HPP

#include <functional>
#include <optional>

#include "eigencurve/eigensolve.hpp"
#include "eigencurve/fields.hpp"
#include "eigencurve/geometry.hpp"
#include "eigencurve/operators.hpp"

namespace eigencurve {

/// Scalar weighted problem on one subdomain: mu(lambda) = sigma1(-Delta - lambda c; B).
struct ScalarProblem {
    CoefficientField c;
    ScalarBoundary left, right;
};

double scalar_mu(double lambda, const ScalarProblem& prob, const EigenOptions& opts = {});

/// Outcome of the concave root hunt for mu(lambda) = 0.
struct ScalarRoots {
    enum class Kind {
        single,      // c of one sign: unique root, the other side is an infinite sentinel
        two_roots,   // sign-changing c with mu(lambda0) > 0
        double_root, // tangency at the concave maximum
        no_roots     // sign-changing c with mu(lambda0) < 0
    };
    Kind kind = Kind::no_roots;
    double lambda_minus = 0.0; // -inf sentinel when m >= 0
    double lambda_plus = 0.0;  // +inf sentinel when m <= 0
    double lambda_max = 0.0;   // argmax of mu (sign-changing case)
    double mu_max = 0.0;       // mu(lambda_max)
};

ScalarRoots scalar_roots(const ScalarProblem& prob, const EigenOptions& opts = {});

/// Shared state for the two-parameter eigenvalue map F(l1, l2) =
/// Lambda1(-l1 m1, -l2 m2) with cached landmark values.
struct SpectralContext {
    Mesh mesh;
    CoefficientField m1, m2;
    double gamma1 = 1.0, gamma2 = 1.0;
    EigenOptions eig_opts;

    SignClass sign1 = SignClass::zero, sign2 = SignClass::zero;
    double int_m1 = 0.0, int_m2 = 0.0;

    // roots of the two scalar maps; +-inf sentinels when a side has no root
    double Lambda1_minus = 0.0, Lambda1_plus = 0.0;
    double Lambda2_minus = 0.0, Lambda2_plus = 0.0;

    std::optional<double> mu_star_value; // tangent ray slope, absent when int m2 == 0
    // Dirichlet value on the largest interior zero-set interval of m2, when
    // m2 >= 0 degenerates there (the b -> -infinity limit ingredient)
    std::optional<double> dirichlet_zero_set_value;

    ScalarProblem problem1() const; // Omega1: Neumann axis, Robin(gamma1) at Sigma
    ScalarProblem problem2() const; // Omega2: Robin(gamma2) at Sigma, Neumann at Gamma

    /// Sign of a weight integral with the zero dead-band used by the case split.
    int integral_sign(double integral) const;
};

/// Builds the context, classifies the weights (both must be nontrivial) and
/// computes the landmark values.
SpectralContext make_context(const Mesh& mesh, const CoefficientField& m1,
                             const CoefficientField& m2, double gamma1, double gamma2,
                             const EigenOptions& opts = {});

InterfaceOperator assemble_weighted(const SpectralContext& ctx, double l1, double l2);

double eval_F(double l1, double l2, const SpectralContext& ctx);
EigenResult eval_F_full(double l1, double l2, const SpectralContext& ctx);

/// f_mu(l1) = F(l1, mu*l1), the restriction to the ray lambda2 = mu*lambda1.
double eval_f_mu(double mu, double l1, const SpectralContext& ctx);

/// g(l2) = F(0, l2), the lambda2-axis restriction.
double eval_g(double l2, const SpectralContext& ctx);

/// mu* = -(gamma2 int m1)/(gamma1 int m2); tangent-ray slope at the origin.
std::optional<double> mu_star(const SpectralContext& ctx);

/// Limit of F(a*, b) as b -> -infinity: min of
/// sigma1^{Omega1}(-Delta - a* m1; N+gamma1) and the Dirichlet value on the
/// largest interior zero-set interval of m2.
/// Requires m2 >= 0 with a nonempty interior zero set.
double degenerate_limit(const SpectralContext& ctx, double a_star);

/// Concave ray scan phi(r) = F(origin + r*dir) with phi(0) = 0.
struct RayRoot {
    enum class Status {
        root,      // unique positive root found
        no_root,   // phi immediately negative: no zero on the open ray
        unbounded, // phi positive up to the search cap (curve open in this direction)
        tangent    // phi'(0) ~ 0: the ray is tangent to the curve at the origin
    };
    Status status = Status::no_root;
    double r = 0.0;
    double f_abs = 0.0; // |phi| at the reported root
};

RayRoot ray_root(const std::function<double(double)>& phi, double r_max, double f_tol,
                 double width_tol_rel);

/// Search cap for the ray direction (d1, d2) from the Lambda-box (doubled),
/// falling back to r_cap when no finite bound applies.
double ray_cap(const SpectralContext& ctx, double d1, double d2, double r_cap = 1e3);

} // namespace eigencurve

#endif
