#ifndef EIGENCURVE_OPERATORS_HPP
#define EIGENCURVE_OPERATORS_HPP

#include <vector>

#include "eigencurve/fields.hpp"
#include "eigencurve/geometry.hpp"
#include "eigencurve/tridiag.hpp"

namespace eigencurve {

enum class BoundaryKind { neumann, robin_interface, dirichlet };

struct ScalarBoundary {
    BoundaryKind kind = BoundaryKind::neumann;
    double gamma = 0.0; // jump/Robin coefficient, used by robin_interface
};

/// Discrete -Delta + c on one subdomain with the requested boundary
/// operators.  Finite-volume rows: conservative midpoint fluxes, half cells
/// at the ends, every row divided by its cell measure so that A u = lambda u
/// is a standard eigenproblem and potentials enter the diagonal pointwise.
struct ScalarOperator {
    Tridiag matrix;
    std::vector<double> coords;        // retained unknowns (Dirichlet ends eliminated)
    std::vector<double> cell_measures; // row scaling weights; symmetrization diagonal
    double h = 0.0;
    int radial_power = 0;
    ScalarBoundary left, right;
};

/// Coupled (-Delta + c1, -Delta + c2) with Kedem-Katchalsky rows at the
/// duplicated interface node and Neumann ends at the axis x0 and at Gamma.
/// Unknown order: side-1 nodes then side-2 nodes (dimension n1+n2+2).
struct InterfaceOperator {
    Tridiag matrix;
    Mesh mesh;
    CoefficientField c1, c2;
    double gamma1 = 0.0, gamma2 = 0.0;
    std::vector<double> cell_measures;

    std::size_t size() const { return matrix.size(); }
};

/// Assembles the interface operator.  Throws InvalidCoupling when a jump
/// coefficient is not positive.
InterfaceOperator assemble_interface(const Mesh& mesh, const CoefficientField& c1,
                                     const CoefficientField& c2, double gamma1, double gamma2);

ScalarOperator assemble_scalar(const CoefficientField& c, ScalarBoundary left,
                               ScalarBoundary right);

/// Same, on an explicit uniform node set (used for Dirichlet problems on
/// zero-set subintervals).
ScalarOperator assemble_scalar_on(const std::vector<double>& coords, double h, int radial_power,
                                  const std::vector<double>& potential, ScalarBoundary left,
                                  ScalarBoundary right);

/// One-sided three-point probe of how well a discrete pair satisfies the
/// interface conditions u1' = gamma1 (u2-u1), u2' = gamma2 (u2-u1) at xs
/// (nu = +x convention).  Returns the larger of the two condition residuals.
double interface_flux_residual(const InterfaceOperator& op, const std::vector<double>& u);

} // namespace eigencurve

#endif
