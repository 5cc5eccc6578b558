#include "eigencurve/operators.hpp"

#include <cmath>

#include "eigencurve/errors.hpp"

namespace eigencurve {

namespace {

double pow_k(double r, int k) { return k == 0 ? 1.0 : std::pow(r, k); }

// integral of r^k over [a,b]
double measure(double a, double b, int k) {
    if (k == 0) return b - a;
    return (std::pow(b, k + 1) - std::pow(a, k + 1)) / double(k + 1);
}

} // namespace

ScalarOperator assemble_scalar_on(const std::vector<double>& coords, double h, int radial_power,
                                  const std::vector<double>& potential, ScalarBoundary left,
                                  ScalarBoundary right) {
    const std::size_t nn = coords.size();
    if (nn < 3) throw InvalidGeometry("scalar operator needs at least 3 nodes");
    const int k = radial_power;
    const std::size_t lo = left.kind == BoundaryKind::dirichlet ? 1 : 0;
    const std::size_t hi = right.kind == BoundaryKind::dirichlet ? nn - 2 : nn - 1;

    ScalarOperator op;
    op.h = h;
    op.radial_power = k;
    op.left = left;
    op.right = right;
    const std::size_t n = hi - lo + 1;
    op.matrix = Tridiag(n);
    op.coords.assign(coords.begin() + lo, coords.begin() + lo + n);
    op.cell_measures.resize(n);

    const double a = coords.front(), b = coords.back();
    for (std::size_t g = 0; g < n; ++g) {
        const std::size_t i = g + lo; // node index
        const double x = coords[i];
        const double cl = std::max(a, x - 0.5 * h);
        const double cr = std::min(b, x + 0.5 * h);
        const double m = measure(cl, cr, k);
        op.cell_measures[g] = m;
        double dia = potential[i];
        // left face
        if (i > 0) {
            const double w = pow_k(x - 0.5 * h, k) / h;
            dia += w / m;
            if (g > 0) op.matrix.lower[g - 1] = -w / m;
            // g == 0 with i > 0: eliminated Dirichlet neighbor, half of the
            // flux stays on the diagonal and the coupling is dropped.
        } else {
            // physical left end
            if (left.kind == BoundaryKind::robin_interface) dia += left.gamma * pow_k(a, k) / m;
            // neumann: zero boundary flux, nothing to add
        }
        // right face
        if (i + 1 < nn) {
            const double w = pow_k(x + 0.5 * h, k) / h;
            dia += w / m;
            if (g + 1 < n) op.matrix.upper[g] = -w / m;
        } else {
            if (right.kind == BoundaryKind::robin_interface) dia += right.gamma * pow_k(b, k) / m;
        }
        op.matrix.diag[g] = dia;
    }
    return op;
}

ScalarOperator assemble_scalar(const CoefficientField& c, ScalarBoundary left,
                               ScalarBoundary right) {
    return assemble_scalar_on(c.node_coords, c.h, c.radial_power, c.values, left, right);
}

InterfaceOperator assemble_interface(const Mesh& mesh, const CoefficientField& c1,
                                     const CoefficientField& c2, double gamma1, double gamma2) {
    if (!(gamma1 > 0.0) || !(gamma2 > 0.0))
        throw InvalidCoupling("jump coefficients must be positive, got gamma1=" +
                              std::to_string(gamma1) + " gamma2=" + std::to_string(gamma2));
    if (c1.values.size() != mesh.size1() || c2.values.size() != mesh.size2())
        throw InvalidGeometry("potential sampling does not match the mesh");

    const int k = mesh.radial_power;
    const std::size_t n1n = mesh.size1(), n2n = mesh.size2();
    const std::size_t N = n1n + n2n;

    InterfaceOperator op;
    op.mesh = mesh;
    op.c1 = c1;
    op.c2 = c2;
    op.gamma1 = gamma1;
    op.gamma2 = gamma2;
    op.matrix = Tridiag(N);
    op.cell_measures.resize(N);

    const double sig = mesh.sigma_measure; // xs^k
    const double x0 = mesh.x0(), xs = mesh.xs(), xL = mesh.xL();

    // side 1: nodes 0..n1
    for (std::size_t i = 0; i < n1n; ++i) {
        const double x = mesh.nodes1[i];
        const double m = measure(std::max(x0, x - 0.5 * mesh.h1), std::min(xs, x + 0.5 * mesh.h1), k);
        op.cell_measures[i] = m;
        double dia = c1.values[i];
        if (i > 0) {
            const double w = pow_k(x - 0.5 * mesh.h1, k) / mesh.h1;
            dia += w / m;
            op.matrix.lower[i - 1] = -w / m;
        }
        if (i + 1 < n1n) {
            const double w = pow_k(x + 0.5 * mesh.h1, k) / mesh.h1;
            dia += w / m;
            op.matrix.upper[i] = -w / m;
        } else {
            // interface row: boundary flux u1'(xs) replaced by gamma1*(u2-u1)
            dia += gamma1 * sig / m;
            op.matrix.upper[i] = -gamma1 * sig / m; // couples to the side-2 twin
        }
        op.matrix.diag[i] = dia;
    }
    // side 2: nodes 0..n2, global offset n1n
    for (std::size_t j = 0; j < n2n; ++j) {
        const std::size_t g = n1n + j;
        const double x = mesh.nodes2[j];
        const double m = measure(std::max(xs, x - 0.5 * mesh.h2), std::min(xL, x + 0.5 * mesh.h2), k);
        op.cell_measures[g] = m;
        double dia = c2.values[j];
        if (j > 0) {
            const double w = pow_k(x - 0.5 * mesh.h2, k) / mesh.h2;
            dia += w / m;
            op.matrix.lower[g - 1] = -w / m;
        } else {
            // interface row: boundary flux u2'(xs) replaced by gamma2*(u2-u1)
            dia += gamma2 * sig / m;
            op.matrix.lower[g - 1] = -gamma2 * sig / m;
        }
        if (j + 1 < n2n) {
            const double w = pow_k(x + 0.5 * mesh.h2, k) / mesh.h2;
            dia += w / m;
            op.matrix.upper[g] = -w / m;
        }
        op.matrix.diag[g] = dia;
    }
    return op;
}

double interface_flux_residual(const InterfaceOperator& op, const std::vector<double>& u) {
    const std::size_t i1 = op.mesh.interface_index_1;
    const std::size_t i2 = op.mesh.interface_index_2;
    const double h1 = op.mesh.h1, h2 = op.mesh.h2;
    const double d1 = (3.0 * u[i1] - 4.0 * u[i1 - 1] + u[i1 - 2]) / (2.0 * h1);
    const double d2 = (-3.0 * u[i2] + 4.0 * u[i2 + 1] - u[i2 + 2]) / (2.0 * h2);
    const double jump = u[i2] - u[i1];
    return std::max(std::abs(d1 - op.gamma1 * jump), std::abs(d2 - op.gamma2 * jump));
}

} // namespace eigencurve
