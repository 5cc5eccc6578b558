#ifndef EIGENCURVE_GEOMETRY_HPP
#define EIGENCURVE_GEOMETRY_HPP

#include <cstddef>
#include <vector>

namespace eigencurve {

/// One-dimensional (or radially reduced) two-subdomain layout.
///
/// Omega1 = (x0, xs), Omega2 = (xs, xL); the membrane Sigma sits at xs and
/// the outer boundary Gamma at xL.  x0 is a symmetry/Neumann axis: it stands
/// for the center of a ball (radial mode) or the midpoint of a symmetric
/// interval, so it never carries boundary data of its own.
/// radial_power is the exponent k of the r^k volume weight (k = N-1 for the
/// radial reduction of an N-dimensional ball/annulus, 0 for flat 1D).
struct DomainSpec {
    double x0 = 0.0;
    double xs = 0.5;
    double xL = 1.0;
    int radial_power = 0;
    int n1 = 32; // mesh intervals on Omega1 (n1+1 nodes)
    int n2 = 32; // mesh intervals on Omega2

    void validate() const;
};

/// Uniform mesh with a duplicated interface node, one unknown per side of xs.
struct Mesh {
    std::vector<double> nodes1; // x0 .. xs, n1+1 entries
    std::vector<double> nodes2; // xs .. xL, n2+1 entries
    double h1 = 0.0;
    double h2 = 0.0;
    int radial_power = 0;

    // Global indices of the two interface unknowns (last of side 1, first of side 2).
    std::size_t interface_index_1 = 0;
    std::size_t interface_index_2 = 0;

    double measure1 = 0.0;       // integral of r^k over Omega1
    double measure2 = 0.0;       // integral of r^k over Omega2
    double sigma_measure = 0.0;  // xs^k (1 in flat mode)

    std::size_t size1() const { return nodes1.size(); }
    std::size_t size2() const { return nodes2.size(); }
    std::size_t size() const { return nodes1.size() + nodes2.size(); }

    double x0() const { return nodes1.front(); }
    double xs() const { return nodes1.back(); }
    double xL() const { return nodes2.back(); }

    /// Global node coordinate (side-1 nodes first, then side-2 nodes).
    double coord(std::size_t g) const {
        return g < nodes1.size() ? nodes1[g] : nodes2[g - nodes1.size()];
    }

    /// r^k integrated over [a, b]; the exact cell/“volume” measure.
    double cell_measure(double a, double b) const;
};

/// Builds the uniform two-subdomain mesh and attaches the weighted measures.
/// Throws InvalidGeometry when the layout constraints are violated.
Mesh build_mesh(const DomainSpec& spec);

} // namespace eigencurve

#endif
