#include "eigencurve/geometry.hpp"

#include <cmath>
#include <string>

#include "eigencurve/errors.hpp"

namespace eigencurve {

void DomainSpec::validate() const {
    if (!(x0 < xs && xs < xL))
        throw InvalidGeometry("need x0 < xs < xL, got x0=" + std::to_string(x0) +
                              " xs=" + std::to_string(xs) + " xL=" + std::to_string(xL));
    if (n1 < 8 || n2 < 8)
        throw InvalidGeometry("need n1 >= 8 and n2 >= 8");
    if (radial_power < 0)
        throw InvalidGeometry("radial_power must be >= 0");
    if (radial_power >= 1 && x0 < 0.0)
        throw InvalidGeometry("radial mode requires x0 >= 0");
}

double Mesh::cell_measure(double a, double b) const {
    const int k = radial_power;
    if (k == 0) return b - a;
    // exact integral of r^k over [a,b]
    return (std::pow(b, k + 1) - std::pow(a, k + 1)) / double(k + 1);
}

Mesh build_mesh(const DomainSpec& spec) {
    spec.validate();
    Mesh m;
    m.radial_power = spec.radial_power;
    m.h1 = (spec.xs - spec.x0) / spec.n1;
    m.h2 = (spec.xL - spec.xs) / spec.n2;

    m.nodes1.resize(spec.n1 + 1);
    for (int i = 0; i <= spec.n1; ++i)
        m.nodes1[i] = (i == spec.n1) ? spec.xs : spec.x0 + i * m.h1;
    m.nodes2.resize(spec.n2 + 1);
    for (int j = 0; j <= spec.n2; ++j)
        m.nodes2[j] = (j == spec.n2) ? spec.xL : spec.xs + j * m.h2;

    m.interface_index_1 = m.nodes1.size() - 1;
    m.interface_index_2 = m.nodes1.size();

    m.measure1 = m.cell_measure(spec.x0, spec.xs);
    m.measure2 = m.cell_measure(spec.xs, spec.xL);
    m.sigma_measure = spec.radial_power == 0 ? 1.0 : std::pow(spec.xs, spec.radial_power);
    return m;
}

} // namespace eigencurve
