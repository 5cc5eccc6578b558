#ifndef EIGENCURVE_CONFIG_HPP
#define EIGENCURVE_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "eigencurve/fields.hpp"
#include "eigencurve/geometry.hpp"

namespace eigencurve {

/// One weight/potential definition from a config section.
struct FieldSpec {
    std::string kind = "constant"; // constant | piecewise | expr
    double value = 0.0;
    std::string expr;
    std::vector<double> breakpoints;
    std::vector<double> values;

    CoefficientField build(const Mesh& mesh, int subdomain) const;
};

/// Parsed run configuration (key = value with [section] headers).
struct RunConfig {
    DomainSpec domain;
    double gamma1 = 1.0, gamma2 = 1.0;
    FieldSpec m1, m2;
    std::optional<FieldSpec> c1, c2; // potentials for the eigen command

    // [run]
    unsigned long seed = 1;
    std::string out_dir = "out";
    double tol_eig = 1e-10;
    double tol_curve = 1e-6;

    // [eigen]
    std::string eigen_mode = "interface"; // interface | scalar1 | scalar2
    int eigen_refine = 3;
    bool dump_matrix = false;

    // [curve]
    int rays = 512;
    int svg_width = 900;
    int svg_height = 640;
    int sign_grid_n1 = 120, sign_grid_n2 = 90;

    // [logistic]
    double p1 = 2.0, p2 = 2.0;
    double l1_min = -2.0, l1_max = 2.0, l2_min = -2.0, l2_max = 2.0;
    int grid_n1 = 11, grid_n2 = 11;
    int profile_count = 3;

    // [verify]
    int verify_trials = 12;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

} // namespace eigencurve

#endif
