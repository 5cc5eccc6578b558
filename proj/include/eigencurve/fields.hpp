#ifndef EIGENCURVE_FIELDS_HPP
#define EIGENCURVE_FIELDS_HPP

#include <functional>
#include <string>
#include <vector>

#include "eigencurve/geometry.hpp"

namespace eigencurve {

enum class SignClass { nonneg_nontrivial, nonpos_nontrivial, changes_sign, zero };

std::string to_string(SignClass s);

/// A weight m_i or potential c_i sampled at the nodes of one subdomain.
/// The samples are the ground truth; kind is metadata about their origin.
struct CoefficientField {
    int subdomain = 1; // 1 or 2
    std::string kind = "sampled";
    std::vector<double> values;      // one per node of the subdomain
    std::vector<double> node_coords; // matching coordinates
    int radial_power = 0;
    double h = 0.0;

    std::size_t size() const { return values.size(); }
    double max_abs() const;
    /// Default threshold under which a sample counts as zero.
    double tau_zero() const { return 1e-12 * max_abs(); }

    SignClass sign_class() const;
    double integral() const; ///< shorthand for integrate(*this)
};

/// Maximal closed subintervals where a field vanishes (samples <= tau in
/// absolute value), with the distance-to-boundary condition recorded.
struct ZeroSet {
    struct Interval {
        double lo = 0.0, hi = 0.0;
        std::size_t first_node = 0, last_node = 0;
        bool interior = false; // closure avoids the subdomain's true boundary
    };
    std::vector<Interval> intervals;

    bool empty() const { return intervals.empty(); }
    /// Widest interior interval; throws EmptyZeroSet when none qualifies.
    const Interval& largest_interior() const;
};

CoefficientField field_constant(const Mesh& mesh, int subdomain, double value);
CoefficientField field_from_function(const Mesh& mesh, int subdomain,
                                     const std::function<double(double)>& f,
                                     std::string kind = "expr");
CoefficientField field_from_samples(const Mesh& mesh, int subdomain, std::vector<double> samples);
/// Piecewise-constant table: values[i] on [breakpoints[i], breakpoints[i+1});
/// nodes left of the first breakpoint take values.front(), right of the last
/// take values.back().
CoefficientField field_piecewise(const Mesh& mesh, int subdomain,
                                 const std::vector<double>& breakpoints,
                                 const std::vector<double>& values);

/// Sign classification with tolerance tau_zero; requires the field to be
/// nontrivial when required_nontrivial is set (else throws AllZero).
SignClass classify_sign(const CoefficientField& field, bool required_nontrivial = false);

/// Weighted integral of the nodal piecewise-linear interpolant against r^k.
/// Exact for piecewise-linear data (reduces to composite trapezoid when k=0).
double integrate(const CoefficientField& field);

/// Nodal weight w_i of that quadrature rule, so integrate(f) = sum_i f_i w_i.
double quadrature_weight(const CoefficientField& field, std::size_t node);

ZeroSet zero_set(const CoefficientField& field, double tau_zero);
ZeroSet zero_set(const CoefficientField& field);

} // namespace eigencurve

#endif
