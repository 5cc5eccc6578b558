#include "eigencurve/fields.hpp"

#include <algorithm>
#include <cmath>

#include "eigencurve/errors.hpp"

namespace eigencurve {

std::string to_string(SignClass s) {
    switch (s) {
    case SignClass::nonneg_nontrivial: return "nonneg_nontrivial";
    case SignClass::nonpos_nontrivial: return "nonpos_nontrivial";
    case SignClass::changes_sign: return "changes_sign";
    case SignClass::zero: return "zero";
    }
    return "?";
}

double CoefficientField::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

SignClass CoefficientField::sign_class() const { return classify_sign(*this, false); }

double CoefficientField::integral() const { return integrate(*this); }

namespace {

std::vector<double> subdomain_coords(const Mesh& mesh, int subdomain) {
    if (subdomain == 1) return mesh.nodes1;
    if (subdomain == 2) return mesh.nodes2;
    throw InvalidGeometry("subdomain must be 1 or 2");
}

double subdomain_h(const Mesh& mesh, int subdomain) { return subdomain == 1 ? mesh.h1 : mesh.h2; }

// Hat-function moments over one cell [a,b]: weight of the left and right node
// for the integral of the linear interpolant against r^k.
void hat_weights(double a, double b, int k, double& wl, double& wr) {
    const double h = b - a;
    if (k == 0) {
        wl = wr = 0.5 * h;
        return;
    }
    const double m0 = (std::pow(b, k + 1) - std::pow(a, k + 1)) / double(k + 1);
    const double m1 = (std::pow(b, k + 2) - std::pow(a, k + 2)) / double(k + 2);
    wl = (b * m0 - m1) / h;
    wr = (m1 - a * m0) / h;
}

} // namespace

CoefficientField field_constant(const Mesh& mesh, int subdomain, double value) {
    CoefficientField f;
    f.subdomain = subdomain;
    f.kind = "constant";
    f.node_coords = subdomain_coords(mesh, subdomain);
    f.values.assign(f.node_coords.size(), value);
    f.radial_power = mesh.radial_power;
    f.h = subdomain_h(mesh, subdomain);
    return f;
}

CoefficientField field_from_function(const Mesh& mesh, int subdomain,
                                     const std::function<double(double)>& fn, std::string kind) {
    CoefficientField f;
    f.subdomain = subdomain;
    f.kind = std::move(kind);
    f.node_coords = subdomain_coords(mesh, subdomain);
    f.values.resize(f.node_coords.size());
    for (std::size_t i = 0; i < f.node_coords.size(); ++i) f.values[i] = fn(f.node_coords[i]);
    f.radial_power = mesh.radial_power;
    f.h = subdomain_h(mesh, subdomain);
    return f;
}

CoefficientField field_from_samples(const Mesh& mesh, int subdomain, std::vector<double> samples) {
    CoefficientField f;
    f.subdomain = subdomain;
    f.kind = "sampled";
    f.node_coords = subdomain_coords(mesh, subdomain);
    if (samples.size() != f.node_coords.size())
        throw InvalidGeometry("sample count does not match subdomain node count");
    f.values = std::move(samples);
    f.radial_power = mesh.radial_power;
    f.h = subdomain_h(mesh, subdomain);
    return f;
}

CoefficientField field_piecewise(const Mesh& mesh, int subdomain,
                                 const std::vector<double>& breakpoints,
                                 const std::vector<double>& values) {
    if (breakpoints.size() != values.size() + 1)
        throw ConfigError("piecewise field needs one more breakpoint than values");
    if (!std::is_sorted(breakpoints.begin(), breakpoints.end()))
        throw ConfigError("piecewise breakpoints must be sorted");
    auto fn = [&](double x) {
        if (x < breakpoints.front()) return values.front();
        for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
            if (x < breakpoints[i + 1]) return values[i];
        return values.back();
    };
    auto f = field_from_function(mesh, subdomain, fn, "piecewise");
    return f;
}

SignClass classify_sign(const CoefficientField& field, bool required_nontrivial) {
    const double tau = field.tau_zero();
    bool pos = false, neg = false;
    for (double v : field.values) {
        if (v > tau) pos = true;
        else if (v < -tau) neg = true;
    }
    SignClass s;
    if (pos && neg) s = SignClass::changes_sign;
    else if (pos) s = SignClass::nonneg_nontrivial;
    else if (neg) s = SignClass::nonpos_nontrivial;
    else s = SignClass::zero;
    if (required_nontrivial && s == SignClass::zero)
        throw AllZero("field is identically zero but a nontrivial weight is required");
    return s;
}

double quadrature_weight(const CoefficientField& field, std::size_t node) {
    const auto& x = field.node_coords;
    double w = 0.0, wl, wr;
    if (node > 0) {
        hat_weights(x[node - 1], x[node], field.radial_power, wl, wr);
        w += wr;
    }
    if (node + 1 < x.size()) {
        hat_weights(x[node], x[node + 1], field.radial_power, wl, wr);
        w += wl;
    }
    return w;
}

double integrate(const CoefficientField& field) {
    const auto& x = field.node_coords;
    const auto& v = field.values;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        double wl, wr;
        hat_weights(x[i], x[i + 1], field.radial_power, wl, wr);
        acc += wl * v[i] + wr * v[i + 1];
    }
    return acc;
}

const ZeroSet::Interval& ZeroSet::largest_interior() const {
    const Interval* best = nullptr;
    for (const auto& iv : intervals)
        if (iv.interior && (!best || iv.hi - iv.lo > best->hi - best->lo)) best = &iv;
    if (!best) throw EmptyZeroSet("no interior zero-set interval");
    return *best;
}

ZeroSet zero_set(const CoefficientField& field, double tau) {
    ZeroSet zs;
    const auto& v = field.values;
    const auto& x = field.node_coords;
    const std::size_t n = v.size();
    // Sigma (at the interface end) is a true boundary for both subdomains;
    // the left end of Omega1 is the symmetry axis, not a boundary.
    const bool left_is_boundary = field.subdomain == 2;
    const bool right_is_boundary = true;
    std::size_t i = 0;
    while (i < n) {
        if (std::abs(v[i]) <= tau) {
            std::size_t j = i;
            while (j + 1 < n && std::abs(v[j + 1]) <= tau) ++j;
            ZeroSet::Interval iv;
            iv.first_node = i;
            iv.last_node = j;
            iv.lo = x[i];
            iv.hi = x[j];
            const bool touches_left = (i == 0) && left_is_boundary;
            const bool touches_right = (j == n - 1) && right_is_boundary;
            iv.interior = !touches_left && !touches_right;
            zs.intervals.push_back(iv);
            i = j + 1;
        } else {
            ++i;
        }
    }
    return zs;
}

ZeroSet zero_set(const CoefficientField& field) { return zero_set(field, field.tau_zero()); }

} // namespace eigencurve
