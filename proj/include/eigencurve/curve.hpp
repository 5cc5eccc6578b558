#ifndef EIGENCURVE_CURVE_HPP
#define EIGENCURVE_CURVE_HPP

#include <optional>
#include <string>
#include <vector>

#include "eigencurve/parallel.hpp"
#include "eigencurve/spectral_maps.hpp"

namespace eigencurve {

enum class CaseTag { both_nonneg, m1_nonneg_m2_sign, m2_nonneg_m1_sign, both_sign };

std::string to_string(CaseTag tag);

/// Case tag plus the qualitative facts that sign pattern dictates,
/// for later cross-checking against a computed trace.
struct Classification {
    CaseTag tag = CaseTag::both_nonneg;
    int int_sign_m1 = 0, int_sign_m2 = 0; // -1 / 0 / +1 with a 1e-10 dead-band
    bool closed_expected = false;

    struct Prediction {
        std::string name;   // e.g. "lambda1_max"
        int expected_sign;  // -1, 0, +1
    };
    std::vector<Prediction> predictions;
};

Classification classify(const SpectralContext& ctx);

struct CurvePoint {
    double t = 0.0; // angle of the generating ray
    double l1 = 0.0, l2 = 0.0;
    double abs_F = 0.0;
    bool origin = false;
    bool tangent = false; // origin point doubling as the mu* tangency
};

struct EigencurveTrace {
    Classification classification;
    std::vector<CurvePoint> points; // ordered along the curve; closed traces
                                    // start and end at the origin point
    bool closed = false;

    // landmarks ("as applicable")
    double Lambda1_minus = 0.0, Lambda1_plus = 0.0;
    double Lambda2_minus = 0.0, Lambda2_plus = 0.0;
    std::optional<double> mu_star;
    double lambda1_max = 0.0, lambda1_min = 0.0;   // extremes over the trace
    double lambda2_bar = 0.0, lambda2_underbar = 0.0; // lambda2 at those extremes
    double lambda2_max = 0.0, lambda2_min = 0.0;
    double lambda1_at_lambda2_max = 0.0, lambda1_at_lambda2_min = 0.0;
    std::optional<double> lambda2_star; // nonzero crossing of the lambda2-axis
    std::vector<std::string> unbounded_directions;
    std::vector<std::string> warnings;
};

struct TraceOptions {
    int n_rays = 512;          // >= 64, rounded up to a multiple of 4
    double tol_curve = 1e-6;   // |F| bound certified per point
    double r_cap = 1e3;        // cap for rays with no finite Lambda-box bound
    int max_extra_rays = 1024; // adaptive angular refinement budget
    double arc_limit_rel = 0.02;
    ParallelMode parallel = ParallelMode::openmp;
};

/// Sweeps rays through the origin, collects the concave ray roots, orders
/// them along the curve and attaches the landmark values.
/// Throws InconsistentCase when the found topology contradicts the case tag.
EigencurveTrace trace_curve(const SpectralContext& ctx, const TraceOptions& opts = {});

/// Concave scan phi_t(r) = F(r cos t, r sin t) along one ray of the sweep.
RayRoot root_on_ray(double t, const SpectralContext& ctx, double r_cap = 1e3);

/// Nonzero root of f_mu (the ray lambda2 = mu*lambda1): h1(mu).
/// Returns 0.0 at the tangency slope mu*, nullopt when lambda1 = 0 is the
/// only zero on the ray.
std::optional<double> h1_of_mu(double mu, const SpectralContext& ctx);

/// h2(mu) = mu * h1(mu).
std::optional<double> h2_of_mu(double mu, const SpectralContext& ctx);

/// Branches of the curve as tabulated functions of lambda1.
struct BranchMaps {
    bool two_branches = false;
    std::vector<std::pair<double, double>> upper; // H+ (or the single H), sorted by l1
    std::vector<std::pair<double, double>> lower; // H-, empty for one branch
    // monotonicity audit: largest violation of "upper decreasing" and
    // "lower increasing" on the sampled domain (exact zero means monotone)
    double upper_decrease_violation = 0.0;
    double lower_increase_violation = 0.0;
};

/// Splits the trace at the lambda1 extremes.  Throws BranchSplitFailed when
/// the extreme is not unique within tolerance.
BranchMaps H_maps(const EigencurveTrace& trace);

} // namespace eigencurve

#endif
