#include "eigencurve/curve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "eigencurve/errors.hpp"

namespace eigencurve {

namespace {

constexpr double kTau = 2.0 * M_PI;

double wrap_angle(double t) {
    t = std::fmod(t, kTau);
    return t < 0.0 ? t + kTau : t;
}

} // namespace

std::string to_string(CaseTag tag) {
    switch (tag) {
    case CaseTag::both_nonneg: return "both_nonneg";
    case CaseTag::m1_nonneg_m2_sign: return "m1_nonneg_m2_sign";
    case CaseTag::m2_nonneg_m1_sign: return "m2_nonneg_m1_sign";
    case CaseTag::both_sign: return "both_sign";
    }
    return "?";
}

Classification classify(const SpectralContext& ctx) {
    Classification c;
    c.int_sign_m1 = ctx.integral_sign(ctx.int_m1);
    c.int_sign_m2 = ctx.integral_sign(ctx.int_m2);
    const bool cs1 = ctx.sign1 == SignClass::changes_sign;
    const bool cs2 = ctx.sign2 == SignClass::changes_sign;
    if (cs1 && cs2) {
        c.tag = CaseTag::both_sign;
        c.closed_expected = true;
        if (c.int_sign_m1 < 0 && c.int_sign_m2 < 0) {
            c.predictions.push_back({"lambda1_max", +1});
            c.predictions.push_back({"lambda1_min", -1});
        }
    } else if (cs2) {
        c.tag = CaseTag::m1_nonneg_m2_sign;
        c.closed_expected = false;
        // sign table for the rightmost point, driven by int m2
        c.predictions.push_back({"lambda1_max", c.int_sign_m2 == 0 ? 0 : +1});
        c.predictions.push_back({"lambda2_bar", -c.int_sign_m2});
    } else if (cs1) {
        c.tag = CaseTag::m2_nonneg_m1_sign;
        c.closed_expected = false;
        // mirrored across the diagonal
        c.predictions.push_back({"lambda2_max", c.int_sign_m1 == 0 ? 0 : +1});
        c.predictions.push_back({"lambda1_at_lambda2_max", -c.int_sign_m1});
    } else {
        c.tag = CaseTag::both_nonneg;
        c.closed_expected = false;
        c.predictions.push_back({"lambda1_max", +1});
        c.predictions.push_back({"lambda2_max", +1});
    }
    return c;
}

namespace {

struct RaySlot {
    int kind = 0; // 0 none, 1 root, 2 unbounded
    CurvePoint p;
    double t = 0.0;
};

void scan_rays(const SpectralContext& ctx, const std::vector<double>& angles,
               const TraceOptions& opts, double f_tol, double w_tol,
               std::vector<RaySlot>& slots) {
    slots.assign(angles.size(), {});
    parallel_for_index(angles.size(), opts.parallel, [&](std::size_t j) {
        const double t = angles[j];
        const double d1 = std::cos(t), d2 = std::sin(t);
        const double cap = ray_cap(ctx, d1, d2, opts.r_cap);
        auto phi = [&](double r) { return eval_F(r * d1, r * d2, ctx); };
        RaySlot s;
        s.t = t;
        const RayRoot rr = ray_root(phi, cap, f_tol, w_tol);
        if (rr.status == RayRoot::Status::root) {
            s.kind = 1;
            s.p.t = t;
            s.p.l1 = rr.r * d1;
            s.p.l2 = rr.r * d2;
            s.p.abs_F = rr.f_abs;
        } else if (rr.status == RayRoot::Status::unbounded) {
            s.kind = 2;
        }
        slots[j] = s;
    });
}

std::optional<std::array<double, 2>> find_interior_point(const SpectralContext& ctx,
                                                         const std::vector<CurvePoint>& pts) {
    // centroid of the traced points: inside the convex region {F > 0}
    // whenever it is strictly interior, which it is away from degeneracy
    if (!pts.empty()) {
        double cx = 0.0, cy = 0.0;
        for (const auto& q : pts) {
            cx += q.l1;
            cy += q.l2;
        }
        cx /= double(pts.size());
        cy /= double(pts.size());
        if (eval_F(cx, cy, ctx) > 1e-8) return std::array<double, 2>{cx, cy};
    }
    // fall back to short probes around the origin
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        for (int k = 0; k < 32; ++k) {
            const double t = kTau * (k + 0.5) / 32.0;
            const double x = eps * std::cos(t), y = eps * std::sin(t);
            if (eval_F(x, y, ctx) > 1e-8) return std::array<double, 2>{x, y};
        }
    }
    return std::nullopt;
}

} // namespace

RayRoot root_on_ray(double t, const SpectralContext& ctx, double r_cap) {
    const double d1 = std::cos(t), d2 = std::sin(t);
    auto phi = [&](double r) { return eval_F(r * d1, r * d2, ctx); };
    return ray_root(phi, ray_cap(ctx, d1, d2, r_cap), 1e-9, 1e-9);
}

std::optional<double> h1_of_mu(double mu, const SpectralContext& ctx) {
    const double nrm = std::hypot(1.0, mu);
    const double d1 = 1.0 / nrm, d2 = mu / nrm;
    for (double s : {+1.0, -1.0}) {
        auto phi = [&](double r) { return eval_F(s * r * d1, s * r * d2, ctx); };
        const double cap = ray_cap(ctx, s * d1, s * d2, 1e3);
        const RayRoot rr = ray_root(phi, cap, 1e-9, 1e-9);
        if (rr.status == RayRoot::Status::root) return s * rr.r * d1;
        if (rr.status == RayRoot::Status::tangent) return 0.0;
    }
    return std::nullopt;
}

std::optional<double> h2_of_mu(double mu, const SpectralContext& ctx) {
    auto h1 = h1_of_mu(mu, ctx);
    if (!h1) return std::nullopt;
    return mu * *h1;
}

EigencurveTrace trace_curve(const SpectralContext& ctx, const TraceOptions& opts) {
    if (opts.n_rays < 64) throw Error("trace_curve: n_rays must be at least 64");
    EigencurveTrace tr;
    tr.classification = classify(ctx);
    tr.Lambda1_minus = ctx.Lambda1_minus;
    tr.Lambda1_plus = ctx.Lambda1_plus;
    tr.Lambda2_minus = ctx.Lambda2_minus;
    tr.Lambda2_plus = ctx.Lambda2_plus;
    tr.mu_star = ctx.mu_star_value;

    const double f_tol = std::min(1e-9, opts.tol_curve);
    const double w_tol = 1e-9;

    const int n = ((opts.n_rays + 3) / 4) * 4;
    std::vector<double> angles(n);
    for (int j = 0; j < n; ++j) angles[j] = kTau * j / n;

    // Fans between each tangent direction and its nearest axis direction:
    // when |mu*| is extreme the curve's lambda1 (or lambda2) lobe is pinched
    // into that window and can slip between uniformly spaced rays.
    {
        const double tstar =
            ctx.mu_star_value ? std::atan2(*ctx.mu_star_value, 1.0) : 0.5 * M_PI;
        for (double tdir : {tstar, tstar + M_PI}) {
            double best_axis = 0.0, best_gap = 1e300;
            for (int q = 0; q < 4; ++q) {
                const double axis = 0.5 * M_PI * q;
                const double gap = std::abs(std::remainder(tdir - axis, kTau));
                if (gap < best_gap) {
                    best_gap = gap;
                    best_axis = axis;
                }
            }
            if (best_gap < 1e-12) continue; // tangent on an axis: nothing pinched
            const double dt = std::remainder(best_axis - tdir, kTau);
            for (int j = 1; j < 48; ++j) angles.push_back(wrap_angle(tdir + dt * j / 48.0));
            for (int k = 0; k < 10; ++k) { // geometric ladders toward both ends
                angles.push_back(wrap_angle(tdir + dt / (96 << k)));
                angles.push_back(wrap_angle(best_axis - dt / (96 << k)));
            }
        }
    }

    std::vector<RaySlot> slots;
    scan_rays(ctx, angles, opts, f_tol, w_tol, slots);

    std::vector<CurvePoint> pts;
    std::vector<double> unbounded_ts;
    for (const RaySlot& s : slots) {
        if (s.kind == 1) pts.push_back(s.p);
        else if (s.kind == 2) {
            unbounded_ts.push_back(s.t);
            tr.unbounded_directions.push_back("t=" + std::to_string(s.t));
        }
    }

    // the origin always belongs to the curve; its ray angle is the tangent
    // direction (1, mu*), or the vertical axis when int m2 = 0
    CurvePoint origin;
    origin.origin = true;
    origin.tangent = true;
    origin.abs_F = std::abs(eval_F(0.0, 0.0, ctx));
    origin.t = ctx.mu_star_value ? wrap_angle(std::atan2(*ctx.mu_star_value, 1.0)) : 0.5 * M_PI;

    if (pts.empty()) {
        // degenerate configuration: the curve reduces to the origin
        tr.points.push_back(origin);
        tr.closed = tr.classification.closed_expected;
        tr.warnings.push_back("curve degenerates to the origin; no ray roots found");
        return tr;
    }

    const auto interior = find_interior_point(ctx, pts);
    if (!interior) {
        tr.points.push_back(origin);
        tr.closed = tr.classification.closed_expected;
        tr.warnings.push_back("no interior point of {F>0} found near the origin");
        return tr;
    }
    const double px = (*interior)[0], py = (*interior)[1];

    auto angle_around = [&](const CurvePoint& q) { return wrap_angle(std::atan2(q.l2 - py, q.l1 - px)); };
    auto order_points = [&](std::vector<CurvePoint>& v) {
        std::sort(v.begin(), v.end(), [&](const CurvePoint& a, const CurvePoint& b) {
            return angle_around(a) < angle_around(b);
        });
    };

    pts.push_back(origin);
    order_points(pts);

    // adaptive angular refinement where consecutive points are far apart
    double span = 0.0;
    {
        double l1lo = 0, l1hi = 0, l2lo = 0, l2hi = 0;
        for (const auto& q : pts) {
            l1lo = std::min(l1lo, q.l1);
            l1hi = std::max(l1hi, q.l1);
            l2lo = std::min(l2lo, q.l2);
            l2hi = std::max(l2hi, q.l2);
        }
        span = std::hypot(l1hi - l1lo, l2hi - l2lo);
    }
    int budget = opts.max_extra_rays;
    for (int round = 0; round < 3 && budget > 0; ++round) {
        std::vector<double> extra;
        const double min_dt = kTau / n / 64.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const CurvePoint &a = pts[i], &b = pts[i + 1];
            if (a.origin || b.origin) continue;
            const double gap = std::hypot(a.l1 - b.l1, a.l2 - b.l2);
            if (gap <= opts.arc_limit_rel * span) continue;
            double dt = std::remainder(b.t - a.t, kTau);
            if (std::abs(dt) <= min_dt) continue;
            extra.push_back(wrap_angle(a.t + 0.5 * dt));
            if (static_cast<int>(extra.size()) >= budget) break;
        }
        if (extra.empty()) break;
        budget -= static_cast<int>(extra.size());
        std::vector<RaySlot> more;
        scan_rays(ctx, extra, opts, f_tol, w_tol, more);
        for (const RaySlot& s : more)
            if (s.kind == 1) pts.push_back(s.p);
        order_points(pts);
    }

    // drop duplicates (e.g. rays grazing the origin tangency)
    {
        std::vector<CurvePoint> unique;
        for (const auto& q : pts) {
            bool dup = false;
            if (!unique.empty()) {
                const auto& r = unique.back();
                if (std::hypot(q.l1 - r.l1, q.l2 - r.l2) <=
                    1e-9 * (1.0 + std::abs(q.l1) + std::abs(q.l2)))
                    dup = true;
            }
            if (dup && q.origin) unique.back() = q; // keep the origin marker
            else if (!dup)
                unique.push_back(q);
        }
        pts.swap(unique);
    }

    // topology audit: the region {F > 0} is bounded (closed curve) exactly
    // when no sweep ray stayed positive out to its cap
    const bool closed_found = tr.unbounded_directions.empty();
    if (tr.classification.closed_expected && !closed_found)
        throw InconsistentCase("expected a closed curve but " +
                               std::to_string(tr.unbounded_directions.size()) +
                               " rays never left {F>0}");
    if (!tr.classification.closed_expected && closed_found)
        throw InconsistentCase("found a closed curve for case " +
                               to_string(tr.classification.tag));
    tr.closed = tr.classification.closed_expected;

    if (tr.closed) {
        // rotate so the polyline starts and ends at the origin
        std::size_t i0 = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (pts[i].origin) i0 = i;
        std::rotate(pts.begin(), pts.begin() + i0, pts.end());
        pts.push_back(pts.front());
    } else {
        // break the cycle inside the opening: seen from p, the opening sits
        // asymptotically at the unbounded ray directions
        double sx = 0.0, sy = 0.0;
        for (double t : unbounded_ts) {
            sx += std::cos(t);
            sy += std::sin(t);
        }
        const double a_u = wrap_angle(std::atan2(sy, sx));
        std::size_t ibreak = 0;
        while (ibreak < pts.size() && angle_around(pts[ibreak]) < a_u) ++ibreak;
        if (ibreak == pts.size()) ibreak = 0;
        std::rotate(pts.begin(), pts.begin() + ibreak, pts.end());
    }
    tr.points = std::move(pts);

    // landmarks from the trace
    const CurvePoint* amax = &tr.points.front();
    const CurvePoint* amin = &tr.points.front();
    const CurvePoint* bmax = &tr.points.front();
    const CurvePoint* bmin = &tr.points.front();
    for (const auto& q : tr.points) {
        if (q.l1 > amax->l1) amax = &q;
        if (q.l1 < amin->l1) amin = &q;
        if (q.l2 > bmax->l2) bmax = &q;
        if (q.l2 < bmin->l2) bmin = &q;
    }
    tr.lambda1_max = amax->l1;
    tr.lambda2_bar = amax->l2;
    tr.lambda1_min = amin->l1;
    tr.lambda2_underbar = amin->l2;
    tr.lambda2_max = bmax->l2;
    tr.lambda1_at_lambda2_max = bmax->l1;
    tr.lambda2_min = bmin->l2;
    tr.lambda1_at_lambda2_min = bmin->l1;

    // nonzero crossing of the lambda2-axis (the h2 limit at mu -> +-inf)
    for (double s : {+1.0, -1.0}) {
        auto phi = [&](double r) { return eval_F(0.0, s * r, ctx); };
        const RayRoot rr = ray_root(phi, ray_cap(ctx, 0.0, s, opts.r_cap), f_tol, w_tol);
        if (rr.status == RayRoot::Status::root) {
            tr.lambda2_star = s * rr.r;
            break;
        }
    }
    return tr;
}

BranchMaps H_maps(const EigencurveTrace& trace) {
    BranchMaps bm;
    std::vector<CurvePoint> pts = trace.points;
    if (trace.closed && pts.size() > 1 && pts.front().origin && pts.back().origin) pts.pop_back();
    if (pts.size() < 3) throw BranchSplitFailed("trace has too few points");

    std::size_t imax = 0, imin = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].l1 > pts[imax].l1) imax = i;
        if (pts[i].l1 < pts[imin].l1) imin = i;
    }
    // extreme uniqueness: points near lambda1_max must not spread in lambda2
    double l2_span = 0.0;
    {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto& q : pts) {
            lo = std::min(lo, q.l2);
            hi = std::max(hi, q.l2);
        }
        l2_span = hi - lo;
        const double tol_x = 1e-8 * (1.0 + std::abs(pts[imax].l1));
        double lo2 = std::numeric_limits<double>::infinity(), hi2 = -lo2;
        for (const auto& q : pts)
            if (q.l1 > pts[imax].l1 - tol_x) {
                lo2 = std::min(lo2, q.l2);
                hi2 = std::max(hi2, q.l2);
            }
        if (hi2 - lo2 > 0.05 * l2_span && l2_span > 0.0)
            throw BranchSplitFailed("lambda1 extreme is not unique within tolerance");
    }

    const bool single_branch = trace.classification.tag == CaseTag::both_nonneg;
    auto by_l1 = [](const CurvePoint& a, const CurvePoint& b) { return a.l1 < b.l1; };

    if (single_branch) {
        bm.two_branches = false;
        std::vector<CurvePoint> all = pts;
        std::sort(all.begin(), all.end(), by_l1);
        for (const auto& q : all) bm.upper.push_back({q.l1, q.l2});
    } else {
        bm.two_branches = true;
        std::vector<CurvePoint> armA, armB;
        if (!trace.closed) {
            for (std::size_t i = 0; i <= imax; ++i) armA.push_back(pts[i]);
            for (std::size_t i = imax; i < pts.size(); ++i) armB.push_back(pts[i]);
        } else {
            // two arcs of the cycle between the lambda1 extremes
            std::size_t i = imin;
            for (;;) {
                armA.push_back(pts[i]);
                if (i == imax) break;
                i = (i + 1) % pts.size();
            }
            i = imax;
            for (;;) {
                armB.push_back(pts[i]);
                if (i == imin) break;
                i = (i + 1) % pts.size();
            }
        }
        auto mean_l2 = [](const std::vector<CurvePoint>& v) {
            double s = 0.0;
            for (const auto& q : v) s += q.l2;
            return v.empty() ? 0.0 : s / double(v.size());
        };
        if (mean_l2(armA) < mean_l2(armB)) armA.swap(armB);
        std::sort(armA.begin(), armA.end(), by_l1);
        std::sort(armB.begin(), armB.end(), by_l1);
        for (const auto& q : armA) bm.upper.push_back({q.l1, q.l2});
        for (const auto& q : armB) bm.lower.push_back({q.l1, q.l2});
    }

    auto max_violation = [](const std::vector<std::pair<double, double>>& v, bool decreasing) {
        double worst = 0.0;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            const double d = v[i + 1].second - v[i].second; // l1 ascending
            worst = std::max(worst, decreasing ? d : -d);
        }
        return worst;
    };
    bm.upper_decrease_violation = max_violation(bm.upper, true);
    bm.lower_increase_violation = max_violation(bm.lower, false);
    return bm;
}

} // namespace eigencurve
