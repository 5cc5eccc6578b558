#include "eigencurve/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eigencurve/errors.hpp"

namespace eigencurve {

void Tridiag::mul(const std::vector<double>& x, std::vector<double>& y) const {
    const std::size_t n = size();
    y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = diag[i] * x[i];
        if (i > 0) v += lower[i - 1] * x[i - 1];
        if (i + 1 < n) v += upper[i] * x[i + 1];
        y[i] = v;
    }
}

std::vector<double> Tridiag::mul(const std::vector<double>& x) const {
    std::vector<double> y;
    mul(x, y);
    return y;
}

Tridiag Tridiag::shifted(double s) const {
    Tridiag B = *this;
    for (double& d : B.diag) d += s;
    return B;
}

double Tridiag::max_abs_row_sum() const {
    const std::size_t n = size();
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = std::abs(diag[i]);
        if (i > 0) r += std::abs(lower[i - 1]);
        if (i + 1 < n) r += std::abs(upper[i]);
        m = std::max(m, r);
    }
    return m;
}

double Tridiag::gershgorin_lower() const {
    const std::size_t n = size();
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(lower[i - 1]);
        if (i + 1 < n) r += std::abs(upper[i]);
        m = std::min(m, diag[i] - r);
    }
    return m;
}

double Tridiag::gershgorin_upper() const {
    const std::size_t n = size();
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(lower[i - 1]);
        if (i + 1 < n) r += std::abs(upper[i]);
        m = std::max(m, diag[i] + r);
    }
    return m;
}

std::vector<double> Tridiag::dense() const {
    const std::size_t n = size();
    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        a[i * n + i] = diag[i];
        if (i + 1 < n) {
            a[i * n + i + 1] = upper[i];
            a[(i + 1) * n + i] = lower[i];
        }
    }
    return a;
}

TridiagLU::TridiagLU(const Tridiag& A) {
    const std::size_t n = A.size();
    dl_ = A.lower;
    d_ = A.diag;
    du_ = A.upper;
    du2_.assign(n > 2 ? n - 2 : 0, 0.0);
    ipiv_.resize(n);
    for (std::size_t i = 0; i < n; ++i) ipiv_[i] = static_cast<int>(i);

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d_[i]) >= std::abs(dl_[i])) {
            // no interchange
            if (d_[i] != 0.0) {
                const double fact = dl_[i] / d_[i];
                dl_[i] = fact;
                d_[i + 1] -= fact * du_[i];
            }
        } else {
            const double fact = d_[i] / dl_[i];
            d_[i] = dl_[i];
            dl_[i] = fact;
            const double tmp = du_[i];
            du_[i] = d_[i + 1];
            d_[i + 1] = tmp - fact * d_[i + 1];
            if (i + 2 < n) {
                du2_[i] = du_[i + 1];
                du_[i + 1] = -fact * du_[i + 1];
            }
            ipiv_[i] = static_cast<int>(i + 1);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (d_[i] == 0.0) singular_ = true;
}

bool TridiagLU::solve(std::vector<double>& b) const {
    if (singular_) return false;
    const std::size_t n = d_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (ipiv_[i] == static_cast<int>(i)) {
            b[i + 1] -= dl_[i] * b[i];
        } else {
            const double tmp = b[i];
            b[i] = b[i + 1];
            b[i + 1] = tmp - dl_[i] * b[i];
        }
    }
    b[n - 1] /= d_[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
    for (std::size_t k = n; k-- > 2;) {
        const std::size_t i = k - 2;
        double v = b[i] - du_[i] * b[i + 1];
        if (i < du2_.size()) v -= du2_[i] * b[i + 2];
        b[i] = v;
        b[i] /= d_[i];
    }
    return true;
}

int sturm_count_below(const std::vector<double>& d, const std::vector<double>& e, double x) {
    const std::size_t n = d.size();
    int count = 0;
    double q = 1.0;
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    for (std::size_t i = 0; i < n; ++i) {
        q = (i == 0) ? d[0] - x : d[i] - x - e[i - 1] * e[i - 1] / q;
        if (q == 0.0) q = -tiny;
        if (q < 0.0) ++count;
    }
    return count;
}

double sturm_smallest_eigenvalue(const Tridiag& A) {
    const std::size_t n = A.size();
    // diagonal similarity to a symmetric tridiagonal: needs lower*upper >= 0
    std::vector<double> e(n > 1 ? n - 1 : 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double p = A.lower[i] * A.upper[i];
        if (p < 0.0)
            throw Error("sturm_smallest_eigenvalue: matrix is not symmetrizable (l*u < 0)");
        e[i] = std::sqrt(p);
    }
    double lo = A.gershgorin_lower(), hi = A.gershgorin_upper();
    // widen a hair so the target is strictly inside
    const double pad = 1e-8 * (1.0 + std::abs(lo) + std::abs(hi));
    lo -= pad;
    hi += pad;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count_below(A.diag, e, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace eigencurve
