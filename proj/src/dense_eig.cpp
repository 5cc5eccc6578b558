#include "eigencurve/dense_eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eigencurve/errors.hpp"

namespace eigencurve {

namespace {

double sign_like(double magnitude, double carrier) {
    return carrier >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

// Reduction to upper Hessenberg form by stabilized elementary similarity
// transformations (row/column elimination with pivoting).
void to_hessenberg(DenseMatrix& H) {
    const std::size_t n = H.n;
    if (n < 3) return;
    for (std::size_t m = 1; m + 1 < n; ++m) {
        // pivot: largest entry in column m-1 below row m-1
        std::size_t piv = m;
        double big = std::abs(H.at(m, m - 1));
        for (std::size_t i = m + 1; i < n; ++i) {
            if (std::abs(H.at(i, m - 1)) > big) {
                big = std::abs(H.at(i, m - 1));
                piv = i;
            }
        }
        if (piv != m) {
            for (std::size_t j = m - 1; j < n; ++j) std::swap(H.at(piv, j), H.at(m, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(H.at(i, piv), H.at(i, m));
        }
        const double pivot = H.at(m, m - 1);
        if (pivot == 0.0) continue;
        for (std::size_t i = m + 1; i < n; ++i) {
            double y = H.at(i, m - 1);
            if (y == 0.0) continue;
            y /= pivot;
            H.at(i, m - 1) = 0.0;
            for (std::size_t j = m; j < n; ++j) H.at(i, j) -= y * H.at(m, j);
            for (std::size_t k = 0; k < n; ++k) H.at(k, m) += y * H.at(k, i);
        }
    }
    // clear the numerical junk below the first subdiagonal
    for (std::size_t i = 2; i < n; ++i)
        for (std::size_t j = 0; j + 1 < i; ++j) H.at(i, j) = 0.0;
}

} // namespace

std::vector<std::complex<double>> dense_eigenvalues(DenseMatrix A) {
    const std::size_t n = A.n;
    std::vector<std::complex<double>> eig(n);
    if (n == 0) return eig;
    if (n == 1) {
        eig[0] = A.at(0, 0);
        return eig;
    }
    to_hessenberg(A);

    const double eps = std::numeric_limits<double>::epsilon();
    double anorm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = (i > 0 ? i - 1 : 0); j < n; ++j) anorm += std::abs(A.at(i, j));
    if (anorm == 0.0) anorm = 1.0;

    auto H = [&](std::size_t i, std::size_t j) -> double& { return A.at(i, j); };

    long en = static_cast<long>(n) - 1;
    double t = 0.0;
    double p = 0, q = 0, r = 0, x = 0, y = 0, z = 0, w = 0, s = 0;

    while (en >= 0) {
        int its = 0;
        for (;;) {
            // find small subdiagonal element
            long l;
            for (l = en; l >= 1; --l) {
                s = std::abs(H(l - 1, l - 1)) + std::abs(H(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(H(l, l - 1)) <= eps * s) {
                    H(l, l - 1) = 0.0;
                    break;
                }
            }
            if (l < 0) l = 0;
            x = H(en, en);
            if (l == en) { // one root found
                eig[en] = x + t;
                --en;
                break;
            }
            y = H(en - 1, en - 1);
            w = H(en, en - 1) * H(en - 1, en);
            if (l == en - 1) { // two roots found
                p = 0.5 * (y - x);
                q = p * p + w;
                z = std::sqrt(std::abs(q));
                x += t;
                if (q >= 0.0) { // real pair
                    z = p + sign_like(z, p);
                    eig[en - 1] = x + z;
                    eig[en] = (z != 0.0) ? x - w / z : x + z;
                } else { // complex pair
                    eig[en - 1] = std::complex<double>(x + p, z);
                    eig[en] = std::complex<double>(x + p, -z);
                }
                en -= 2;
                break;
            }
            if (its == 60) throw NoConvergence("dense QR iteration stalled");
            if (its == 10 || its == 30) { // exceptional shift
                t += x;
                for (long i = 0; i <= en; ++i) H(i, i) -= x;
                s = std::abs(H(en, en - 1)) + std::abs(H(en - 1, en - 2));
                x = y = 0.75 * s;
                w = -0.4375 * s * s;
            }
            ++its;
            // two consecutive small subdiagonal elements
            long m;
            for (m = en - 2; m >= l; --m) {
                z = H(m, m);
                r = x - z;
                s = y - z;
                p = (r * s - w) / H(m + 1, m) + H(m, m + 1);
                q = H(m + 1, m + 1) - z - r - s;
                r = H(m + 2, m + 1);
                s = std::abs(p) + std::abs(q) + std::abs(r);
                p /= s;
                q /= s;
                r /= s;
                if (m == l) break;
                const double tst1 =
                    std::abs(p) * (std::abs(H(m - 1, m - 1)) + std::abs(z) + std::abs(H(m + 1, m + 1)));
                const double tst2 = std::abs(H(m, m - 1)) * (std::abs(q) + std::abs(r));
                if (tst2 <= eps * tst1) break;
            }
            for (long i = m + 2; i <= en; ++i) {
                H(i, i - 2) = 0.0;
                if (i != m + 2) H(i, i - 3) = 0.0;
            }
            // double QR step on rows l..en, columns m..en
            for (long k = m; k <= en - 1; ++k) {
                const bool notlast = (k != en - 1);
                if (k != m) {
                    p = H(k, k - 1);
                    q = H(k + 1, k - 1);
                    r = notlast ? H(k + 2, k - 1) : 0.0;
                    x = std::abs(p) + std::abs(q) + std::abs(r);
                    if (x == 0.0) continue;
                    p /= x;
                    q /= x;
                    r /= x;
                }
                s = sign_like(std::sqrt(p * p + q * q + r * r), p);
                if (k == m) {
                    if (l != m) H(k, k - 1) = -H(k, k - 1);
                } else {
                    H(k, k - 1) = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                z = r / s;
                q /= p;
                r /= p;
                // row modification
                for (long j = k; j <= en; ++j) {
                    double pp = H(k, j) + q * H(k + 1, j);
                    if (notlast) {
                        pp += r * H(k + 2, j);
                        H(k + 2, j) -= pp * z;
                    }
                    H(k + 1, j) -= pp * y;
                    H(k, j) -= pp * x;
                }
                // column modification
                const long imax = std::min<long>(en, k + 3);
                for (long i = l; i <= imax; ++i) {
                    double pp = x * H(i, k) + y * H(i, k + 1);
                    if (notlast) {
                        pp += z * H(i, k + 2);
                        H(i, k + 2) -= pp * r;
                    }
                    H(i, k + 1) -= pp * q;
                    H(i, k) -= pp;
                }
            }
        }
    }
    std::sort(eig.begin(), eig.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return eig;
}

bool dense_solve(DenseMatrix A, std::vector<double>& b) {
    const std::size_t n = A.n;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double big = std::abs(A.at(col, col));
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(A.at(i, col)) > big) {
                big = std::abs(A.at(i, col));
                piv = i;
            }
        if (big == 0.0) return false;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A.at(piv, j), A.at(col, j));
            std::swap(b[piv], b[col]);
        }
        const double d = A.at(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            const double f = A.at(i, col) / d;
            if (f == 0.0) continue;
            A.at(i, col) = 0.0;
            for (std::size_t j = col + 1; j < n; ++j) A.at(i, j) -= f * A.at(col, j);
            b[i] -= f * b[col];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        double v = b[k];
        for (std::size_t j = k + 1; j < n; ++j) v -= A.at(k, j) * b[j];
        b[k] = v / A.at(k, k);
    }
    return true;
}

std::vector<double> dense_eigenvector(const DenseMatrix& A, double eigenvalue) {
    const std::size_t n = A.n;
    double scale = 0.0;
    for (double v : A.a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) scale = 1.0;
    double delta = 16.0 * std::numeric_limits<double>::epsilon() * scale * double(n);

    std::vector<double> v(n, 1.0);
    for (int attempt = 0; attempt < 6; ++attempt) {
        DenseMatrix B = A;
        for (std::size_t i = 0; i < n; ++i) B.at(i, i) -= eigenvalue + delta;
        bool ok = true;
        std::vector<double> w = v;
        for (int it = 0; it < 4 && ok; ++it) {
            ok = dense_solve(B, w);
            if (!ok) break;
            double mx = 0.0;
            for (double u : w) mx = std::max(mx, std::abs(u));
            if (!(mx > 0.0) || !std::isfinite(mx)) {
                ok = false;
                break;
            }
            for (double& u : w) u /= mx;
        }
        if (ok) {
            v = w;
            break;
        }
        delta *= 32.0; // move a bit further off the exactly singular shift
    }
    // orient so the largest-magnitude entry is positive
    double best = 0.0;
    for (double u : v)
        if (std::abs(u) > std::abs(best)) best = u;
    if (best < 0.0)
        for (double& u : v) u = -u;
    return v;
}

} // namespace eigencurve
