#ifndef EIGENCURVE_TRIDIAG_HPP
#define EIGENCURVE_TRIDIAG_HPP

#include <cstddef>
#include <vector>

namespace eigencurve {

/// Real tridiagonal matrix. lower[i] = A(i+1,i), upper[i] = A(i,i+1).
struct Tridiag {
    std::vector<double> lower; // n-1
    std::vector<double> diag;  // n
    std::vector<double> upper; // n-1

    Tridiag() = default;
    explicit Tridiag(std::size_t n) : lower(n ? n - 1 : 0, 0.0), diag(n, 0.0), upper(n ? n - 1 : 0, 0.0) {}

    std::size_t size() const { return diag.size(); }

    void mul(const std::vector<double>& x, std::vector<double>& y) const;
    std::vector<double> mul(const std::vector<double>& x) const;

    /// A + s*I
    Tridiag shifted(double s) const;

    double max_abs_row_sum() const;
    /// min_i (A_ii - sum_{j != i} |A_ij|); every eigenvalue is >= this.
    double gershgorin_lower() const;
    double gershgorin_upper() const;

    /// Row-major dense copy (for the oracle and matrix dumps).
    std::vector<double> dense() const;
};

/// LU factorization with partial pivoting (LAPACK dgttrf-style storage:
/// one fill-in superdiagonal).
class TridiagLU {
public:
    explicit TridiagLU(const Tridiag& A);

    bool singular() const { return singular_; }
    /// Solves A x = b in place. Returns false if the factorization was singular.
    bool solve(std::vector<double>& b) const;

private:
    std::vector<double> dl_, d_, du_, du2_;
    std::vector<int> ipiv_;
    bool singular_ = false;
};

/// Smallest eigenvalue of a tridiagonal matrix that is diagonally similar to
/// a symmetric one (lower[i]*upper[i] >= 0), found by Sturm-sequence
/// bisection to near machine precision.  Independent of the power-iteration
/// solver; used as a cross-check oracle.
double sturm_smallest_eigenvalue(const Tridiag& A);

/// Number of eigenvalues of the symmetric tridiagonal (d, e) strictly below x.
int sturm_count_below(const std::vector<double>& d, const std::vector<double>& e, double x);

} // namespace eigencurve

#endif
