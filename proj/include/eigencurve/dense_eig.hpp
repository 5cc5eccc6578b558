#ifndef EIGENCURVE_DENSE_EIG_HPP
#define EIGENCURVE_DENSE_EIG_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace eigencurve {

/// Small row-major dense matrix for the verification oracle.
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t size) : n(size), a(size * size, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// All eigenvalues of a real dense matrix: balancing-free Hessenberg
/// reduction (stabilized elementary similarity) followed by Francis
/// double-shift QR with deflation.  Throws NoConvergence if an eigenvalue
/// fails to settle within the iteration budget.
std::vector<std::complex<double>> dense_eigenvalues(DenseMatrix A);

/// Eigenvector for an (approximately) real eigenvalue of A, computed by a
/// few steps of dense inverse iteration with partial-pivoting LU.
std::vector<double> dense_eigenvector(const DenseMatrix& A, double eigenvalue);

/// Solves A x = b with partial pivoting; returns false when singular to
/// working precision.
bool dense_solve(DenseMatrix A, std::vector<double>& b);

} // namespace eigencurve

#endif
