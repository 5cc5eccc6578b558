#ifndef EIGENCURVE_EIGENSOLVE_HPP
#define EIGENCURVE_EIGENSOLVE_HPP

#include <complex>
#include <vector>

#include "eigencurve/operators.hpp"
#include "eigencurve/tridiag.hpp"

namespace eigencurve {

struct EigenOptions {
    double tol_eig = 1e-10;   // residual target |A phi - value phi|_inf
    int max_iter = 10000;
    double positivity_tol = 1e-8;
};

/// Principal eigenpair: eigenvalue of smallest real part with a positive
/// eigenfunction, max-norm-1 normalized (largest component is +1).
struct EigenResult {
    double value = 0.0;
    std::vector<double> eigenfunction;
    double residual = 0.0;
    double positivity_margin = 0.0;
    int iterations = 0;
};

/// Shifted inverse power iteration.  The initial shift keeps the shifted
/// matrix strictly diagonally dominant with a positive inverse; once the
/// Rayleigh estimate settles the shift is moved next to it.  Optional
/// weights give the symmetrizing inner product used for the Rayleigh
/// quotient (quadratic accuracy in the residual).
EigenResult principal_eigen(const Tridiag& A, const EigenOptions& opts = {},
                            const std::vector<double>* rq_weights = nullptr);

EigenResult principal_interface(const InterfaceOperator& op, const EigenOptions& opts = {});
EigenResult principal_scalar(const ScalarOperator& op, const EigenOptions& opts = {});

/// Full spectrum of a small operator plus the Perron pair, for cross-checks.
struct DenseSpectrum {
    std::vector<std::complex<double>> eigenvalues; // sorted by real part
    double principal_value = 0.0;
    std::vector<double> principal_vector;
    std::size_t principal_index = 0;
};

/// Dense verification oracle (dimension capped at 400): QR spectrum, then
/// the unique real eigenvalue with a positive eigenvector.
DenseSpectrum dense_oracle(const Tridiag& A);
DenseSpectrum dense_oracle(const InterfaceOperator& op);
DenseSpectrum dense_oracle(const ScalarOperator& op);

/// Symmetrizing diagonal (squared) for the interface operator: cell measures
/// on side 1, (gamma1/gamma2)-scaled cell measures on side 2.
std::vector<double> symmetrizer_weights(const InterfaceOperator& op);

} // namespace eigencurve

#endif
