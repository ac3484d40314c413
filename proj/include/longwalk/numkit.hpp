#pragma once

// Numerical kernels shared by every protocol: symmetric eigensolvers,
// single-particle unitary evolution, circulant spectra and curve fits.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace longwalk::numkit {

using Complex = std::complex<double>;

/// Eigenpairs of a real symmetric matrix. Eigenvalues ascend; column j of
/// `eigenvectors` belongs to eigenvalue j and the columns are orthonormal.
struct SymmetricEigenDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;

    Eigen::Index size() const { return eigenvalues.size(); }
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double residual_sse = 0.0;
};

/// y ~ amplitude * x^exponent + offset
struct PowerLawOffsetFit {
    double amplitude = 0.0;
    double exponent = 0.0;
    double offset = 0.0;
    double residual_sse = 0.0;
};

inline constexpr Eigen::Index kDenseDimensionCap = 4096;
inline constexpr std::size_t kDirectDftCap = 4096;
inline constexpr double kFitExponentMin = 0.01;
inline constexpr double kFitExponentMax = 4.0;

/// Implicit-shift QL on a symmetric tridiagonal matrix.
SymmetricEigenDecomposition eigh_tridiagonal(std::span<const double> diagonal,
                                             std::span<const double> offdiagonal);

/// Householder reduction to tridiagonal form followed by implicit-shift QL.
SymmetricEigenDecomposition eigh_dense(const Eigen::MatrixXd& matrix);

/// Returns V exp(-i diag(lambda) t) V^T psi0.
Eigen::VectorXcd evolve(const SymmetricEigenDecomposition& decomposition,
                        const Eigen::VectorXcd& initial, double time);
Eigen::VectorXcd evolve(const SymmetricEigenDecomposition& decomposition,
                        const Eigen::VectorXd& initial, double time);

/// Matrix-free Hermitian operator: writes H*x into y (y has the same size as x).
using LinearOperator = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& y)>;

/// Exact evolution inside the Krylov space of `initial`. The Lanczos recursion
/// runs with full reorthogonalisation until the space closes (|beta| below
/// `breakdown_tol` times the operator scale); throws Numerical if it does not
/// close within `max_dimension` vectors.
Eigen::VectorXcd evolve_krylov(const LinearOperator& apply, const Eigen::VectorXd& initial,
                               double time, int max_dimension = 256,
                               double breakdown_tol = 1e-12);

/// Eigenvalues E_k = sum_r row[r] cos(2 pi k r / L) of a real symmetric
/// circulant given its first row. Radix-2 FFT when L is a power of two,
/// direct summation otherwise (L <= kDirectDftCap).
std::vector<double> real_dft_circulant(std::span<const double> first_row);

/// The O(L^2) cosine sum behind real_dft_circulant, without the size cap.
std::vector<double> real_dft_circulant_direct(std::span<const double> first_row);

FitResult linear_fit(std::span<const double> x, std::span<const double> y);

/// Least squares y = a x^b + c. The exponent is profiled: (a, c) come from a
/// linear solve at each b, and b is searched on [kFitExponentMin, kFitExponentMax]
/// by a log-spaced scan followed by golden-section refinement.
PowerLawOffsetFit powerlaw_offset_fit(std::span<const double> x, std::span<const double> y);

}  // namespace longwalk::numkit
