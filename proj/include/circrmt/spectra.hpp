#pragma once

#include <complex>
#include <span>
#include <vector>

#include "circrmt/ensembles.hpp"

namespace circrmt {

struct SpectralSample {
  EnsembleSpec ensemble;
  std::vector<cplx> eigenvalues;
  double normalization = 1.0;  // factor already applied to every eigenvalue

  std::size_t size() const { return eigenvalues.size(); }
  /// Real parts; throws std::domain_error if any |imag| exceeds `tol`.
  std::vector<double> real_parts(double tol = 1e-8) const;
};

/// lambda_j = sum_r c_r exp(2 pi i r j / n), j = 0..n-1, by FFT.
SpectralSample eigs_circulant(std::span<const double> c);
SpectralSample eigs_circulant(std::span<const cplx> generator);

/// lambda_j = beta_j + i gamma_j with beta_j = sum_r s_r cos(pi (2j+1) r / n) and
/// gamma_j = sum_r s_r sin(pi (2j+1) r / n).
SpectralSample eigs_skew_circulant(std::span<const double> s);

/// |lambda_j| for the skew-circulant generated by (l_{n-1}, ..., l_0); these are
/// the singular values of the left skew-circulant matrix.
std::vector<double> singular_spectrum_left_skew(std::span<const double> l);

/// Eigenvalues of the left skew-circulant L: +|lambda_j| and -|lambda_j| over each
/// conjugate pair (j, n-1-j) of the reversed skew-circulant spectrum, and the
/// real lambda itself at the self-paired index when n is odd.
SpectralSample eigs_left_skew(std::span<const double> l);

/// Eigenvalues of the reverse circulant R = C J: lambda_0, -lambda_{n/2} (n even)
/// and +-|lambda_j| over the pairs (j, n-j) of the circulant spectrum.
SpectralSample eigs_reverse_circulant(std::span<const double> c);

/// Real symmetric input (to 1e-10 relative) -> ascending real eigenvalues.
/// Throws std::invalid_argument on non-symmetric input.
SpectralSample dense_symmetric_eigs(const DenseMatrix& matrix);

struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};
EigenPairs dense_symmetric_eigenpairs(const DenseMatrix& matrix);

/// Spectrum of the ensemble built from `values`, scaled by `normalization`.
/// Closed forms are used where available; the symmetric Toeplitz and Hankel
/// cases go through the dense eigensolver. The non-symmetric Toeplitz has no
/// supported spectrum (std::invalid_argument).
SpectralSample spectrum(const EnsembleSpec& spec, std::span<const double> values,
                        double normalization = 1.0);

}  // namespace circrmt
