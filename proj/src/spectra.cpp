#include "circrmt/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "circrmt/fft.hpp"

namespace circrmt {

namespace {

SpectralSample make_sample(EnsembleKind kind, std::size_t n, std::vector<cplx> eig,
                           std::optional<double> theta = std::nullopt) {
  SpectralSample out;
  out.ensemble = EnsembleSpec{kind, n, theta};
  out.eigenvalues = std::move(eig);
  return out;
}

}  // namespace

std::vector<double> SpectralSample::real_parts(double tol) const {
  std::vector<double> out(eigenvalues.size());
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (std::abs(eigenvalues[i].imag()) > tol)
      throw std::domain_error("real_parts: eigenvalue with imaginary part " +
                              std::to_string(eigenvalues[i].imag()));
    out[i] = eigenvalues[i].real();
  }
  return out;
}

SpectralSample eigs_circulant(std::span<const cplx> generator) {
  if (generator.empty()) throw std::invalid_argument("eigs_circulant: empty input");
  return make_sample(EnsembleKind::Circulant, generator.size(), dft(generator, +1));
}

SpectralSample eigs_circulant(std::span<const double> c) {
  std::vector<cplx> g(c.begin(), c.end());
  return eigs_circulant(std::span<const cplx>(g));
}

SpectralSample eigs_skew_circulant(std::span<const double> s) {
  if (s.empty()) throw std::invalid_argument("eigs_skew_circulant: empty input");
  // sum_r s_r e^{i pi (2j+1) r / n} = DFT_+ of s_r e^{i pi r / n}.
  const auto g = tilde_generator(s, std::numbers::pi);
  return make_sample(EnsembleKind::SkewCirculant, s.size(), dft(g, +1));
}

std::vector<double> singular_spectrum_left_skew(std::span<const double> l) {
  std::vector<double> rev(l.rbegin(), l.rend());
  const auto sk = eigs_skew_circulant(rev);
  std::vector<double> out(sk.size());
  std::transform(sk.eigenvalues.begin(), sk.eigenvalues.end(), out.begin(),
                 [](cplx v) { return std::abs(v); });
  return out;
}

SpectralSample eigs_left_skew(std::span<const double> l) {
  std::vector<double> rev(l.rbegin(), l.rend());
  const auto sk = eigs_skew_circulant(rev);
  const std::size_t n = sk.size();
  std::vector<cplx> eig;
  eig.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t partner = n - 1 - j;
    if (partner == j) {
      eig.emplace_back(sk.eigenvalues[j].real(), 0.0);
    } else if (j < partner) {
      const double r = std::abs(sk.eigenvalues[j]);
      eig.emplace_back(r, 0.0);
      eig.emplace_back(-r, 0.0);
    }
  }
  return make_sample(EnsembleKind::LeftSkewCirculant, n, std::move(eig));
}

SpectralSample eigs_reverse_circulant(std::span<const double> c) {
  const auto ci = eigs_circulant(c);
  const std::size_t n = ci.size();
  std::vector<cplx> eig;
  eig.reserve(n);
  eig.emplace_back(ci.eigenvalues[0].real(), 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    const std::size_t partner = n - j;
    if (partner == j) {
      // J maps the alternating eigenvector to its negative when n is even
      eig.emplace_back(-ci.eigenvalues[j].real(), 0.0);
    } else if (j < partner) {
      const double r = std::abs(ci.eigenvalues[j]);
      eig.emplace_back(r, 0.0);
      eig.emplace_back(-r, 0.0);
    }
  }
  return make_sample(EnsembleKind::ReverseCirculant, n, std::move(eig));
}

namespace {

Eigen::MatrixXd checked_real_symmetric(const DenseMatrix& matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
    throw std::invalid_argument("dense_symmetric_eigs: matrix must be square and nonempty");
  const double scale = std::max(matrix.cwiseAbs().maxCoeff(), 1e-300);
  const double tol = 1e-10 * scale;
  if (matrix.imag().cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("dense_symmetric_eigs: matrix is not real");
  Eigen::MatrixXd a = matrix.real();
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("dense_symmetric_eigs: matrix is not symmetric");
  return a;
}

}  // namespace

SpectralSample dense_symmetric_eigs(const DenseMatrix& matrix) {
  const Eigen::MatrixXd a = checked_real_symmetric(matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("dense_symmetric_eigs: no convergence");
  SpectralSample out;
  out.ensemble.n = static_cast<std::size_t>(a.rows());
  out.eigenvalues.reserve(out.ensemble.n);
  for (Eigen::Index i = 0; i < a.rows(); ++i) out.eigenvalues.emplace_back(solver.eigenvalues()(i), 0.0);
  return out;
}

EigenPairs dense_symmetric_eigenpairs(const DenseMatrix& matrix) {
  const Eigen::MatrixXd a = checked_real_symmetric(matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw std::runtime_error("dense_symmetric_eigs: no convergence");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SpectralSample spectrum(const EnsembleSpec& spec, std::span<const double> values, double normalization) {
  spec.validate();
  if (values.size() != spec.input_length())
    throw std::invalid_argument("spectrum: input length does not match the ensemble");
  SpectralSample out;
  switch (spec.kind) {
    case EnsembleKind::Circulant: out = eigs_circulant(values); break;
    case EnsembleKind::TildeCirculant: {
      const auto g = tilde_generator(values, *spec.theta);
      out = eigs_circulant(std::span<const cplx>(g));
      break;
    }
    case EnsembleKind::SkewCirculant: out = eigs_skew_circulant(values); break;
    case EnsembleKind::LeftSkewCirculant: out = eigs_left_skew(values); break;
    case EnsembleKind::ReverseCirculant: out = eigs_reverse_circulant(values); break;
    case EnsembleKind::ToeplitzSym:
    case EnsembleKind::Hankel: out = dense_symmetric_eigs(build(spec, values)); break;
    case EnsembleKind::DiagonalD: {
      const double n = static_cast<double>(spec.n);
      for (std::size_t j = 0; j < spec.n; ++j)
        out.eigenvalues.push_back(std::polar(1.0, *spec.theta * static_cast<double>(j) / n));
      break;
    }
    case EnsembleKind::ExchangeJ: {
      // J has eigenvalue +1 with multiplicity ceil(n/2) and -1 with floor(n/2).
      for (std::size_t j = 0; j < spec.n; ++j) out.eigenvalues.emplace_back(j < (spec.n + 1) / 2 ? 1.0 : -1.0, 0.0);
      break;
    }
    case EnsembleKind::ToeplitzNonsym:
      throw std::invalid_argument("spectrum: the non-symmetric Toeplitz matrix has no supported eigensolver");
  }
  out.ensemble = spec;
  out.normalization = normalization;
  if (normalization != 1.0)
    for (auto& v : out.eigenvalues) v *= normalization;
  return out;
}

}  // namespace circrmt
