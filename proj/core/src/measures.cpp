#include "qrg/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qrg/error.hpp"

namespace qrg {
namespace {

double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

double clamp_spectral(double v) {
  if (v < -kSpectralSlack)
    throw DomainError("eigenvalue " + std::to_string(v) + " below tolerance");
  return std::max(v, 0.0);
}

// Entropy of a spectrum that is already known to sum to one.
double spectrum_entropy(const Eigen::VectorXd& spectrum) {
  double s = 0.0;
  for (double p : spectrum) s -= xlog2x(clamp_spectral(p));
  return std::max(s, 0.0);
}

Eigen::VectorXd spectrum(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed to converge");
  return solver.eigenvalues();
}

Eigen::Matrix4cd spin_flip() {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  return yy;
}

}  // namespace

// With rho = W W^H, the nonzero eigenvalues of rho Y rho* Y equal those of
// T^H T for T = W^T Y W, so their square roots are the singular values of T.
// Working with T avoids square roots of roundoff-level eigenvalues of the
// non-normal product.
double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw DomainError("concurrence needs a two-qubit density matrix");
  rho.validate(kSpectralSlack);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries());
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed to converge");
  Eigen::MatrixXcd w = solver.eigenvectors();
  for (int i = 0; i < 4; ++i) w.col(i) *= std::sqrt(clamp_spectral(solver.eigenvalues()(i)));
  static const Eigen::Matrix4cd yy = spin_flip();
  const Eigen::MatrixXcd t = w.transpose() * yy * w;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t);
  const auto& s = svd.singularValues();  // decreasing
  return std::clamp(s(0) - s(1) - s(2) - s(3), 0.0, 1.0);
}

double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0) throw DomainError("binary entropy argument outside [0, 1]");
  return -xlog2x(x) - xlog2x(1.0 - x);
}

double eof_from_concurrence(double c) {
  if (!(c >= -kSpectralSlack && c <= 1.0 + kSpectralSlack))
    throw DomainError("concurrence " + std::to_string(c) + " outside [0, 1]");
  c = std::clamp(c, 0.0, 1.0);
  const double root = std::sqrt(std::max(0.0, 1.0 - c * c));
  // (1 - sqrt(1 - c^2)) / 2 without cancellation at small c.
  const double minor = c * c / (2.0 * (1.0 + root));
  const double major = 1.0 - minor;
  return std::clamp(-xlog2x(major) - xlog2x(minor), 0.0, 1.0);
}

double one_vs_rest_concurrence(const ClusterState& state, int node) {
  const std::array<int, 1> keep{node};
  const auto rho = partial_trace(state, keep);
  const double purity = (rho.entries() * rho.entries()).trace().real();
  return std::clamp(std::sqrt(std::max(0.0, 2.0 * (1.0 - purity))), 0.0, 1.0);
}

namespace {

void fill_entanglement(const ClusterState& state, int node, MeasureSet& out) {
  if (node < 0 || node >= state.sites) throw DomainError("node site out of range");
  out.one_vs_rest_eof = eof_from_concurrence(one_vs_rest_concurrence(state, node));
  double pair_sum = 0.0;
  for (int j = 0; j < state.sites; ++j) {
    if (j == node) continue;
    const std::array<int, 2> keep{node, j};
    const double e = eof_from_concurrence(concurrence(partial_trace(state, keep)));
    out.pairwise_eof[j] = e;
    pair_sum += e * e;
  }
  out.tau = out.one_vs_rest_eof * out.one_vs_rest_eof - pair_sum;
}

}  // namespace

double multipartite_tau(const ClusterState& state, int node) {
  MeasureSet out;
  fill_entanglement(state, node, out);
  return out.tau;
}

double von_neumann_entropy(const DensityMatrix& rho) { return spectrum_entropy(spectrum(rho.entries())); }

double qjsd_coherence(const DensityMatrix& rho) {
  const Eigen::MatrixXcd& m = rho.entries();
  const Eigen::MatrixXcd diag = m.diagonal().asDiagonal();
  const Eigen::VectorXd diag_spectrum = m.diagonal().real();
  const double mixed = spectrum_entropy(spectrum(0.5 * (m + diag)));
  const double radicand = mixed - 0.5 * (spectrum_entropy(spectrum(m)) + spectrum_entropy(diag_spectrum));
  if (radicand < -kSpectralSlack)
    throw NumericalError("negative Jensen-Shannon divergence " + std::to_string(radicand));
  return std::clamp(std::sqrt(std::max(0.0, radicand)), 0.0, 1.0);
}

MeasureSet measure_set(const ClusterState& state, int node) {
  MeasureSet out;
  fill_entanglement(state, node, out);
  const std::array<int, 2> pair{0, 1};
  out.coherence = qjsd_coherence(partial_trace(state, pair));
  return out;
}

}  // namespace qrg
